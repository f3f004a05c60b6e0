// Copyright 2026 The pensim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pensim/codes.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>

namespace pensim {

namespace {

// Symplectic (x|z) rows over GF(2), reduced incrementally. Used both for
// generator independence and for checking that logicals avoid the
// stabilizer span.
class Gf2Span {
 public:
  // Returns true when the row was independent of the current span.
  bool insert(std::uint64_t x, std::uint64_t z) {
    reduce(x, z);
    if (x == 0 && z == 0) return false;
    rows_.push_back({x, z});
    // Keep rows sorted by leading bit so reduction stays a single pass.
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
      return lead(a) > lead(b);
    });
    return true;
  }

  bool contains(std::uint64_t x, std::uint64_t z) const {
    reduce(x, z);
    return x == 0 && z == 0;
  }

 private:
  struct Row {
    std::uint64_t x, z;
  };

  static int lead(const Row& r) {
    if (r.x != 0) return 64 + std::bit_width(r.x);
    return std::bit_width(r.z);
  }

  void reduce(std::uint64_t& x, std::uint64_t& z) const {
    for (const Row& r : rows_) {
      const Row probe{x, z};
      if (lead(probe) == lead(r)) {
        x ^= r.x;
        z ^= r.z;
      }
    }
  }

  std::vector<Row> rows_;
};

std::pair<std::uint64_t, std::uint64_t> symplectic_bits(const PauliTerm& t) {
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < t.n_qubits(); ++q) {
    if (t.x_bit(q)) x |= 1ull << q;
    if (t.z_bit(q)) z |= 1ull << q;
  }
  return {x, z};
}

void check_hermitian_plus(const PauliTerm& t, const std::string& role) {
  if (std::abs(t.phase().real() - 1.0) > 0.5) {
    throw ValidationError(role + " " + t.to_string() +
                          " must be a phase-free Pauli string");
  }
}

long long binomial(int n, int m) {
  long long r = 1;
  for (int i = 0; i < m; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Visit all weight-w Pauli strings on n qubits.
void enumerate_weight(int n, int w,
                      const std::function<void(const PauliTerm&)>& visit) {
  std::vector<int> sites(static_cast<std::size_t>(w));
  const char letters[3] = {'X', 'Y', 'Z'};
  std::function<void(int, int)> positions = [&](int next, int depth) {
    if (depth == w) {
      std::vector<int> choice(static_cast<std::size_t>(w), 0);
      while (true) {
        PauliTerm t(n);
        for (int i = 0; i < w; ++i) {
          t = multiply(t, PauliTerm::single(
                              n, sites[static_cast<std::size_t>(i)],
                              letters[choice[static_cast<std::size_t>(i)]]));
        }
        visit(t);
        int pos = w - 1;
        while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == 2) {
          choice[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++choice[static_cast<std::size_t>(pos)];
      }
      return;
    }
    for (int s = next; s < n; ++s) {
      sites[static_cast<std::size_t>(depth)] = s;
      positions(s + 1, depth + 1);
    }
  };
  if (w > 0 && w <= n) positions(0, 0);
}

}  // namespace

StabilizerCode make_code(int n, int k, int d,
                         std::vector<PauliTerm> generators,
                         std::vector<PauliTerm> logical_x,
                         std::vector<PauliTerm> logical_z) {
  if (n < 1 || k < 0 || k > n || d < 1) {
    throw ValidationError("invalid code parameters [[" + std::to_string(n) +
                          ", " + std::to_string(k) + ", " + std::to_string(d) +
                          "]]");
  }
  if (static_cast<int>(generators.size()) != n - k) {
    throw ValidationError("expected " + std::to_string(n - k) +
                          " generators, got " +
                          std::to_string(generators.size()));
  }
  if (logical_x.size() != static_cast<std::size_t>(k) ||
      logical_z.size() != static_cast<std::size_t>(k)) {
    throw ValidationError("expected " + std::to_string(k) +
                          " logical X and Z operators");
  }

  auto check_size = [n](const PauliTerm& t, const char* role) {
    if (t.n_qubits() != n) {
      throw ValidationError(std::string(role) + " " + t.to_string() +
                            " acts on " + std::to_string(t.n_qubits()) +
                            " qubits, expected " + std::to_string(n));
    }
  };

  Gf2Span span;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    check_size(generators[i], "generator");
    check_hermitian_plus(generators[i], "generator");
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (!commutes(generators[i], generators[j])) {
        throw ValidationError("generators " + generators[i].to_string() +
                              " and " + generators[j].to_string() +
                              " anticommute");
      }
    }
    const auto [x, z] = symplectic_bits(generators[i]);
    if (!span.insert(x, z)) {
      throw ValidationError("generator " + generators[i].to_string() +
                            " is a product of earlier generators");
    }
  }

  for (int i = 0; i < k; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    check_size(logical_x[ui], "logical X");
    check_size(logical_z[ui], "logical Z");
    check_hermitian_plus(logical_x[ui], "logical X");
    check_hermitian_plus(logical_z[ui], "logical Z");
    for (const PauliTerm& g : generators) {
      if (!commutes(logical_x[ui], g) || !commutes(logical_z[ui], g)) {
        throw ValidationError("logical operator for qubit " +
                              std::to_string(i) +
                              " anticommutes with generator " + g.to_string());
      }
    }
    const auto [xx, xz] = symplectic_bits(logical_x[ui]);
    const auto [zx, zz] = symplectic_bits(logical_z[ui]);
    if (span.contains(xx, xz) || span.contains(zx, zz)) {
      throw ValidationError("logical operator for qubit " + std::to_string(i) +
                            " lies in the stabilizer group");
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const bool want_anticommute = (i == j);
      if (commutes(logical_x[ui], logical_z[uj]) == want_anticommute) {
        throw ValidationError("logical pairing broken between X_" +
                              std::to_string(i) + " and Z_" +
                              std::to_string(j));
      }
      if (i < j && (!commutes(logical_x[ui], logical_x[uj]) ||
                    !commutes(logical_z[ui], logical_z[uj]))) {
        throw ValidationError("logical operators for qubits " +
                              std::to_string(i) + " and " + std::to_string(j) +
                              " fail to commute");
      }
    }
  }

  // Strict detection up to the declared distance: every low-weight error
  // must anticommute with some generator. Purely symplectic, so cheap at
  // any n.
  for (int w = 1; w < d; ++w) {
    enumerate_weight(n, w, [&](const PauliTerm& err) {
      const bool detected =
          std::any_of(generators.begin(), generators.end(),
                      [&](const PauliTerm& g) { return !commutes(err, g); });
      if (!detected) {
        throw ValidationError("declared distance " + std::to_string(d) +
                              " not met: weight-" + std::to_string(w) +
                              " error " + err.to_string() +
                              " commutes with every generator");
      }
    });
  }

  return StabilizerCode{n, k, d, std::move(generators), std::move(logical_x),
                        std::move(logical_z)};
}

StabilizerCode build_code(std::string_view preset) {
  if (preset == "422") {
    return make_code(
        4, 2, 2,
        {PauliTerm::from_string("XXXX"), PauliTerm::from_string("ZZZZ")},
        {PauliTerm::from_string("XXII"), PauliTerm::from_string("XIXI")},
        {PauliTerm::from_string("ZIZI"), PauliTerm::from_string("ZZII")});
  }
  throw ValidationError("unknown code preset \"" + std::string(preset) + "\"");
}

StabilizerCode pad_code(const StabilizerCode& code, int extra_qubits) {
  if (extra_qubits < 0) throw ValidationError("extra_qubits must be >= 0");
  if (extra_qubits == 0) return code;
  const int n = code.n + extra_qubits;
  const std::string pad(static_cast<std::size_t>(extra_qubits), 'I');
  auto extend = [&](const PauliTerm& t) {
    return PauliTerm::from_string(t.canonical().to_string() + pad);
  };
  std::vector<PauliTerm> gens, lx, lz;
  for (const auto& g : code.generators) gens.push_back(extend(g));
  for (int j = 0; j < extra_qubits; ++j) {
    gens.push_back(PauliTerm::single(n, code.n + j, 'Z'));
  }
  for (const auto& l : code.logical_x) lx.push_back(extend(l));
  for (const auto& l : code.logical_z) lz.push_back(extend(l));
  return make_code(n, code.k, 1, std::move(gens), std::move(lx),
                   std::move(lz));
}

PauliSum penalty_hamiltonian(const StabilizerCode& code) {
  PauliSum h(code.n);
  for (const PauliTerm& g : code.generators) h.add(-1.0, g);
  return h;
}

PenaltySpectrum penalty_spectrum(const StabilizerCode& code) {
  PenaltySpectrum s;
  const int r = code.n - code.k;
  for (int m = 0; m <= r; ++m) {
    s.levels.push_back(
        {m, static_cast<double>(-r + 2 * m),
         binomial(r, m) * (1ll << code.k)});
  }
  return s;
}

double penalty_gap(const StabilizerCode&) { return 2.0; }

Eigen::MatrixXcd codespace_projector(const StabilizerCode& code,
                                     int max_qubits) {
  if (code.n > max_qubits) {
    throw ResourceError("dense projector for " + std::to_string(code.n) +
                        " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  const std::int64_t dim = std::int64_t{1} << code.n;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
  for (const PauliTerm& g : code.generators) {
    p = 0.5 * (p + to_dense(g, max_qubits) * p);
  }
  return p;
}

std::vector<DetectionViolation> verify_detection(const StabilizerCode& code,
                                                 int max_weight,
                                                 int max_qubits) {
  const Eigen::MatrixXcd p = codespace_projector(code, max_qubits);
  std::vector<DetectionViolation> out;
  for (int w = 1; w <= max_weight; ++w) {
    enumerate_weight(code.n, w, [&](const PauliTerm& err) {
      const Eigen::MatrixXcd compressed = p * to_dense(err, max_qubits) * p;
      // P A P is Hermitian here, so the operator norm is the spectral radius.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(compressed,
                                                         Eigen::EigenvaluesOnly);
      const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
      if (norm > 1e-12) out.push_back({err, norm});
    });
  }
  return out;
}

}  // namespace pensim
