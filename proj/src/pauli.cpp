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

#include "pensim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pensim {

namespace {

constexpr int kMaxQubits = 64;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw ValidationError("qubit count must be in [1, 64], got " +
                          std::to_string(n));
  }
}

std::complex<double> i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

PauliTerm::PauliTerm(int n_qubits) : n_(n_qubits) { check_qubit_count(n_); }

int PauliTerm::bit(int qubit) const {
  if (qubit < 0 || qubit >= n_) {
    throw DimensionError("qubit index " + std::to_string(qubit) +
                         " out of range for " + std::to_string(n_) +
                         " qubits");
  }
  return n_ - 1 - qubit;
}

PauliTerm PauliTerm::from_string(std::string_view s) {
  check_qubit_count(static_cast<int>(s.size()));
  PauliTerm t(static_cast<int>(s.size()));
  for (int q = 0; q < t.n_; ++q) {
    const std::uint64_t mask = 1ull << t.bit(q);
    switch (s[static_cast<std::size_t>(q)]) {
      case 'I':
        break;
      case 'X':
        t.x_ |= mask;
        break;
      case 'Y':
        t.x_ |= mask;
        t.z_ |= mask;
        t.e_ += 1;  // Y = i X Z
        break;
      case 'Z':
        t.z_ |= mask;
        break;
      default:
        throw ValidationError("invalid Pauli letter '" +
                              std::string(1, s[static_cast<std::size_t>(q)]) +
                              "' in \"" + std::string(s) + "\"");
    }
  }
  t.e_ %= 4;
  return t;
}

PauliTerm PauliTerm::single(int n_qubits, int qubit, char letter) {
  PauliTerm t(n_qubits);
  const std::uint64_t mask = 1ull << t.bit(qubit);
  switch (letter) {
    case 'X':
      t.x_ = mask;
      break;
    case 'Y':
      t.x_ = mask;
      t.z_ = mask;
      t.e_ = 1;
      break;
    case 'Z':
      t.z_ = mask;
      break;
    case 'I':
      break;
    default:
      throw ValidationError("invalid Pauli letter '" + std::string(1, letter) +
                            "'");
  }
  return t;
}

int PauliTerm::weight() const {
  return std::popcount(x_ | z_);
}

std::complex<double> PauliTerm::phase() const {
  // e relative to the canonical string, which carries i^{#Y}.
  return i_power(e_ - std::popcount(x_ & z_));
}

bool PauliTerm::is_hermitian() const {
  return ((e_ - std::popcount(x_ & z_)) % 2 + 2) % 2 == 0;
}

PauliTerm PauliTerm::canonical() const {
  PauliTerm t = *this;
  t.e_ = std::popcount(x_ & z_) % 4;
  return t;
}

char PauliTerm::letter_at(int qubit) const {
  const bool x = x_bit(qubit);
  const bool z = z_bit(qubit);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliTerm::to_string() const {
  std::string out;
  const std::complex<double> p = phase();
  if (p.real() < -0.5) {
    out += "-";
  } else if (p.imag() > 0.5) {
    out += "i";
  } else if (p.imag() < -0.5) {
    out += "-i";
  }
  for (int q = 0; q < n_; ++q) out += letter_at(q);
  return out;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_ != b.n_) {
    throw DimensionError("cannot multiply Pauli terms on " +
                         std::to_string(a.n_) + " and " + std::to_string(b.n_) +
                         " qubits");
  }
  PauliTerm r(a.n_);
  r.x_ = a.x_ ^ b.x_;
  r.z_ = a.z_ ^ b.z_;
  // Moving b's X factors past a's Z factors picks up (-1) per overlap.
  r.e_ = (a.e_ + b.e_ + 2 * std::popcount(a.z_ & b.x_)) % 4;
  return r;
}

bool commutes(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_ != b.n_) {
    throw DimensionError("cannot compare Pauli terms on " +
                         std::to_string(a.n_) + " and " + std::to_string(b.n_) +
                         " qubits");
  }
  return (std::popcount(a.x_ & b.z_) + std::popcount(a.z_ & b.x_)) % 2 == 0;
}

Eigen::MatrixXcd to_dense(const PauliTerm& t, int max_qubits) {
  if (t.n_ < 1) throw ValidationError("cannot densify a default-constructed PauliTerm");
  if (t.n_ > max_qubits) {
    throw ResourceError("dense conversion of " + std::to_string(t.n_) +
                        " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  const std::int64_t dim = std::int64_t{1} << t.n_;
  const std::complex<double> scale = i_power(t.e_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const std::int64_t row =
        col ^ static_cast<std::int64_t>(t.x_);
    const double sign =
        (std::popcount(static_cast<std::uint64_t>(col) & t.z_) % 2 == 0) ? 1.0
                                                                         : -1.0;
    m(row, col) = scale * sign;
  }
  return m;
}

void PauliSum::add(double coefficient, const PauliTerm& term) {
  if (n_ == 0) n_ = term.n_qubits();
  if (term.n_qubits() != n_) {
    throw DimensionError("sum is on " + std::to_string(n_) +
                         " qubits, term on " +
                         std::to_string(term.n_qubits()));
  }
  const std::complex<double> p = term.phase();
  if (std::abs(p.imag()) > 0.5) {
    throw ValidationError("term " + term.to_string() +
                          " has imaginary phase; Hermitian sums take only "
                          "+/-1 phases");
  }
  const double folded = coefficient * p.real();
  const PauliTerm key = term.canonical();
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), key,
      [](const auto& entry, const PauliTerm& k) {
        return PauliKeyLess{}(entry.second, k);
      });
  if (it != terms_.end() && it->second.same_string(key)) {
    it->first += folded;
    if (it->first == 0.0) terms_.erase(it);
  } else if (folded != 0.0) {
    terms_.insert(it, {folded, key});
  }
}

std::string PauliSum::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [c, t] : terms_) {
    if (!first) out << " + ";
    out << c << " * " << t.to_string();
    first = false;
  }
  return first ? "0" : out.str();
}

Eigen::MatrixXcd to_dense(const PauliSum& s, int max_qubits) {
  if (s.n_qubits() < 1) {
    throw ValidationError("cannot densify an empty PauliSum of unknown size");
  }
  if (s.n_qubits() > max_qubits) {
    throw ResourceError("dense conversion of " + std::to_string(s.n_qubits()) +
                        " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  const std::int64_t dim = std::int64_t{1} << s.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [c, t] : s.terms()) m += c * to_dense(t, max_qubits);
  return m;
}

std::pair<double, PauliTerm> parse_weighted_pauli(std::string_view entry) {
  const auto star = entry.find('*');
  double coeff = 1.0;
  std::string_view letters = entry;
  if (star != std::string_view::npos) {
    std::string_view num = entry.substr(0, star);
    letters = entry.substr(star + 1);
    while (!num.empty() && std::isspace(static_cast<unsigned char>(num.front())))
      num.remove_prefix(1);
    while (!num.empty() && std::isspace(static_cast<unsigned char>(num.back())))
      num.remove_suffix(1);
    const auto res =
        std::from_chars(num.data(), num.data() + num.size(), coeff);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
      throw ValidationError("invalid coefficient in Pauli entry \"" +
                            std::string(entry) + "\"");
    }
  }
  while (!letters.empty() &&
         std::isspace(static_cast<unsigned char>(letters.front())))
    letters.remove_prefix(1);
  while (!letters.empty() &&
         std::isspace(static_cast<unsigned char>(letters.back())))
    letters.remove_suffix(1);
  return {coeff, PauliTerm::from_string(letters)};
}

PauliSum parse_pauli_sum(const std::vector<std::string>& entries) {
  PauliSum s;
  for (const auto& e : entries) {
    auto [c, t] = parse_weighted_pauli(e);
    s.add(c, t);
  }
  return s;
}

}  // namespace pensim
