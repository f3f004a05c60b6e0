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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pensim/errors.hpp"

namespace pensim {

/// Dense conversions are capped at this many qubits (2^8 x 2^8 matrices).
inline constexpr int kMaxDenseQubits = 8;

/// One n-qubit Pauli string with an overall phase in {1, -1, i, -i}.
///
/// Internally the operator is i^e * prod_q X_q^{x_q} Z_q^{z_q} with the X
/// factor applied after Z on each site. The canonical Hermitian string (the
/// one spelled with letters I/X/Y/Z and phase +1) has e equal to the number
/// of Y sites, since Y = i X Z.
class PauliTerm {
 public:
  PauliTerm() = default;

  /// Identity on n qubits.
  explicit PauliTerm(int n_qubits);

  /// Parse a letter string such as "XXII". Phase is +1.
  static PauliTerm from_string(std::string_view s);

  /// Single-site Pauli ('X', 'Y' or 'Z') embedded in n qubits.
  static PauliTerm single(int n_qubits, int qubit, char letter);

  int n_qubits() const { return n_; }
  bool x_bit(int qubit) const { return (x_ >> bit(qubit)) & 1u; }
  bool z_bit(int qubit) const { return (z_ >> bit(qubit)) & 1u; }

  /// Number of non-identity sites.
  int weight() const;

  /// Overall phase relative to the canonical Hermitian letter string.
  std::complex<double> phase() const;

  /// True when phase() is +1 or -1.
  bool is_hermitian() const;

  /// True for the identity string with phase +1.
  bool is_identity() const { return x_ == 0 && z_ == 0 && e_ == 0; }

  /// Same letter string, ignoring phase.
  bool same_string(const PauliTerm& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  /// Canonical Hermitian representative (phase forced to +1).
  PauliTerm canonical() const;

  /// Phase prefix ("", "-", "i", "-i") followed by the letter string.
  std::string to_string() const;

  friend bool operator==(const PauliTerm& a, const PauliTerm& b) = default;

  friend PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);
  friend bool commutes(const PauliTerm& a, const PauliTerm& b);
  friend Eigen::MatrixXcd to_dense(const PauliTerm& t, int max_qubits);
  friend struct PauliKeyLess;

 private:
  // Qubit q lives at mask bit (n-1-q), so mask bits line up with basis-index
  // bits in dense form (qubit 0 is the leftmost tensor factor / MSB).
  int bit(int qubit) const;
  char letter_at(int qubit) const;

  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int e_ = 0;  // phase exponent: the operator carries i^e
};

/// Strict ordering on the letter string (phase ignored); used for
/// normalization of sums.
struct PauliKeyLess {
  bool operator()(const PauliTerm& a, const PauliTerm& b) const {
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.z_ < b.z_;
  }
};

/// Product a*b with full phase tracking.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

/// True when a and b commute (symplectic criterion).
bool commutes(const PauliTerm& a, const PauliTerm& b);

/// Dense 2^n x 2^n matrix. Throws ResourceError above max_qubits.
Eigen::MatrixXcd to_dense(const PauliTerm& t, int max_qubits = kMaxDenseQubits);

/// Real linear combination of Hermitian Pauli strings.
///
/// Terms are kept canonical (phase +1) and unique: adding a term folds its
/// +/-1 phase into the coefficient and merges with an existing entry for the
/// same letter string. Terms with imaginary phase are rejected, so every sum
/// represents a Hermitian operator.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  void add(double coefficient, const PauliTerm& term);

  int n_qubits() const { return n_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::pair<double, PauliTerm>>& terms() const {
    return terms_;
  }

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<std::pair<double, PauliTerm>> terms_;  // sorted by letter string
};

Eigen::MatrixXcd to_dense(const PauliSum& s, int max_qubits = kMaxDenseQubits);

/// Parse "coef * STRING" (e.g. "-0.5 * ZIZI"). A bare string means coef 1.
std::pair<double, PauliTerm> parse_weighted_pauli(std::string_view entry);

/// Parse a list of "coef * STRING" entries into a sum.
PauliSum parse_pauli_sum(const std::vector<std::string>& entries);

}  // namespace pensim
