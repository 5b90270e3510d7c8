// Copyright 2026 The DissipForge Authors
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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dissipforge/algebra.hpp"

namespace dissipforge {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);
const ComplexMatrix& pauli_matrix(Pauli p);

/// A tensor product of single-qubit Paulis with a phase in {+1, +i, -1, -i}.
///
/// Qubits are labelled 1..n; qubit 1 is the leftmost (most significant)
/// tensor factor. The phase is stored as the exponent k of i^k.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters, int phase_power = 0);

  static PauliString identity(std::size_t n);
  /// Weight-1 string with `letter` on `qubit` (1-based).
  static PauliString single(std::size_t n, std::size_t qubit, Pauli letter);
  /// Parses "XIZ", "-XZ", "+iYY", "-iZ". An optional sign/phase prefix is
  /// followed by exactly n letters from {I, X, Y, Z}.
  static PauliString parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  const std::vector<Pauli>& letters() const { return letters_; }
  Pauli letter(std::size_t qubit) const { return letters_.at(qubit - 1); }

  int phase_power() const { return phase_; }
  Complex phase() const;
  PauliString with_phase_power(int k) const;

  std::size_t weight() const;
  /// 1-based qubit labels carrying a non-identity letter, ascending.
  std::vector<std::size_t> support() const;
  bool commutes_with(const PauliString& other) const;
  /// Phase +-1 with letters only from {I, X, Y, Z}.
  bool is_hermitian() const { return phase_ % 2 == 0; }

  /// Letters only, e.g. "XIZ".
  std::string word() const;
  /// Phase prefix plus letters, e.g. "-iXIZ"; phase +1 prints the bare word.
  std::string to_string() const;
  /// Indexed form without identity letters, e.g. "Z1X2"; "I" for the identity.
  std::string indexed() const;

  ComplexMatrix dense() const;

  /// Image of computational basis state |j>: returns (k, c) with P|j> = c|k>.
  std::pair<std::uint64_t, Complex> act_on_basis(std::uint64_t j) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

/// Exact product P*Q including the accumulated phase. Throws
/// std::invalid_argument on mismatched qubit counts.
PauliString pauli_mul(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) { return pauli_mul(p, q); }

/// Linear combination of phase-free Pauli words, merged by word.
class PauliSum {
 public:
  struct Term {
    Complex coefficient;
    PauliString word;
  };

  explicit PauliSum(std::size_t n) : n_(n) {}

  /// Adds c * p, folding the phase of p into the coefficient.
  PauliSum& add(Complex c, const PauliString& p);
  PauliSum& operator+=(const PauliSum& other);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  /// Terms in lexicographic word order.
  std::vector<Term> terms() const;
  /// Coefficient of a word (zero when absent).
  Complex coefficient(std::string_view word) const;

  /// Drops terms with |c| < tol.
  PauliSum pruned(double tol = 1e-14) const;
  ComplexMatrix dense() const;

 private:
  std::size_t n_;
  std::map<std::string, Complex> terms_;
};

/// Expands a 2^n x 2^n matrix in the Pauli basis, c_a = Tr(W_a^dagger M) / 2^n.
/// Terms with |c| < 1e-14 are dropped.
PauliSum pauli_decompose(const ComplexMatrix& m, std::size_t n);

}  // namespace dissipforge
