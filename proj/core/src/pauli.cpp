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

#include "dissipforge/pauli.hpp"

#include <array>
#include <cmath>

namespace dissipforge {
namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

Complex i_power(int k) {
  static constexpr std::array<Complex, 4> kTable{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                 Complex{0, -1}};
  return kTable[static_cast<std::size_t>(mod4(k))];
}

// Phase exponent of the single-qubit product a*b. With X=1, Y=2, Z=3 the
// letter of the product is a ^ b; cyclic pairs XY, YZ, ZX pick up +i.
int product_phase(Pauli a, Pauli b) {
  const int x = static_cast<int>(a);
  const int y = static_cast<int>(b);
  if (x == 0 || y == 0 || x == y) return 0;
  return ((y - x) % 3 + 3) % 3 == 1 ? 1 : 3;
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
}

const ComplexMatrix& pauli_matrix(Pauli p) {
  static const std::array<ComplexMatrix, 4> kMatrices = [] {
    std::array<ComplexMatrix, 4> m;
    m[0] = ComplexMatrix::Identity(2, 2);
    m[1] = ComplexMatrix::Zero(2, 2);
    m[1](0, 1) = 1.0;
    m[1](1, 0) = 1.0;
    m[2] = ComplexMatrix::Zero(2, 2);
    m[2](0, 1) = -kI;
    m[2](1, 0) = kI;
    m[3] = ComplexMatrix::Zero(2, 2);
    m[3](0, 0) = 1.0;
    m[3](1, 1) = -1.0;
    return m;
  }();
  return kMatrices[static_cast<std::size_t>(p)];
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power)
    : letters_(std::move(letters)), phase_(mod4(phase_power)) {}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(std::vector<Pauli>(n, Pauli::I));
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli letter) {
  if (qubit < 1 || qubit > n) {
    throw std::invalid_argument("qubit " + std::to_string(qubit) + " out of range 1.." +
                                std::to_string(n));
  }
  std::vector<Pauli> letters(n, Pauli::I);
  letters[qubit - 1] = letter;
  return PauliString(std::move(letters));
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  // A lone 'i' directly before the letters is a phase, not an identity
  // letter, only when followed by an uppercase letter.
  if (pos + 1 < text.size() && text[pos] == 'i' &&
      std::string_view("IXYZ").find(text[pos + 1]) != std::string_view::npos) {
    phase += 1;
    ++pos;
  }
  if (pos == text.size()) throw std::invalid_argument("empty Pauli word");
  std::vector<Pauli> letters;
  letters.reserve(text.size() - pos);
  for (; pos < text.size(); ++pos) letters.push_back(pauli_from_char(text[pos]));
  return PauliString(std::move(letters), phase);
}

Complex PauliString::phase() const { return i_power(phase_); }

PauliString PauliString::with_phase_power(int k) const { return PauliString(letters_, k); }

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (auto p : letters_) w += (p != Pauli::I) ? 1 : 0;
  return w;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> s;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != Pauli::I) s.push_back(q + 1);
  }
  return s;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw std::invalid_argument("commutes_with: qubit count mismatch");
  std::size_t clashes = 0;
  for (std::size_t q = 0; q < size(); ++q) {
    const auto a = letters_[q];
    const auto b = other.letters_[q];
    if (a != Pauli::I && b != Pauli::I && a != b) ++clashes;
  }
  return clashes % 2 == 0;
}

std::string PauliString::word() const {
  std::string w;
  w.reserve(letters_.size());
  for (auto p : letters_) w.push_back(to_char(p));
  return w;
}

std::string PauliString::to_string() const {
  static constexpr std::array<const char*, 4> kPrefix{"", "+i", "-", "-i"};
  return kPrefix[static_cast<std::size_t>(phase_)] + word();
}

std::string PauliString::indexed() const {
  std::string out;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] == Pauli::I) continue;
    out.push_back(to_char(letters_[q]));
    out += std::to_string(q + 1);
  }
  return out.empty() ? "I" : out;
}

std::pair<std::uint64_t, Complex> PauliString::act_on_basis(std::uint64_t j) const {
  const std::size_t n = letters_.size();
  std::uint64_t k = j;
  int phase = phase_;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    const bool one = (j & bit) != 0;
    switch (letters_[q]) {
      case Pauli::I: break;
      case Pauli::X: k ^= bit; break;
      case Pauli::Y:
        k ^= bit;
        phase += one ? 3 : 1;  // Y|0> = i|1>, Y|1> = -i|0>
        break;
      case Pauli::Z:
        if (one) phase += 2;
        break;
    }
  }
  return {k, i_power(phase)};
}

ComplexMatrix PauliString::dense() const {
  const std::uint64_t dim = std::uint64_t{1} << letters_.size();
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::uint64_t j = 0; j < dim; ++j) {
    const auto [k, c] = act_on_basis(j);
    m(static_cast<Index>(k), static_cast<Index>(j)) = c;
  }
  return m;
}

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("pauli_mul: qubit counts differ (" + std::to_string(p.size()) +
                                " vs " + std::to_string(q.size()) + ")");
  }
  std::vector<Pauli> letters(p.size());
  int phase = p.phase_power() + q.phase_power();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto a = p.letters()[i];
    const auto b = q.letters()[i];
    letters[i] = static_cast<Pauli>(static_cast<int>(a) ^ static_cast<int>(b));
    phase += product_phase(a, b);
  }
  return PauliString(std::move(letters), phase);
}

PauliSum& PauliSum::add(Complex c, const PauliString& p) {
  if (p.size() != n_) throw std::invalid_argument("PauliSum::add: qubit count mismatch");
  terms_[p.word()] += c * p.phase();
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  for (const auto& [w, c] : other.terms_) terms_[w] += c;
  return *this;
}

std::vector<PauliSum::Term> PauliSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.push_back({c, PauliString::parse(w)});
  return out;
}

Complex PauliSum::coefficient(std::string_view word) const {
  const auto it = terms_.find(std::string(word));
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum PauliSum::pruned(double tol) const {
  PauliSum out(n_);
  for (const auto& [w, c] : terms_) {
    if (std::abs(c) >= tol) out.terms_.emplace(w, c);
  }
  return out;
}

ComplexMatrix PauliSum::dense() const {
  const auto dim = static_cast<Index>(std::uint64_t{1} << n_);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [w, c] : terms_) {
    const PauliString p = PauliString::parse(w);
    for (Index j = 0; j < dim; ++j) {
      const auto [k, phase] = p.act_on_basis(static_cast<std::uint64_t>(j));
      m(static_cast<Index>(k), j) += c * phase;
    }
  }
  return m;
}

PauliSum pauli_decompose(const ComplexMatrix& m, std::size_t n) {
  if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
    throw std::invalid_argument("pauli_decompose: matrix must be 2^n x 2^n, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (qubit_count(m.rows()) != n) {
    throw std::invalid_argument("pauli_decompose: dimension " + std::to_string(m.rows()) +
                                " does not match n = " + std::to_string(n));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t words = std::uint64_t{1} << (2 * n);
  PauliSum sum(n);
  std::vector<Pauli> letters(n);
  for (std::uint64_t code = 0; code < words; ++code) {
    // Base-4 digits of `code`, qubit 1 most significant.
    for (std::size_t q = 0; q < n; ++q) {
      letters[q] = static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3U);
    }
    const PauliString p(letters);
    Complex trace{};
    for (std::uint64_t j = 0; j < dim; ++j) {
      const auto [k, c] = p.act_on_basis(j);
      trace += std::conj(c) * m(static_cast<Index>(k), static_cast<Index>(j));
    }
    const Complex coeff = trace / static_cast<double>(dim);
    if (std::abs(coeff) >= 1e-14) sum.add(coeff, p);
  }
  return sum;
}

}  // namespace dissipforge
