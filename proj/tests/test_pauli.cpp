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

#include <catch_amalgamated.hpp>

#include "dissipforge/pauli.hpp"
#include "oracles.hpp"

using namespace dissipforge;

namespace {

const char* const kLetters = "IXYZ";

std::string word_from_index(std::size_t idx, std::size_t n) {
  std::string w(n, 'I');
  for (std::size_t q = 0; q < n; ++q) {
    w[n - 1 - q] = kLetters[idx % 4];
    idx /= 4;
  }
  return w;
}

}  // namespace

TEST_CASE("parse and print", "[pauli]") {
  const auto p = PauliString::parse("XIZ");
  CHECK(p.size() == 3);
  CHECK(p.letter(1) == Pauli::X);
  CHECK(p.letter(3) == Pauli::Z);
  CHECK(p.weight() == 2);
  CHECK(p.support() == std::vector<std::size_t>{1, 3});
  CHECK(p.word() == "XIZ");
  CHECK(p.indexed() == "X1Z3");
  CHECK(PauliString::parse("-iYY").phase_power() == 3);
  CHECK(PauliString::parse("+iZ").phase_power() == 1);
  CHECK(PauliString::parse("-XZ").to_string() == "-XZ");
  CHECK(PauliString::identity(2).indexed() == "I");
  CHECK(PauliString::single(3, 2, Pauli::Y).word() == "IYI");
  CHECK_THROWS_AS(PauliString::parse("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("-"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::single(2, 3, Pauli::X), std::invalid_argument);
}

TEST_CASE("dense form matches Kronecker products", "[pauli]") {
  for (std::size_t idx = 0; idx < 64; ++idx) {
    const std::string w = word_from_index(idx, 3);
    CHECK((PauliString::parse(w).dense() - oracle::word(w)).norm() == 0.0);
  }
  CHECK((PauliString::parse("-iXY").dense() - (-oracle::kI) * oracle::word("XY")).norm() == 0.0);
}

TEST_CASE("products reproduce dense multiplication", "[pauli]") {
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) {
      const auto p = PauliString::parse(word_from_index(a, 2));
      const auto q = PauliString::parse(word_from_index(b, 2));
      const ComplexMatrix expect = p.dense() * q.dense();
      INFO(p.word() << " * " << q.word());
      CHECK(((p * q).dense() - expect).norm() < 1e-15);
      const bool commute = (p.dense() * q.dense() - q.dense() * p.dense()).norm() < 1e-12;
      CHECK(p.commutes_with(q) == commute);
    }
  }
  // cyclic single-qubit table
  CHECK(pauli_mul(PauliString::parse("X"), PauliString::parse("Y")) == PauliString::parse("iZ"));
  CHECK(pauli_mul(PauliString::parse("Z"), PauliString::parse("Y")) == PauliString::parse("-iX"));
  CHECK_THROWS_AS(pauli_mul(PauliString::parse("X"), PauliString::parse("XX")), std::invalid_argument);
}

TEST_CASE("basis action matches dense columns", "[pauli]") {
  const auto p = PauliString::parse("iYXZ");
  const ComplexMatrix d = p.dense();
  for (std::uint64_t j = 0; j < 8; ++j) {
    const auto [k, c] = p.act_on_basis(j);
    CHECK(std::abs(d(static_cast<Index>(k), static_cast<Index>(j)) - c) < 1e-15);
    CHECK(std::abs(c) == Catch::Approx(1.0));
  }
}

TEST_CASE("hermiticity follows the phase", "[pauli]") {
  CHECK(PauliString::parse("XY").is_hermitian());
  CHECK(PauliString::parse("-XY").is_hermitian());
  CHECK_FALSE(PauliString::parse("iXY").is_hermitian());
}

TEST_CASE("PauliSum folds phases and prunes", "[pauli]") {
  PauliSum s(2);
  s.add(2.0, PauliString::parse("iXZ")).add(1.0, PauliString::parse("ZZ")).add(-1.0, PauliString::parse("ZZ"));
  CHECK(s.coefficient("XZ") == Complex(0.0, 2.0));
  CHECK(s.pruned().size() == 1);
  CHECK((s.dense() - 2.0 * oracle::kI * oracle::word("XZ")).norm() < 1e-15);
  PauliSum t(2);
  t.add(1.0, PauliString::parse("XZ"));
  s += t;
  CHECK(s.coefficient("XZ") == Complex(1.0, 2.0));
  CHECK_THROWS_AS(s += PauliSum(3), std::invalid_argument);
}

TEST_CASE("decomposition round-trips random matrices", "[pauli]") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {1, 2, 3}) {
    const ComplexMatrix m = oracle::random_matrix(Index{1} << n, rng);
    const PauliSum s = pauli_decompose(m, n);
    CHECK((s.dense() - m).norm() < 1e-12);
  }
  const PauliSum xx = pauli_decompose(oracle::word("XX") + 0.5 * oracle::word("ZI"), 2);
  CHECK(xx.size() == 2);
  CHECK(std::abs(xx.coefficient("ZI") - 0.5) < 1e-15);
  CHECK_THROWS_AS(pauli_decompose(ComplexMatrix::Zero(3, 3), 1), std::invalid_argument);
  CHECK_THROWS_AS(pauli_decompose(ComplexMatrix::Zero(4, 4), 3), std::invalid_argument);
}
