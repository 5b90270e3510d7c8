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

#include <numbers>

#include <catch_amalgamated.hpp>

#include "dissipforge/algebra.hpp"
#include "oracles.hpp"

using namespace dissipforge;

TEST_CASE("kron matches the index formula", "[algebra]") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = oracle::random_matrix(2, rng);
  const ComplexMatrix b = oracle::random_matrix(3, rng);
  CHECK((kron(a, b) - oracle::kron(a, b)).norm() == 0.0);

  const ComplexMatrix c = oracle::random_matrix(2, rng);
  const ComplexMatrix abc = kron({a, b, c});
  CHECK(abc.rows() == 12);
  CHECK((abc - oracle::kron(oracle::kron(a, b), c)).norm() < 1e-14);

  const std::vector<ComplexMatrix> factors{a, c};
  CHECK((kron(std::span<const ComplexMatrix>(factors)) - oracle::kron(a, c)).norm() < 1e-14);
}

TEST_CASE("kron of Pauli factors orders qubit 1 first", "[algebra]") {
  const ComplexMatrix zx = kron(oracle::pauli('Z'), oracle::pauli('X'));
  // Z on the most significant bit: |10> -> -|11>.
  CHECK(zx(3, 2) == Complex(-1.0, 0.0));
  CHECK(zx(1, 0) == Complex(1.0, 0.0));
}

TEST_CASE("matexp agrees with a Taylor oracle", "[algebra]") {
  std::mt19937_64 rng(5);
  for (Index n : {1, 2, 4, 8}) {
    const ComplexMatrix a = oracle::random_matrix(n, rng) * 0.7;
    INFO("n = " << n);
    CHECK((matexp(a) - oracle::taylor_exp(a)).norm() < 1e-10 * oracle::taylor_exp(a).norm());
  }
  SECTION("anti-Hermitian input gives a unitary") {
    const ComplexMatrix h = oracle::random_hermitian(6, rng);
    CHECK(unitarity_error(matexp(kI * h)) < 1e-12);
  }
  SECTION("zero and diagonal inputs") {
    CHECK((matexp(ComplexMatrix::Zero(3, 3)) - identity(3)).norm() == 0.0);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = Complex(0.0, std::numbers::pi);
    const ComplexMatrix e = matexp(d);
    CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-13);
    CHECK(std::abs(e(1, 1) + 1.0) < 1e-13);
  }
  CHECK_THROWS_AS(matexp(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("null_space finds exact kernels", "[algebra]") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const auto ns = null_space(a);
  REQUIRE(ns.size() == 1);
  CHECK(std::abs(std::abs(ns[0](2)) - 1.0) < 1e-12);

  std::mt19937_64 rng(3);
  const ComplexMatrix r = oracle::random_matrix(5, rng);
  CHECK(null_space(r).empty());

  // rank-2 product has a 3-dimensional kernel
  const ComplexMatrix low = oracle::random_matrix(5, rng).leftCols(2) * oracle::random_matrix(5, rng).topRows(2);
  const auto k = null_space(low);
  REQUIRE(k.size() == 3);
  for (const auto& v : k) {
    CHECK((low * v).norm() < 1e-10);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  CHECK(std::abs(k[0].dot(k[1])) < 1e-12);

  CHECK_THROWS_AS(null_space(a, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(null_space(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("vec stacks columns", "[algebra]") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vec(m);
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK((unvec(v, 2) - m).norm() == 0.0);

  std::mt19937_64 rng(9);
  const ComplexMatrix a = oracle::random_matrix(3, rng);
  const ComplexMatrix x = oracle::random_matrix(3, rng);
  const ComplexMatrix b = oracle::random_matrix(3, rng);
  // vec(AXB) = (B^T (x) A) vec(X)
  CHECK((vec(a * x * b) - oracle::kron(b.transpose(), a) * vec(x)).norm() < 1e-12);
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(5), 2), std::invalid_argument);
}

TEST_CASE("small helpers", "[algebra]") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(16));
  CHECK_FALSE(is_power_of_two(12));
  CHECK_FALSE(is_power_of_two(0));
  CHECK(qubit_count(8) == 3);
  CHECK_THROWS_AS(qubit_count(6), std::invalid_argument);
  CHECK(hermiticity_error(oracle::pauli('Y')) == 0.0);
  CHECK(unitarity_error(oracle::pauli('Y')) < 1e-15);
  CHECK(hermiticity_error(kI * identity(2)) > 1.0);
}
