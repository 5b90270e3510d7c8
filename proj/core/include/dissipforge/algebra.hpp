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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dissipforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when a numerical contract is violated at run time (unstable step
/// size, overflowing trajectory, failed self-check). Precondition violations
/// on arguments throw std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kronecker product. The left factor is the most significant index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);

/// Matrix exponential of a square matrix (scaling and squaring with Padé
/// approximants). Throws std::invalid_argument for non-square input.
ComplexMatrix matexp(const ComplexMatrix& a);

/// Orthonormal basis of the numerical null space of a square matrix.
///
/// A right singular vector belongs to the basis when its singular value is at
/// most `tol` times the largest singular value. A zero matrix therefore has a
/// full basis. Throws std::invalid_argument if `tol <= 0` or `a` is not square.
std::vector<ComplexVector> null_space(const ComplexMatrix& a, double tol = 1e-9);

/// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index rows);

ComplexMatrix identity(Index dim);

/// Largest absolute entry of m - m^dagger.
double hermiticity_error(const ComplexMatrix& m);

/// Largest absolute entry of u^dagger u - 1.
double unitarity_error(const ComplexMatrix& u);

/// Number of qubits n with 2^n == dim. Throws std::invalid_argument otherwise.
std::size_t qubit_count(Index dim);

bool is_power_of_two(Index dim);

}  // namespace dissipforge
