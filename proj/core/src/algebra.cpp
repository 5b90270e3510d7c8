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

#include "dissipforge/algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace dissipforge {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index br = b.rows();
  const Index bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  return kron(std::span<const ComplexMatrix>(factors.begin(), factors.size()));
}

ComplexMatrix matexp(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matexp: matrix must be square, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (a.rows() == 0) return a;
  return a.exp();
}

std::vector<ComplexVector> null_space(const ComplexMatrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("null_space: tol must be positive");
  if (a.rows() != a.cols()) throw std::invalid_argument("null_space: matrix must be square");
  const Index n = a.cols();
  std::vector<ComplexVector> basis;
  if (n == 0) return basis;

  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = tol * sigma(0);
  const ComplexMatrix& v = svd.matrixV();
  // Singular values come sorted in decreasing order.
  for (Index k = 0; k < n; ++k) {
    if (sigma(k) <= cutoff) basis.emplace_back(v.col(k));
  }
  return basis;
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

double hermiticity_error(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - identity(u.cols())).cwiseAbs().maxCoeff();
}

bool is_power_of_two(Index dim) { return dim > 0 && (dim & (dim - 1)) == 0; }

std::size_t qubit_count(Index dim) {
  if (!is_power_of_two(dim)) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  std::size_t n = 0;
  while ((Index{1} << n) < dim) ++n;
  return n;
}

}  // namespace dissipforge
