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

#include "dissipforge/dissipators.hpp"

#include <algorithm>
#include <cmath>

namespace dissipforge {

DissipatorSet& DissipatorSet::add(double gamma, ComplexMatrix op) {
  if (!(gamma > 0.0)) throw std::invalid_argument("DissipatorSet: rates must be positive");
  if (op.rows() != op.cols() || op.rows() == 0) {
    throw std::invalid_argument("DissipatorSet: operator must be square and non-empty");
  }
  if (!ops_.empty() && op.rows() != dim()) {
    throw std::invalid_argument("DissipatorSet: operator dimension " + std::to_string(op.rows()) +
                                " differs from " + std::to_string(dim()));
  }
  ops_.push_back({gamma, std::move(op)});
  return *this;
}

double DissipatorSet::max_rate() const {
  double r = 0.0;
  for (const auto& d : ops_) r = std::max(r, d.gamma);
  return r;
}

DissipatorSet DissipatorSet::with_rates_scaled(double s) const {
  DissipatorSet out;
  for (const auto& d : ops_) out.add(d.gamma * s, d.op);
  return out;
}

DissipatorSet DissipatorSet::transformed(const ComplexMatrix& v) const {
  DissipatorSet out;
  for (const auto& d : ops_) out.add(d.gamma, v * d.op * v.adjoint());
  return out;
}

void SynthesisSpec::validate() const {
  const Index n = basis.rows();
  if (n < 2 || basis.cols() != n) {
    throw std::invalid_argument("SynthesisSpec: basis must be a square N x N frame with N >= 2");
  }
  if (k < 1 || k >= n) {
    throw std::invalid_argument("SynthesisSpec: need 1 <= k < N, got k = " + std::to_string(k) +
                                ", N = " + std::to_string(n));
  }
  if (unitarity_error(basis) > 1e-12) {
    throw std::invalid_argument("SynthesisSpec: basis is not orthonormal");
  }
  if (coefficients.rows() != n - k || coefficients.cols() != k) {
    throw std::invalid_argument("SynthesisSpec: coefficients must be (N-k) x k");
  }
}

ComplexMatrix complete_basis(const PureState& target) {
  const Index n = target.dim();
  const auto& t = target.amplitudes();
  Index drop = 0;
  for (Index i = 1; i < n; ++i) {
    if (std::abs(t(i)) > std::abs(t(drop)) + 1e-12) drop = i;
  }
  ComplexMatrix q(n, n);
  q.col(0) = t;
  Index col = 1;
  for (Index i = 0; i < n; ++i) {
    if (i == drop) continue;
    ComplexVector v = ComplexVector::Unit(n, i);
    // Two passes of modified Gram-Schmidt keep the frame orthonormal to 1e-15.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index c = 0; c < col; ++c) v -= q.col(c).dot(v) * q.col(c);
    }
    q.col(col++) = v.normalized();
  }
  return q;
}

SynthesisSpec SynthesisSpec::for_target(const PureState& target) {
  SynthesisSpec spec;
  spec.basis = complete_basis(target);
  spec.k = 1;
  spec.coefficients = ComplexMatrix::Ones(target.dim() - 1, 1);
  return spec;
}

DissipatorSet synth_subspace(const SynthesisSpec& spec, double gamma) {
  spec.validate();
  const Index n = spec.dim();
  DissipatorSet out;
  for (Index j = spec.k; j < n; ++j) {
    const auto row = spec.coefficients.row(j - spec.k);
    if (row.cwiseAbs().maxCoeff() == 0.0) {
      throw std::invalid_argument("synth_subspace: coefficient row for level " + std::to_string(j + 1) +
                                  " is all zero, that level would never decay");
    }
    ComplexVector phi = ComplexVector::Zero(n);
    for (Index p = 0; p < spec.k; ++p) phi += row(p) * spec.basis.col(p);
    out.add(gamma, phi * spec.basis.col(j).adjoint());
  }
  return out;
}

DissipatorSet synth_single(const SynthesisSpec& spec, const ComplexMatrix& frame, double gamma) {
  spec.validate();
  if (spec.k != 1) throw std::invalid_argument("synth_single: requires k = 1");
  const Index n = spec.dim();
  if (frame.rows() != n || frame.cols() != n || unitarity_error(frame) > 1e-10) {
    throw std::invalid_argument("synth_single: frame must be an N x N unitary");
  }
  ComplexVector bra = ComplexVector::Zero(n);
  for (Index b = 1; b < n; ++b) {
    const Complex a = spec.coefficients(b - 1, 0);
    if (a == Complex{}) {
      throw std::invalid_argument("synth_single: coefficient a_" + std::to_string(b) +
                                  " is zero, the steady state would not be unique");
    }
    // <bra| = sum_b a_b <phi_b|, stored as the ket sum_b conj(a_b) |phi_b>.
    bra += std::conj(a) * spec.basis.col(b);
  }
  const ComplexMatrix primed = spec.basis.col(0) * bra.adjoint();
  DissipatorSet out;
  out.add(gamma, frame.adjoint() * primed * frame);
  return out;
}

DissipatorSet synth_single(const SynthesisSpec& spec, double gamma) {
  return synth_single(spec, identity(spec.dim()), gamma);
}

ComplexMatrix frame_for_target(const PureState& target) {
  return complete_basis(target).adjoint();
}

std::array<PauliSum, 3> bell_preset_terms() {
  const auto P = [](const char* w) { return PauliString::parse(w); };
  PauliSum l1(2), l2(2), l3(2);
  l1.add(kI, P("XY")).add(kI, P("YX")).add(-1.0, P("ZI")).add(-1.0, P("IZ"));
  l2.add(kI, P("ZY")).add(kI, P("YZ")).add(1.0, P("XI")).add(1.0, P("IX"));
  l3.add(1.0, P("ZX")).add(-1.0, P("XZ")).add(-kI, P("YI")).add(kI, P("IY"));
  return {l1, l2, l3};
}

DissipatorSet preset_lfor2() {
  DissipatorSet out;
  for (const auto& sum : bell_preset_terms()) out.add(1.0, sum.dense());
  return out;
}

DissipatorSet combine(const DissipatorSet& set, std::span<const Complex> coeffs, double gamma) {
  if (set.empty()) throw std::invalid_argument("combine: empty dissipator set");
  if (coeffs.size() != set.size()) {
    throw std::invalid_argument("combine: need one coefficient per operator");
  }
  ComplexMatrix l = ComplexMatrix::Zero(set.dim(), set.dim());
  for (std::size_t j = 0; j < set.size(); ++j) l += coeffs[j] * set[j].op;
  DissipatorSet out;
  out.add(gamma, std::move(l));
  return out;
}

bool is_dark(const DissipatorSet& set, const PureState& phi, double tol) {
  if (!set.empty() && set.dim() != phi.dim()) {
    throw std::invalid_argument("is_dark: dimension mismatch (" + std::to_string(set.dim()) + " vs " +
                                std::to_string(phi.dim()) + ")");
  }
  return std::all_of(set.begin(), set.end(), [&](const Dissipator& d) {
    return (d.op * phi.amplitudes()).norm() <= tol;
  });
}

}  // namespace dissipforge
