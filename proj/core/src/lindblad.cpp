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

#include "dissipforge/lindblad.hpp"

#include <cmath>
#include <sstream>

namespace dissipforge {
namespace {

constexpr double kAbortDrift = 1e-4;
constexpr double kAbortNegativity = -1e-4;

std::size_t step_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

}  // namespace

LindbladModel::LindbladModel(DissipatorSet dissipators, std::optional<ComplexMatrix> hamiltonian)
    : dissipators_(std::move(dissipators)), hamiltonian_(std::move(hamiltonian)) {
  dim_ = dissipators_.dim();
  if (hamiltonian_) {
    const auto& h = *hamiltonian_;
    if (h.rows() != h.cols()) throw std::invalid_argument("LindbladModel: H must be square");
    if (dim_ != 0 && h.rows() != dim_) {
      throw std::invalid_argument("LindbladModel: H dimension does not match the dissipators");
    }
    if (hermiticity_error(h) > 1e-12) throw std::invalid_argument("LindbladModel: H is not Hermitian");
    dim_ = h.rows();
  }
  if (dim_ == 0) throw std::invalid_argument("LindbladModel: needs a dissipator or a Hamiltonian");
  ldag_l_.reserve(dissipators_.size());
  for (const auto& d : dissipators_) ldag_l_.push_back(d.op.adjoint() * d.op);
}

LindbladModel LindbladModel::with_rates_scaled(double s) const {
  return LindbladModel(dissipators_.with_rates_scaled(s), hamiltonian_);
}

LindbladModel LindbladModel::transformed(const ComplexMatrix& v) const {
  std::optional<ComplexMatrix> h;
  if (hamiltonian_) h = ComplexMatrix(v * *hamiltonian_ * v.adjoint());
  return LindbladModel(dissipators_.transformed(v), std::move(h));
}

ComplexMatrix rhs(const LindbladModel& model, const ComplexMatrix& rho) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) {
    throw std::invalid_argument("rhs: density matrix is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", model dimension is " +
                                std::to_string(model.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  if (const auto& h = model.hamiltonian()) out.noalias() += -kI * (*h * rho - rho * *h);
  const auto& dissipators = model.dissipators();
  const auto& decay = model.decay_operators();
  for (std::size_t j = 0; j < dissipators.size(); ++j) {
    const auto& l = dissipators[j].op;
    const double g = dissipators[j].gamma;
    out.noalias() += g * (l * rho * l.adjoint());
    out.noalias() -= (0.5 * g) * (decay[j] * rho + rho * decay[j]);
  }
  return out;
}

ComplexMatrix rhs(const LindbladModel& model, const DensityMatrix& rho) { return rhs(model, rho.matrix()); }

ComplexMatrix liouvillian_matrix(const LindbladModel& model) {
  const Index n = model.dim();
  const ComplexMatrix id = identity(n);
  ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
  if (const auto& h = model.hamiltonian()) {
    m += -kI * (kron(id, *h) - kron(h->transpose(), id));
  }
  const auto& dissipators = model.dissipators();
  const auto& decay = model.decay_operators();
  for (std::size_t j = 0; j < dissipators.size(); ++j) {
    const auto& l = dissipators[j].op;
    const double g = dissipators[j].gamma;
    m += g * (kron(l.conjugate(), l) - 0.5 * kron(id, decay[j]) - 0.5 * kron(decay[j].transpose(), id));
  }
  return m;
}

SteadyStateResult steady_states(const LindbladModel& model, double tol) {
  const Index n = model.dim();
  const auto basis = null_space(liouvillian_matrix(model), tol);
  if (basis.empty()) {
    throw NumericalError("steady_states: empty null space; raise tol (currently " + std::to_string(tol) + ")");
  }
  const ComplexVector mixed = vec(identity(n) / static_cast<double>(n));
  ComplexVector projected = ComplexVector::Zero(n * n);
  std::vector<ComplexMatrix> matrices;
  matrices.reserve(basis.size());
  for (const auto& v : basis) {
    projected += v.dot(mixed) * v;
    matrices.push_back(unvec(v, n));
  }
  ComplexMatrix rho = unvec(projected, n);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  return SteadyStateResult{basis.size(), std::move(matrices), DensityMatrix::from_matrix(std::move(rho))};
}

EvolutionRecord integrate(const LindbladModel& model, const DensityMatrix& rho0,
                          const IntegrationOptions& options, const std::optional<PureState>& target) {
  if (rho0.dim() != model.dim()) throw std::invalid_argument("integrate: rho0 dimension mismatch");
  double dt = options.dt;
  if (dt == 0.0) {
    const double rate = model.max_rate();
    dt = rate > 0.0 ? 0.01 / rate : 0.01;
  }
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(options.t_max >= dt)) throw std::invalid_argument("integrate: t_max must be at least dt");
  if (options.sample_stride == 0) throw std::invalid_argument("integrate: sample_stride must be positive");
  if (target && target->dim() != model.dim()) throw std::invalid_argument("integrate: target dimension mismatch");

  const std::size_t steps = step_count(options.t_max, dt);
  EvolutionRecord rec;
  const std::size_t expected = steps / options.sample_stride + 2;
  rec.times.reserve(expected);
  rec.states.reserve(expected);

  auto record = [&](double t, ComplexMatrix m, double drift) {
    const double lo = min_eigenvalue(m);
    if (lo < kAbortNegativity) {
      std::ostringstream msg;
      msg << "integrate: state lost positivity at t = " << t << " (min eigenvalue " << lo
          << "); reduce dt (currently " << dt << ")";
      throw NumericalError(msg.str());
    }
    rec.times.push_back(t);
    rec.trace_errors.push_back(drift);
    rec.min_eigs.push_back(lo);
    rec.purities.push_back(purity(m));
    if (target) rec.fidelities.push_back(fidelity(m, *target));
    rec.states.push_back(DensityMatrix::from_matrix(std::move(m), -kAbortNegativity));
  };

  ComplexMatrix rho = rho0.matrix();
  record(0.0, rho, std::abs(rho.trace().real() - 1.0));

  for (std::size_t s = 1; s <= steps; ++s) {
    const double h = (s == steps) ? options.t_max - static_cast<double>(steps - 1) * dt : dt;
    const ComplexMatrix k1 = rhs(model, rho);
    const ComplexMatrix k2 = rhs(model, rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = rhs(model, rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = rhs(model, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = (0.5 * (rho + rho.adjoint())).eval();

    const double tr = rho.trace().real();
    const double drift = std::abs(tr - 1.0);
    const double t = (s == steps) ? options.t_max : static_cast<double>(s) * dt;
    if (drift > kAbortDrift || !std::isfinite(tr)) {
      std::ostringstream msg;
      msg << "integrate: trace drift " << drift << " at t = " << t << "; reduce dt (currently " << dt << ")";
      throw NumericalError(msg.str());
    }
    rho /= tr;
    if (s % options.sample_stride == 0 || s == steps) record(t, rho, drift);
  }
  return rec;
}

ComplexMatrix propagate_exact(const LindbladModel& model, const ComplexMatrix& rho, double t) {
  if (rho.rows() != model.dim()) throw std::invalid_argument("propagate_exact: dimension mismatch");
  const ComplexMatrix prop = matexp(t * liouvillian_matrix(model));
  return unvec(prop * vec(rho), model.dim());
}

double time_to_fidelity(const LindbladModel& model, const DensityMatrix& rho0, const PureState& target,
                        double threshold, const IntegrationOptions& options) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("time_to_fidelity: threshold must lie in (0, 1)");
  }
  const auto rec = integrate(model, rho0, options, target);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (rec.fidelities[i] >= threshold) return rec.times[i];
  }
  return kNeverReached;
}

}  // namespace dissipforge
