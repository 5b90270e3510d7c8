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

#include <limits>
#include <optional>
#include <vector>

#include "dissipforge/algebra.hpp"
#include "dissipforge/dissipators.hpp"
#include "dissipforge/states.hpp"

namespace dissipforge {

/// Generator drho/dt = -i[H, rho] + sum_j g_j (L_j rho L_j^dagger - {L_j^dagger L_j, rho}/2).
/// H defaults to zero. Rates are in inverse time, H in angular frequency.
class LindbladModel {
 public:
  explicit LindbladModel(DissipatorSet dissipators, std::optional<ComplexMatrix> hamiltonian = {});

  Index dim() const { return dim_; }
  const DissipatorSet& dissipators() const { return dissipators_; }
  const std::optional<ComplexMatrix>& hamiltonian() const { return hamiltonian_; }
  /// Cached L_j^dagger L_j, one per dissipator.
  const std::vector<ComplexMatrix>& decay_operators() const { return ldag_l_; }
  double max_rate() const { return dissipators_.max_rate(); }

  LindbladModel with_rates_scaled(double s) const;
  /// Model with every L_j -> V L_j V^dagger and H -> V H V^dagger.
  LindbladModel transformed(const ComplexMatrix& v) const;

 private:
  DissipatorSet dissipators_;
  std::optional<ComplexMatrix> hamiltonian_;
  std::vector<ComplexMatrix> ldag_l_;
  Index dim_ = 0;
};

ComplexMatrix rhs(const LindbladModel& model, const ComplexMatrix& rho);
ComplexMatrix rhs(const LindbladModel& model, const DensityMatrix& rho);

/// N^2 x N^2 matrix acting on column-stacked density matrices:
/// sum_j g_j [conj(L)(x)L - 1(x)L^dagger L/2 - (L^dagger L)^T(x)1/2] - i(1(x)H - H^T(x)1).
ComplexMatrix liouvillian_matrix(const LindbladModel& model);

struct SteadyStateResult {
  std::size_t dimension = 0;
  /// Null-space basis vectors reshaped to N x N matrices (not normalized as states).
  std::vector<ComplexMatrix> null_matrices;
  /// The unique steady state when dimension == 1, otherwise the projection
  /// of 1/N onto the null space, Hermitized and trace-normalized.
  DensityMatrix representative;
};

SteadyStateResult steady_states(const LindbladModel& model, double tol = 1e-9);

struct IntegrationOptions {
  double t_max = 1.0;
  /// Step size; 0 selects 0.01 / max rate.
  double dt = 0.0;
  /// Record every `sample_stride`-th step (t = 0 and t_max are always kept).
  std::size_t sample_stride = 1;
};

struct EvolutionRecord {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> fidelities;   ///< empty without a target
  std::vector<double> trace_errors; ///< |Tr rho - 1| before renormalization
  std::vector<double> purities;
  std::vector<double> min_eigs;
};

/// Fixed-step classical RK4. Aborts with NumericalError when a step drives
/// the trace drift above 1e-4 or the smallest eigenvalue below -1e-4.
EvolutionRecord integrate(const LindbladModel& model, const DensityMatrix& rho0,
                          const IntegrationOptions& options,
                          const std::optional<PureState>& target = std::nullopt);

/// unvec(exp(t M) vec(rho)) with M = liouvillian_matrix(model).
ComplexMatrix propagate_exact(const LindbladModel& model, const ComplexMatrix& rho, double t);

inline constexpr double kNeverReached = std::numeric_limits<double>::infinity();

/// First sampled time with fidelity >= threshold, or kNeverReached.
double time_to_fidelity(const LindbladModel& model, const DensityMatrix& rho0, const PureState& target,
                        double threshold, const IntegrationOptions& options);

}  // namespace dissipforge
