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

// Linear quantum-state diffusion in the Markov limit:
//
//   d psi / dt = [ L z*_t - (gamma / 2) L^dagger L ] psi,
//   M[z_t z*_s] = gamma delta(t - s),  M[z_t z_s] = 0.
//
// The trajectories are not normalized; M[|psi_t><psi_t|] solves the Lindblad
// equation with a single operator L at rate gamma.

#include <cstdint>
#include <vector>

#include "dissipforge/algebra.hpp"
#include "dissipforge/states.hpp"

namespace dissipforge {

struct TrajectoryConfig {
  std::size_t n_traj = 1;
  /// Step size; 0 selects 1e-3 / gamma.
  double dt = 0.0;
  double t_max = 1.0;
  std::uint64_t master_seed = 0;
  double gamma = 1.0;
  /// Keep every `sample_stride`-th step (t = 0 and the final step are always kept).
  std::size_t sample_stride = 1;
  /// Worker threads for ensembles; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws std::invalid_argument on n_traj < 1, dt <= 0, t_max < dt, gamma <= 0.
  void validate() const;
  double step() const { return dt > 0.0 ? dt : 1e-3 / gamma; }
  std::size_t steps() const;
};

struct NoisePath {
  /// z*_k for each step; real and imaginary parts have variance gamma/(2 dt).
  std::vector<Complex> increments;
};

/// Trajectory overflow: the unnormalized norm exceeded 1e6.
class TrajectoryOverflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// SplitMix64 finalizer applied to the master seed and the trajectory index.
/// Fixed so that ensembles reproduce across runs and thread counts.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t traj_index);

NoisePath sample_noise(const TrajectoryConfig& cfg, std::uint64_t traj_index);

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;  ///< unnormalized psi at each kept sample
};

/// Euler-Maruyama: psi_{k+1} = psi_k + dt (L z*_k - gamma/2 L^dagger L) psi_k.
/// Throws TrajectoryOverflow when ||psi|| > 1e6 or becomes non-finite.
Trajectory evolve_trajectory(const ComplexMatrix& l, const TrajectoryConfig& cfg, const PureState& psi0,
                             const NoisePath& noise);

struct EnsembleRecord {
  std::size_t n_traj = 0;
  std::size_t excluded = 0;
  std::vector<double> times;
  std::vector<ComplexMatrix> rho_mean;  ///< M[|psi><psi|] over kept trajectories
  std::vector<RealMatrix> rho_se;       ///< elementwise standard error of the complex mean
  std::vector<double> norm_mean;        ///< M[<psi|psi>] = Tr rho_mean
  std::vector<double> norm_se;
};

/// Averages unnormalized projectors over cfg.n_traj trajectories. Work is cut
/// into fixed blocks of trajectory indices that are reduced in index order, so
/// the result does not depend on the thread count. Overflowing trajectories
/// are excluded and counted; more than 1% exclusions raises NumericalError.
EnsembleRecord ensemble_average(const ComplexMatrix& l, const TrajectoryConfig& cfg, const PureState& psi0);

}  // namespace dissipforge
