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

#include "dissipforge/qsd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace dissipforge {
namespace {

constexpr double kOverflowNorm = 1e6;
constexpr std::size_t kBlockSize = 64;

// Running moments over one group of trajectories, merged with Chan's
// pairwise update.
struct Moments {
  std::size_t count = 0;
  std::vector<ComplexMatrix> mean;
  std::vector<RealMatrix> m2;
  std::vector<double> norm_mean;
  std::vector<double> norm_m2;

  void init(std::size_t samples, Index dim) {
    mean.assign(samples, ComplexMatrix::Zero(dim, dim));
    m2.assign(samples, RealMatrix::Zero(dim, dim));
    norm_mean.assign(samples, 0.0);
    norm_m2.assign(samples, 0.0);
  }

  void push(const std::vector<ComplexVector>& states) {
    ++count;
    const double n = static_cast<double>(count);
    for (std::size_t s = 0; s < states.size(); ++s) {
      const ComplexMatrix x = states[s] * states[s].adjoint();
      const ComplexMatrix delta = x - mean[s];
      mean[s] += delta / n;
      m2[s] += (delta.conjugate().cwiseProduct(x - mean[s])).real();
      const double nx = states[s].squaredNorm();
      const double nd = nx - norm_mean[s];
      norm_mean[s] += nd / n;
      norm_m2[s] += nd * (nx - norm_mean[s]);
    }
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    for (std::size_t s = 0; s < mean.size(); ++s) {
      const ComplexMatrix delta = other.mean[s] - mean[s];
      mean[s] += delta * (nb / n);
      m2[s] += other.m2[s] + delta.cwiseAbs2() * (na * nb / n);
      const double nd = other.norm_mean[s] - norm_mean[s];
      norm_mean[s] += nd * (nb / n);
      norm_m2[s] += other.norm_m2[s] + nd * nd * (na * nb / n);
    }
    count += other.count;
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void TrajectoryConfig::validate() const {
  if (n_traj < 1) throw std::invalid_argument("TrajectoryConfig: n_traj must be at least 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("TrajectoryConfig: gamma must be positive");
  if (!(step() > 0.0)) throw std::invalid_argument("TrajectoryConfig: dt must be positive");
  if (!(t_max >= step())) throw std::invalid_argument("TrajectoryConfig: t_max must be at least dt");
  if (sample_stride == 0) throw std::invalid_argument("TrajectoryConfig: sample_stride must be positive");
}

std::size_t TrajectoryConfig::steps() const {
  return static_cast<std::size_t>(std::ceil(t_max / step() - 1e-9));
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t traj_index) {
  return splitmix64(splitmix64(master_seed) ^ traj_index);
}

NoisePath sample_noise(const TrajectoryConfig& cfg, std::uint64_t traj_index) {
  cfg.validate();
  std::mt19937_64 rng(trajectory_seed(cfg.master_seed, traj_index));
  std::normal_distribution<double> normal(0.0, std::sqrt(cfg.gamma / (2.0 * cfg.step())));
  NoisePath path;
  const std::size_t steps = cfg.steps();
  path.increments.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    path.increments.emplace_back(re, im);
  }
  return path;
}

Trajectory evolve_trajectory(const ComplexMatrix& l, const TrajectoryConfig& cfg, const PureState& psi0,
                             const NoisePath& noise) {
  cfg.validate();
  if (l.rows() != l.cols() || l.rows() != psi0.dim()) {
    throw std::invalid_argument("evolve_trajectory: operator and state dimensions differ");
  }
  const std::size_t steps = cfg.steps();
  if (noise.increments.size() < steps) {
    throw std::invalid_argument("evolve_trajectory: noise path shorter than the number of steps");
  }
  const double dt = cfg.step();
  const ComplexMatrix drift = (-0.5 * cfg.gamma) * (l.adjoint() * l);

  Trajectory traj;
  ComplexVector psi = psi0.amplitudes();
  traj.times.push_back(0.0);
  traj.states.push_back(psi);
  ComplexVector lpsi(psi.size());
  for (std::size_t k = 0; k < steps; ++k) {
    lpsi.noalias() = l * psi;
    psi += dt * (noise.increments[k] * lpsi + drift * psi);
    const double norm = psi.norm();
    if (!(norm <= kOverflowNorm)) {
      std::ostringstream msg;
      msg << "evolve_trajectory: norm " << norm << " exceeded " << kOverflowNorm << " at step " << k + 1;
      throw TrajectoryOverflow(msg.str());
    }
    if ((k + 1) % cfg.sample_stride == 0 || k + 1 == steps) {
      traj.times.push_back(static_cast<double>(k + 1) * dt);
      traj.states.push_back(psi);
    }
  }
  return traj;
}

EnsembleRecord ensemble_average(const ComplexMatrix& l, const TrajectoryConfig& cfg, const PureState& psi0) {
  cfg.validate();
  if (l.rows() != psi0.dim()) throw std::invalid_argument("ensemble_average: dimension mismatch");

  std::vector<double> times;
  {
    const std::size_t steps = cfg.steps();
    times.push_back(0.0);
    for (std::size_t k = 1; k <= steps; ++k) {
      if (k % cfg.sample_stride == 0 || k == steps) times.push_back(static_cast<double>(k) * cfg.step());
    }
  }
  const std::size_t samples = times.size();
  const Index dim = psi0.dim();
  const std::size_t blocks = (cfg.n_traj + kBlockSize - 1) / kBlockSize;

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));

  Moments total;
  total.init(samples, dim);
  std::size_t excluded = 0;
  std::size_t next_to_merge = 0;
  std::map<std::size_t, std::pair<Moments, std::size_t>> finished;
  std::mutex merge_mutex;
  std::atomic<std::size_t> next_block{0};
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (std::size_t b = next_block++; b < blocks; b = next_block++) {
        Moments local;
        local.init(samples, dim);
        std::size_t local_excluded = 0;
        const std::size_t first = b * kBlockSize;
        const std::size_t last = std::min(cfg.n_traj, first + kBlockSize);
        for (std::size_t idx = first; idx < last; ++idx) {
          try {
            const auto traj = evolve_trajectory(l, cfg, psi0, sample_noise(cfg, idx));
            local.push(traj.states);
          } catch (const TrajectoryOverflow&) {
            ++local_excluded;
          }
        }
        std::lock_guard lock(merge_mutex);
        finished.emplace(b, std::make_pair(std::move(local), local_excluded));
        // Merge strictly in block order.
        for (auto it = finished.find(next_to_merge); it != finished.end(); it = finished.find(next_to_merge)) {
          total.merge(it->second.first);
          excluded += it->second.second;
          finished.erase(it);
          ++next_to_merge;
        }
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (static_cast<double>(excluded) > 0.01 * static_cast<double>(cfg.n_traj)) {
    throw NumericalError("ensemble_average: " + std::to_string(excluded) + " of " + std::to_string(cfg.n_traj) +
                         " trajectories overflowed (more than 1%)");
  }
  if (total.count == 0) throw NumericalError("ensemble_average: every trajectory overflowed");

  EnsembleRecord rec;
  rec.n_traj = cfg.n_traj;
  rec.excluded = excluded;
  rec.times = std::move(times);
  const double n = static_cast<double>(total.count);
  const double denom = n > 1.0 ? n * (n - 1.0) : 1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    rec.rho_mean.push_back(total.mean[s]);
    rec.rho_se.push_back((total.m2[s].cwiseMax(0.0) / denom).cwiseSqrt());
    rec.norm_mean.push_back(total.norm_mean[s]);
    rec.norm_se.push_back(std::sqrt(std::max(0.0, total.norm_m2[s]) / denom));
  }
  return rec;
}

}  // namespace dissipforge
