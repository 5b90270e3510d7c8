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

#include "dissipforge/dissipators.hpp"
#include "dissipforge/qsd.hpp"
#include "oracles.hpp"

using namespace dissipforge;

namespace {

ComplexMatrix sigma_minus() { return (ComplexMatrix(2, 2) << 0, 1, 0, 0).finished(); }

PureState bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(v);
}

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

template <class F>
Stats stats(const std::vector<Complex>& xs, F f) {
  double s = 0.0, s2 = 0.0;
  for (const auto& x : xs) {
    const double v = f(x);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  return {mean, std::sqrt((s2 / n - mean * mean) / (n - 1.0))};
}

}  // namespace

TEST_CASE("config validation", "[qsd]") {
  TrajectoryConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.step() == 1e-3);
  CHECK(cfg.steps() == 1000);
  cfg.n_traj = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_traj = 1;
  cfg.gamma = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.gamma = 2.0;
  CHECK(cfg.step() == 5e-4);
  cfg.t_max = 1e-4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("noise increments have the stated statistics", "[qsd]") {
  TrajectoryConfig cfg;
  cfg.gamma = 0.8;
  cfg.dt = 1e-3;
  cfg.t_max = 100.0;  // 1e5 draws
  cfg.master_seed = 99;
  const auto path = sample_noise(cfg, 0);
  REQUIRE(path.increments.size() == 100000);
  const double target = cfg.gamma / cfg.dt;

  const auto abs2 = stats(path.increments, [](Complex z) { return std::norm(z); });
  CHECK(std::abs(abs2.mean - target) <= 5.0 * abs2.se);
  const auto re = stats(path.increments, [](Complex z) { return z.real(); });
  const auto im = stats(path.increments, [](Complex z) { return z.imag(); });
  CHECK(std::abs(re.mean) <= 5.0 * re.se);
  CHECK(std::abs(im.mean) <= 5.0 * im.se);
  const auto zz_re = stats(path.increments, [](Complex z) { return (z * z).real(); });
  const auto zz_im = stats(path.increments, [](Complex z) { return (z * z).imag(); });
  CHECK(std::abs(zz_re.mean) <= 5.0 * zz_re.se);
  CHECK(std::abs(zz_im.mean) <= 5.0 * zz_im.se);
}

TEST_CASE("noise is reproducible per trajectory", "[qsd]") {
  TrajectoryConfig cfg;
  cfg.master_seed = 7;
  const auto a = sample_noise(cfg, 3);
  const auto b = sample_noise(cfg, 3);
  const auto c = sample_noise(cfg, 4);
  CHECK(a.increments == b.increments);
  CHECK(a.increments != c.increments);
  CHECK(trajectory_seed(7, 3) == trajectory_seed(7, 3));
  CHECK(trajectory_seed(7, 3) != trajectory_seed(8, 3));
}

TEST_CASE("single trajectories", "[qsd]") {
  const auto excited = PureState::basis(2, 1);
  SECTION("dark initial state never moves") {
    TrajectoryConfig cfg;
    cfg.t_max = 0.5;
    const ComplexMatrix l = combine(preset_lfor2(), std::vector<Complex>{1.0, {0.0, 2.0}, -0.5})[0].op;
    const auto traj = evolve_trajectory(l, cfg, bell(), sample_noise(cfg, 0));
    for (const auto& psi : traj.states) CHECK((psi - bell().amplitudes()).norm() == 0.0);
  }
  SECTION("hand recursion over three steps") {
    TrajectoryConfig cfg;
    cfg.gamma = 1.5;
    cfg.dt = 0.01;
    cfg.t_max = 0.03;
    const auto noise = sample_noise(cfg, 5);
    REQUIRE(noise.increments.size() == 3);
    // psi = (c0, c1): L psi = (c1, 0), L^dag L psi = (0, c1)
    Complex c0 = 0.0, c1 = 1.0;
    for (const auto& z : noise.increments) {
      const Complex n0 = c0 + cfg.dt * z * c1;
      const Complex n1 = c1 - cfg.dt * 0.5 * cfg.gamma * c1;
      c0 = n0;
      c1 = n1;
    }
    const auto traj = evolve_trajectory(sigma_minus(), cfg, excited, noise);
    CHECK(std::abs(traj.states.back()(0) - c0) < 1e-15);
    CHECK(std::abs(traj.states.back()(1) - c1) < 1e-15);
  }
  SECTION("zero noise contracts like exp(-gamma t / 2)") {
    TrajectoryConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = 2.0;
    NoisePath zero;
    zero.increments.assign(cfg.steps(), Complex{});
    const auto traj = evolve_trajectory(sigma_minus(), cfg, excited, zero);
    const double t = traj.times.back();
    CHECK(t == Catch::Approx(2.0));
    CHECK(std::abs(traj.states.back()(1).real() - std::exp(-t / 2.0)) < cfg.dt);
    CHECK(traj.states.back()(0) == Complex{});
  }
  SECTION("overflow is signalled") {
    TrajectoryConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 1.0;
    NoisePath big;
    big.increments.assign(cfg.steps(), Complex{1e4, 0.0});
    CHECK_THROWS_AS(evolve_trajectory(oracle::eye(2), cfg, excited, big), TrajectoryOverflow);
  }
  SECTION("input checks") {
    TrajectoryConfig cfg;
    NoisePath short_path;
    CHECK_THROWS_AS(evolve_trajectory(sigma_minus(), cfg, excited, short_path), std::invalid_argument);
    CHECK_THROWS_AS(evolve_trajectory(oracle::eye(4), cfg, excited, sample_noise(cfg, 0)), std::invalid_argument);
  }
}

TEST_CASE("ensembles", "[qsd]") {
  SECTION("dark projector is reproduced exactly") {
    TrajectoryConfig cfg;
    cfg.n_traj = 70;
    cfg.t_max = 0.1;
    cfg.sample_stride = 20;
    const ComplexMatrix l = combine(preset_lfor2(), std::vector<Complex>{1.0, 1.0, 1.0})[0].op;
    const auto rec = ensemble_average(l, cfg, bell());
    for (std::size_t s = 0; s < rec.times.size(); ++s) {
      CHECK((rec.rho_mean[s] - bell().projector()).norm() < 1e-15);
      CHECK(rec.rho_se[s].maxCoeff() < 1e-15);
    }
  }
  SECTION("results do not depend on the thread count") {
    TrajectoryConfig cfg;
    cfg.n_traj = 200;
    cfg.t_max = 0.5;
    cfg.master_seed = 17;
    cfg.sample_stride = 100;
    cfg.threads = 1;
    const auto a = ensemble_average(sigma_minus(), cfg, PureState::basis(2, 1));
    cfg.threads = 3;
    const auto b = ensemble_average(sigma_minus(), cfg, PureState::basis(2, 1));
    REQUIRE(a.times == b.times);
    for (std::size_t s = 0; s < a.times.size(); ++s) {
      CHECK((a.rho_mean[s] - b.rho_mean[s]).norm() == 0.0);
      CHECK((a.rho_se[s] - b.rho_se[s]).norm() == 0.0);
    }
  }
  SECTION("mean norm equals the Lindblad trace") {
    TrajectoryConfig cfg;
    cfg.n_traj = 2000;
    cfg.t_max = 1.0;
    cfg.sample_stride = 250;
    cfg.master_seed = 3;
    const auto rec = ensemble_average(sigma_minus(), cfg, PureState::basis(2, 1));
    CHECK(rec.excluded == 0);
    CHECK(rec.times.size() == 5);
    for (std::size_t s = 0; s < rec.times.size(); ++s) {
      CHECK(std::abs(rec.norm_mean[s] - 1.0) <= 5.0 * rec.norm_se[s] + 1e-12);
      CHECK(std::abs(rec.rho_mean[s].trace().real() - rec.norm_mean[s]) < 1e-12);
    }
    // rho_11 is deterministic for this model: (1 - gamma dt / 2)^(2k)
    const double expect = std::pow(1.0 - 0.5 * cfg.step(), 2.0 * static_cast<double>(cfg.steps()));
    CHECK(std::abs(rec.rho_mean.back()(1, 1).real() - expect) < 1e-12);
  }
  SECTION("too many overflows fail the run") {
    TrajectoryConfig cfg;
    cfg.n_traj = 20;
    cfg.dt = 0.01;
    cfg.t_max = 1.0;
    CHECK_THROWS_AS(ensemble_average(30.0 * oracle::eye(2), cfg, PureState::basis(2, 0)), NumericalError);
  }
}
