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

#include <random>

#include <benchmark/benchmark.h>

#include "dissipforge/compiler.hpp"
#include "dissipforge/dissipators.hpp"
#include "dissipforge/lindblad.hpp"
#include "dissipforge/qsd.hpp"

using namespace dissipforge;

namespace {

ComplexMatrix random_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

LindbladModel subspace_model(std::size_t qubits) {
  std::mt19937_64 rng(1);
  const Index n = Index{1} << qubits;
  return LindbladModel(synth_subspace(SynthesisSpec::for_target(random_pure_state(n, rng))));
}

void BM_Matexp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ComplexMatrix a = random_matrix(state.range(0), rng) / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matexp(a));
}
BENCHMARK(BM_Matexp)->RangeMultiplier(2)->Range(4, 64);

void BM_LiouvillianMatrix(benchmark::State& state) {
  const auto model = subspace_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian_matrix(model));
}
BENCHMARK(BM_LiouvillianMatrix)->DenseRange(1, 4);

void BM_Rhs(benchmark::State& state) {
  const auto model = subspace_model(static_cast<std::size_t>(state.range(0)));
  const auto rho = DensityMatrix::maximally_mixed(model.dim());
  for (auto _ : state) benchmark::DoNotOptimize(rhs(model, rho));
}
BENCHMARK(BM_Rhs)->DenseRange(1, 5);

void BM_SteadyStates(benchmark::State& state) {
  const auto model = subspace_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(steady_states(model));
}
BENCHMARK(BM_SteadyStates)->DenseRange(1, 3);

void BM_QsdTrajectory(benchmark::State& state) {
  const std::vector<Complex> coeffs{1.0, 1.0, 1.0};
  const ComplexMatrix l = combine(preset_lfor2(), coeffs)[0].op;
  TrajectoryConfig cfg;
  cfg.gamma = 1.0 / 48.0;
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  cfg.sample_stride = 100;
  const auto psi0 = PureState::basis(4, 0);
  std::uint64_t idx = 0;
  for (auto _ : state) {
    const auto noise = sample_noise(cfg, idx++);
    benchmark::DoNotOptimize(evolve_trajectory(l, cfg, psi0, noise));
  }
}
BENCHMARK(BM_QsdTrajectory);

void BM_CompileAndVerify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = PauliString::parse(std::string(n, 'X'));
  std::mt19937_64 rng(3);
  const auto bath = BathTestSpace::random(3, rng);
  const std::vector<double> thetas{0.3};
  for (auto _ : state) {
    const auto seq = compile_coupling(w, 0.3, Adjacency::path(n));
    benchmark::DoNotOptimize(verify_sequence(seq, bath, thetas));
  }
}
BENCHMARK(BM_CompileAndVerify)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
