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
#include "dissipforge/lindblad.hpp"
#include "oracles.hpp"

using namespace dissipforge;

namespace {

PureState bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(v);
}

std::vector<oracle::Mat> ops(const DissipatorSet& s) {
  std::vector<oracle::Mat> out;
  for (const auto& d : s) out.push_back(d.op);
  return out;
}

std::vector<double> rates(const DissipatorSet& s) {
  std::vector<double> out;
  for (const auto& d : s) out.push_back(d.gamma);
  return out;
}

oracle::Mat closed_form(const SynthesisSpec& spec, const oracle::Mat& rho) {
  return oracle::subspace_filter(spec.basis, spec.k, spec.coefficients, rho);
}

SynthesisSpec random_spec(Index n, Index k, std::mt19937_64& rng) {
  SynthesisSpec spec;
  spec.basis = oracle::random_unitary(n, rng);
  spec.k = k;
  spec.coefficients = oracle::random_matrix(n, rng).topLeftCorner(n - k, k);
  return spec;
}

}  // namespace

TEST_CASE("dissipator set validation", "[dissipators]") {
  DissipatorSet s;
  CHECK(s.empty());
  CHECK(s.dim() == 0);
  CHECK_THROWS_AS(s.add(0.0, oracle::pauli('X')), std::invalid_argument);
  CHECK_THROWS_AS(s.add(1.0, ComplexMatrix::Zero(2, 3)), std::invalid_argument);
  s.add(2.0, oracle::pauli('X'));
  CHECK_THROWS_AS(s.add(1.0, oracle::eye(4)), std::invalid_argument);
  CHECK(s.max_rate() == 2.0);
  CHECK(s.with_rates_scaled(3.0)[0].gamma == 6.0);
}

TEST_CASE("two-level subspace filter", "[dissipators]") {
  // basis {|+>, |->}, a = 1 gives |+><-| = (Z - iY)/2
  SynthesisSpec spec;
  spec.basis = (ComplexMatrix(2, 2) << 1, 1, 1, -1).finished() / std::numbers::sqrt2;
  spec.k = 1;
  spec.coefficients = ComplexMatrix::Ones(1, 1);
  const auto s = synth_subspace(spec);
  REQUIRE(s.size() == 1);
  CHECK((2.0 * s[0].op - (oracle::pauli('Z') - oracle::kI * oracle::pauli('Y'))).norm() < 1e-15);
}

TEST_CASE("subspace synthesis annihilates the target block", "[dissipators]") {
  std::mt19937_64 rng(21);
  SECTION("Bell target with a completed frame") {
    const auto spec = SynthesisSpec::for_target(bell());
    const auto s = synth_subspace(spec);
    CHECK(s.size() == 3);
    CHECK(is_dark(s, bell()));
    for (const auto& d : s) CHECK((d.op * bell().amplitudes()).norm() < 1e-14);
  }
  SECTION("closed form against dense evaluation") {
    for (Index k : {1, 2, 3}) {
      const auto spec = random_spec(4, k, rng);
      const auto s = synth_subspace(spec);
      CHECK(s.size() == static_cast<std::size_t>(4 - k));
      for (int t = 0; t < 10; ++t) {
        const oracle::Mat rho = oracle::random_density(4, rng);
        const oracle::Mat dense = oracle::lindblad(ops(s), rates(s), rho);
        CHECK((dense - closed_form(spec, rho)).norm() < 1e-12);
      }
    }
  }
  SECTION("target-block states are stationary") {
    const auto spec = random_spec(4, 2, rng);
    const LindbladModel model(synth_subspace(spec));
    const oracle::Mat block = spec.basis.leftCols(2) * oracle::random_density(2, rng) * spec.basis.leftCols(2).adjoint();
    CHECK(rhs(model, block).norm() < 1e-12);
  }
  SECTION("rejections") {
    auto spec = random_spec(4, 2, rng);
    spec.coefficients.row(1).setZero();
    CHECK_THROWS_AS(synth_subspace(spec), std::invalid_argument);
    auto bad_k = random_spec(4, 1, rng);
    bad_k.k = 4;
    CHECK_THROWS_AS(synth_subspace(bad_k), std::invalid_argument);
    auto skew = random_spec(4, 1, rng);
    skew.basis(0, 0) += 0.1;
    CHECK_THROWS_AS(synth_subspace(skew), std::invalid_argument);
  }
}

TEST_CASE("basis completion", "[dissipators]") {
  const auto u = complete_basis(bell());
  CHECK(unitarity_error(u) < 1e-12);
  CHECK((u.col(0) - bell().amplitudes()).norm() < 1e-15);
  // the |00> column overlaps most (tie with |11>, lowest index dropped)
  CHECK(std::abs(u(0, 1)) + std::abs(u(0, 2)) + std::abs(u(0, 3)) > 0.0);
  CHECK((frame_for_target(bell()).adjoint().col(0) - bell().amplitudes()).norm() < 1e-15);
}

TEST_CASE("single-operator construction", "[dissipators]") {
  SECTION("two-level decay") {
    SynthesisSpec spec;
    spec.basis = oracle::eye(2);
    spec.k = 1;
    spec.coefficients = ComplexMatrix::Ones(1, 1);
    const auto s = synth_single(spec);
    const ComplexMatrix sigma_minus = (ComplexMatrix(2, 2) << 0, 1, 0, 0).finished();
    CHECK((s[0].op - sigma_minus).norm() == 0.0);
    const auto ss = steady_states(LindbladModel(s));
    CHECK(ss.dimension == 1);
    CHECK(std::abs(ss.representative.matrix()(0, 0) - 1.0) < 1e-12);
  }
  SECTION("operator shape for N = 4") {
    SynthesisSpec spec;
    spec.basis = oracle::eye(4);
    spec.k = 1;
    spec.coefficients = ComplexMatrix::Ones(3, 1);
    const auto s = synth_single(spec);
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 1) = expect(0, 2) = expect(0, 3) = 1.0;
    CHECK((s[0].op - expect).norm() == 0.0);
  }
  SECTION("rank one: the dark space is N - 1 dimensional") {
    // L = |phi0><s| annihilates phi0 and every state orthogonal to s, so with
    // no Hamiltonian the stationary set is (N-1)^2 dimensional.
    std::mt19937_64 rng(4);
    SynthesisSpec spec;
    spec.basis = oracle::eye(4);
    spec.k = 1;
    spec.coefficients = oracle::random_matrix(4, rng).topLeftCorner(3, 1);
    const auto s = synth_single(spec, oracle::random_unitary(4, rng));
    CHECK(null_space(s[0].op).size() == 3);
    CHECK(steady_states(LindbladModel(s)).dimension == 9);
  }
  SECTION("diagonal fixed points in the frame are unique") {
    // Among states diagonal in {phi_b}, only |phi0><phi0| is stationary.
    std::mt19937_64 rng(8);
    SynthesisSpec spec;
    spec.basis = oracle::random_unitary(4, rng);
    spec.k = 1;
    spec.coefficients = oracle::random_matrix(4, rng).topLeftCorner(3, 1);
    const LindbladModel model(synth_single(spec));
    // Map P -> diag part of L(sum_b P_b |phi_b><phi_b|) has a 1-dim kernel.
    oracle::Mat m(16, 4);
    for (Index b = 0; b < 4; ++b) m.col(b) = vec(rhs(model, spec.basis.col(b) * spec.basis.col(b).adjoint()));
    CHECK(null_space(m.adjoint() * m).size() == 1);
  }
  SECTION("rejections") {
    SynthesisSpec spec;
    spec.basis = oracle::eye(4);
    spec.k = 1;
    spec.coefficients = ComplexMatrix::Ones(3, 1);
    spec.coefficients(1, 0) = 0.0;
    CHECK_THROWS_AS(synth_single(spec), std::invalid_argument);
    spec.coefficients(1, 0) = 1.0;
    CHECK_THROWS_AS(synth_single(spec, 2.0 * oracle::eye(4)), std::invalid_argument);
  }
}

TEST_CASE("Bell preset operators", "[dissipators]") {
  const auto set = preset_lfor2();
  REQUIRE(set.size() == 3);
  const auto terms = bell_preset_terms();
  // literal Pauli forms
  using oracle::word;
  const oracle::Mat l1 = oracle::kI * (word("XY") + word("YX")) - (word("ZI") + word("IZ"));
  const oracle::Mat l2 = oracle::kI * (word("ZY") + word("YZ")) + (word("XI") + word("IX"));
  const oracle::Mat l3 = (word("ZX") - word("XZ")) - oracle::kI * (word("YI") - word("IY"));
  CHECK((set[0].op - l1).norm() < 1e-15);
  CHECK((set[1].op - l2).norm() < 1e-15);
  CHECK((set[2].op - l3).norm() < 1e-15);
  CHECK((terms[0].dense() - l1).norm() < 1e-15);

  for (const auto& d : set) CHECK((d.op * bell().amplitudes()).norm() < 1e-14);
  CHECK(is_dark(set, bell()));
  CHECK_FALSE(is_dark(set, PureState::basis(4, 0)));
  CHECK(is_dark(DissipatorSet{}, PureState::basis(2, 1)));

  SECTION("rank-one structure with orthogonal partners") {
    // L_j = 4 |phi2><chi_j|, <phi2|chi_j> = 0, <chi_j|chi_k> = delta_jk.
    std::vector<oracle::Vec> chis;
    for (const auto& d : set) {
      const oracle::Vec out = d.op.adjoint() * bell().amplitudes();
      CHECK((d.op - bell().amplitudes() * out.adjoint()).norm() < 1e-14);
      CHECK(std::abs(bell().amplitudes().dot(out)) < 1e-14);
      chis.push_back(out / 4.0);
    }
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(chis[j].dot(chis[k]) - (j == k ? 1.0 : 0.0)) < 1e-14);
  }
  SECTION("random combinations stay dark") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int t = 0; t < 5; ++t) {
      const std::vector<Complex> a{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
      const auto c = combine(set, a);
      CHECK(c.size() == 1);
      CHECK(is_dark(c, bell()));
    }
    CHECK_THROWS_AS(combine(set, std::vector<Complex>{1.0}), std::invalid_argument);
  }
}

TEST_CASE("frame covariance of the dissipator", "[dissipators]") {
  std::mt19937_64 rng(13);
  const auto s = synth_subspace(random_spec(4, 1, rng));
  const oracle::Mat v = oracle::random_unitary(4, rng);
  const oracle::Mat rho = oracle::random_density(4, rng);
  const oracle::Mat lhs = rhs(LindbladModel(s.transformed(v)), v * rho * v.adjoint());
  const oracle::Mat expect = v * rhs(LindbladModel(s), rho) * v.adjoint();
  CHECK((lhs - expect).norm() < 1e-12);
  CHECK_THROWS_AS(is_dark(s, PureState::basis(2, 0)), std::invalid_argument);
}
