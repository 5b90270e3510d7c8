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

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dissipforge/algebra.hpp"
#include "dissipforge/pauli.hpp"

namespace dissipforge {

/// Normalized state vector.
class PureState {
 public:
  /// Throws std::invalid_argument unless | ||amps|| - 1 | <= tol.
  static PureState from_amplitudes(ComplexVector amps, double tol = 1e-12);
  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(ComplexVector amps);
  static PureState basis(Index dim, Index index);

  Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_(i); }
  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  explicit PureState(ComplexVector amps) : amps_(std::move(amps)) {}
  ComplexVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity and trace to 1e-12 and the smallest eigenvalue
  /// against -positivity_tol.
  static DensityMatrix from_matrix(ComplexMatrix m, double positivity_tol = 1e-10);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double min_eigenvalue() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

double min_eigenvalue(const ComplexMatrix& hermitian);

/// Undirected simple graph on vertices 1..n.
struct GraphSpec {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range
  /// vertices.
  void validate() const;
  static GraphSpec path(std::size_t n);
};

/// Applies CZ along every edge to |+>^n.
PureState graph_state(const GraphSpec& g);

/// Direct expansion of prod_q (|0>_q Z_{q+1} + |1>_q) / 2^{n/2} with
/// Z_{n+1} = 1.
PureState cluster_formula(std::size_t n);

/// <phi|rho|phi>, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const PureState& phi);
double fidelity(const ComplexMatrix& rho, const PureState& phi);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);
double purity(const ComplexMatrix& rho);

/// <psi|P|psi> for a Pauli string on the same number of qubits.
Complex expectation(const PureState& psi, const PauliString& p);

/// Stabilizer generators K_v = X_v prod_{u ~ v} Z_u of a graph state.
std::vector<PauliString> graph_stabilizers(const GraphSpec& g);

/// Single-qubit gates tried per qubit when searching for local equivalences:
/// I, H, Z, X, S, HS, SH, HZ.
struct LocalGate {
  std::string name;
  ComplexMatrix matrix;
};
const std::array<LocalGate, 8>& local_gate_set();

struct LocalEquivalence {
  double overlap = 0.0;             ///< max |<to| (U_1 x ... x U_n) |from>|
  std::vector<std::string> gates;   ///< maximizing gate per qubit
};

/// Exhaustive search over local_gate_set()^n for the product unitary that
/// best maps `from` onto `to` up to a global phase.
LocalEquivalence find_local_equivalence(const PureState& from, const PureState& to);

/// Pure state from a Ginibre vector.
PureState random_pure_state(Index dim, std::mt19937_64& rng);
/// Full-rank density matrix G G^dagger / Tr(G G^dagger) from a Ginibre matrix.
DensityMatrix random_density_matrix(Index dim, std::mt19937_64& rng);

}  // namespace dissipforge
