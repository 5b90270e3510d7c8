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

// Compilation of many-body system-bath couplings exp(i theta W (x) B) into a
// single-qubit seed coupling exp(i theta Y_s (x) B) dressed by conjugations
// T_A = exp(i pi/4 A) with A of weight one or two:
//
//   T_A exp(i theta G) T_A^dagger = exp(i theta (i A G))   whenever {A, G} = 0.
//
// Qubits are labelled 1..n; label 0 is reserved for the ancilla used by the
// Molmer-Sorensen lowering. Dense realizations order the register as
// [ancilla] (x) q1 (x) ... (x) qn (x) bath.

#include <numbers>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dissipforge/algebra.hpp"
#include "dissipforge/pauli.hpp"

namespace dissipforge {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// exp(i angle A); A is a phase-free system string of weight 1 or 2.
struct Conjugation {
  PauliString generator;
  double angle = kQuarterPi;
};

/// exp(i theta Y_qubit (x) B).
struct SeedCoupling {
  std::size_t qubit = 1;
  double theta = 0.0;
};

/// exp(-i angle Z_0) on the ancilla.
struct AncillaRotation {
  double angle = 0.0;
};

/// exp(-i mu (cos nu S_x + sin nu S_y)^2 / 4) with S_a summed over the ancilla
/// and the two listed system qubits.
struct MSGate {
  std::size_t p = 1;
  std::size_t q = 2;
  double mu = 0.0;
  double nu = 0.0;
};

using Gate = std::variant<Conjugation, SeedCoupling, AncillaRotation, MSGate>;

/// Gates in time order (first element acts first).
struct GateSequence {
  std::size_t num_qubits = 0;
  PauliString target;  ///< W realized as exp(i theta W (x) B)
  double theta = 0.0;
  std::vector<Gate> gates;

  bool uses_ancilla() const;
  std::size_t conjugation_count() const;
  std::size_t two_qubit_count() const;
  /// Generators of the conjugations applied after the seed, innermost first.
  std::vector<PauliString> conjugation_chain() const;
};

/// Allowed two-qubit interactions.
struct Adjacency {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  static Adjacency path(std::size_t n);
  static Adjacency complete(std::size_t n);
  bool connected(std::size_t a, std::size_t b) const;
};

/// i A G for anticommuting phase-free A and G. Throws std::invalid_argument
/// when they commute, when A has weight 0 or more than 2, or on size mismatch.
PauliString conjugation_step(const PauliString& a, const PauliString& g);

/// Wraps a conjugation chain (innermost first) around a Y seed:
/// [T_{A_m}^dagger ... T_{A_1}^dagger, seed, T_{A_1} ... T_{A_m}].
/// The target is the image of Y_seed under the chain.
GateSequence sequence_from_chain(std::size_t num_qubits, std::size_t seed_qubit,
                                 std::span<const PauliString> chain, double theta);

/// Compiles exp(i theta W (x) B) for a phase-free W whose support induces a
/// connected subgraph of `allowed`. The seed sits on the lowest support qubit;
/// support qubits are attached along a breadth-first tree with two-qubit
/// conjugators, and single-qubit conjugators then fix each letter. Uses at
/// most 3 w - 1 conjugations for a weight-w target.
GateSequence compile_coupling(const PauliString& w, double theta, const Adjacency& allowed);

/// Abstract bath factor for verification.
struct BathTestSpace {
  ComplexMatrix op;

  Index dim() const { return op.rows(); }
  /// Truncated harmonic-oscillator lowering operator on d levels.
  static BathTestSpace lowering(Index d);
  /// Gaussian random d x d matrix scaled to unit spectral norm; Hermitian
  /// when requested.
  static BathTestSpace random(Index d, std::mt19937_64& rng, bool hermitian = false);
};

/// Dense unitary of the sequence on [ancilla] (x) system (x) bath with the
/// seed angle replaced by `theta`.
ComplexMatrix realize(const GateSequence& seq, const BathTestSpace& bath, double theta);

/// Dense unitary on [ancilla] (x) system for sequences without a seed.
ComplexMatrix realize_system(const GateSequence& seq);

/// Dense exp(i theta W (x) B).
ComplexMatrix target_unitary(const PauliString& w, const BathTestSpace& bath, double theta);

struct VerificationReport {
  bool passed = false;
  double max_deviation = 0.0;
  std::vector<double> thetas;
  std::vector<double> deviations;
};

/// Compares realize() against target_unitary() (Frobenius norm) at each
/// angle. With an ancilla, the block <0|U|0> is compared and the leakage
/// <1|U|0> counts towards the deviation. Never throws on mismatch.
VerificationReport verify_sequence(const GateSequence& seq, const BathTestSpace& bath,
                                   std::span<const double> thetas, double tol = 1e-10);

/// U_MS(-pi/2, 0) exp(-i theta Z_0) U_MS(pi/2, 0) on {ancilla, p, q}. With
/// the ancilla in |0> this is exactly exp(i theta X_p X_q) and the ancilla
/// returns to |0> with no extra phase.
GateSequence ms_decompose(std::size_t p, std::size_t q, double theta, std::size_t num_qubits = 0);

/// Replaces every two-qubit conjugation exp(i a P_p Q_q) by local basis
/// changes around ms_decompose(p, q, a).
GateSequence lower_to_ms(const GateSequence& seq);

/// c W (x) B^dagger + conj(c) W^dagger (x) B.
struct TrotterTerm {
  PauliString word;
  Complex coupling{1.0, 0.0};
};

/// prod_a exp(-i (c_a W_a (x) B^dagger + h.c.) dt); the first term acts first.
ComplexMatrix trotter_step(std::span<const TrotterTerm> terms, double dt, const BathTestSpace& bath);
/// exp(-i sum_a (c_a W_a (x) B^dagger + h.c.) dt).
ComplexMatrix exact_step(std::span<const TrotterTerm> terms, double dt, const BathTestSpace& bath);

/// One gate per line, e.g. "T[-pi/4] Z1X2" or "SEED exp(i*0.7*Y1*B)".
std::string render_circuit(const GateSequence& seq);

}  // namespace dissipforge
