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
#include <span>
#include <vector>

#include "dissipforge/algebra.hpp"
#include "dissipforge/pauli.hpp"
#include "dissipforge/states.hpp"

namespace dissipforge {

struct Dissipator {
  double gamma = 1.0;
  ComplexMatrix op;
};

/// Ordered list of (rate, Lindblad operator) pairs on a common dimension.
class DissipatorSet {
 public:
  DissipatorSet() = default;

  /// Throws std::invalid_argument if gamma <= 0, op is not square, or its
  /// dimension differs from operators already in the set.
  DissipatorSet& add(double gamma, ComplexMatrix op);

  bool empty() const { return ops_.empty(); }
  std::size_t size() const { return ops_.size(); }
  /// Common operator dimension; 0 for an empty set.
  Index dim() const { return ops_.empty() ? 0 : ops_.front().op.rows(); }
  const Dissipator& operator[](std::size_t j) const { return ops_[j]; }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  double max_rate() const;
  DissipatorSet with_rates_scaled(double s) const;
  /// Every operator replaced by V L V^dagger.
  DissipatorSet transformed(const ComplexMatrix& v) const;

 private:
  std::vector<Dissipator> ops_;
};

/// Target frame plus coefficients for dark-subspace synthesis.
///
/// `basis` holds the orthonormal frame |1>..|N> as columns; the first `k`
/// columns span the target subspace. `coefficients` is (N-k) x k: row j-k-1
/// gives |phi_j> = sum_p a_{jp} |p> for the decaying level j. With k = 1 the
/// same column doubles as the a_beta of the single-operator construction.
struct SynthesisSpec {
  ComplexMatrix basis;
  Index k = 1;
  ComplexMatrix coefficients;

  Index dim() const { return basis.rows(); }
  /// Orthonormal basis to 1e-12, 1 <= k < N, coefficient shape.
  void validate() const;

  /// Frame whose first column is `target`, completed by Gram-Schmidt, with
  /// all coefficients set to 1.
  static SynthesisSpec for_target(const PureState& target);
};

/// Orthonormal frame with `target` as first column. Remaining columns come
/// from Gram-Schmidt over computational basis vectors after dropping the one
/// with the largest overlap with the target (lowest index on ties).
ComplexMatrix complete_basis(const PureState& target);

/// One operator L_j = |phi_j><j| per decaying level j > k. Every operator
/// annihilates span{|1>..|k>}. Rejects an all-zero coefficient row.
DissipatorSet synth_subspace(const SynthesisSpec& spec, double gamma = 1.0);

/// Single operator U^dagger |phi_0> (sum_b a_b <phi_b|) U whose unique steady
/// state is U^dagger |phi_0>. Requires k = 1 and every a_b nonzero.
DissipatorSet synth_single(const SynthesisSpec& spec, const ComplexMatrix& frame, double gamma = 1.0);
DissipatorSet synth_single(const SynthesisSpec& spec, double gamma = 1.0);

/// Frame U with U^dagger |0...0> = target, for use with synth_single on the
/// computational basis.
ComplexMatrix frame_for_target(const PureState& target);

/// Pauli-sum form of the three two-qubit operators that annihilate the Bell
/// state (|00> + |11>)/sqrt(2):
///   L1 = i(X1Y2 + Y1X2) - (Z1 + Z2)
///   L2 = i(Z1Y2 + Y1Z2) + (X1 + X2)
///   L3 = (Z1X2 - X1Z2) - i(Y1 - Y2)
std::array<PauliSum, 3> bell_preset_terms();

/// The three Bell-state operators above with unit rates.
DissipatorSet preset_lfor2();

/// sum_j a_j L_j as a single operator with the given rate.
DissipatorSet combine(const DissipatorSet& set, std::span<const Complex> coeffs, double gamma = 1.0);

/// True iff ||L_j phi|| <= tol for every operator.
bool is_dark(const DissipatorSet& set, const PureState& phi, double tol = 1e-10);

}  // namespace dissipforge
