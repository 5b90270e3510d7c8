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

// File formats. Real numbers are rounded to 15 significant digits before they
// are written; complex numbers are [re, im] pairs; matrices are flattened
// row-major.

#include <ostream>

#include <nlohmann/json.hpp>

#include "dissipforge/compiler.hpp"
#include "dissipforge/dissipators.hpp"
#include "dissipforge/lindblad.hpp"
#include "dissipforge/qsd.hpp"
#include "dissipforge/states.hpp"

namespace dissipforge {

using Json = nlohmann::json;

double round_sig15(double x);
Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

/// {"n": int, "edges": [[a, b], ...]}
Json graph_to_json(const GraphSpec& g);
GraphSpec graph_from_json(const Json& j);

/// [[re, im], ...]
Json state_to_json(const PureState& psi);

/// [{"gamma": g, "matrix": [[re, im], ...]}, ...]
Json dissipators_to_json(const DissipatorSet& set);
DissipatorSet dissipators_from_json(const Json& j);

/// {"num_qubits", "target", "theta", "gates": [{"kind", "qubits", "pauli_word", "angle"}, ...]}
/// kinds: "conjugation", "seed", "ancilla_rotation", "ms" (the last also carries "nu").
Json sequence_to_json(const GateSequence& seq);
GateSequence sequence_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);

/// {"n_traj", "excluded", "times", "rho_mean": [[[re, im], ...] per time], "rho_se": [[...] per time]}
Json ensemble_to_json(const EnsembleRecord& rec);

/// Header "t,fidelity,trace_error,purity,min_eig" then one line per sample;
/// fidelity is "nan" for records without a target.
void write_evolution_csv(std::ostream& out, const EvolutionRecord& rec);

}  // namespace dissipforge
