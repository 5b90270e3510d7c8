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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dissipforge/serialization.hpp"

namespace dissipforge::cli {

/// Bad or inconsistent scenario configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { kSynth, kEvolve, kSteady, kQsd, kCompile, kGraphState };

std::string to_string(Scenario s);

/// Which dissipators a state-preparation scenario uses.
///   auto:        bell-preset for the Bell target, subspace otherwise
///   bell-preset: the three fixed two-qubit Bell operators
///   subspace:    one |phi_j><j| operator per level orthogonal to the target
///   single:      one operator driving the frame-rotated |0...0> to the target
enum class ModelKind { kAuto, kBellPreset, kSubspace, kSingle };

struct ScenarioConfig {
  Scenario scenario = Scenario::kEvolve;
  std::size_t n_qubits = 0;
  std::optional<GraphSpec> graph;
  /// Preset name ("bell", "plus", "cluster-n", "cluster-<k>") or "amplitudes".
  std::string target_name;
  std::optional<PureState> target;
  ModelKind model = ModelKind::kAuto;
  std::vector<double> gamma{1.0};
  /// Coefficients of the single combined operator used by the qsd scenario.
  std::vector<Complex> coefficients;
  /// "maximally_mixed", "ground", "random" or "amplitudes".
  std::string initial_name;
  std::optional<PureState> initial_state;

  double t_max = 0.0;
  double dt = 0.0;
  std::size_t sample_stride = 1;

  std::size_t n_traj = 0;

  std::optional<PauliString> pauli_word;
  double theta = 0.0;
  Index bath_dim = 4;
  bool lower_ms = false;

  std::uint64_t seed = 0;
  std::filesystem::path output_path = "dissipforge-out";
  std::vector<std::string> warnings;
};

/// Reads and validates a JSON scenario file. Throws IoError when the file
/// cannot be read and ConfigError (naming the offending field) otherwise.
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config_json(const Json& j);

struct Artifact {
  std::string name;  ///< file name inside the output directory
  std::string content;
};

struct RunSummary {
  Scenario scenario = Scenario::kEvolve;
  double wall_time_s = 0.0;
  Json metrics = Json::object();
  std::vector<Artifact> artifacts;
  std::vector<std::string> warnings;
  /// Filled by emit_outputs.
  std::vector<std::filesystem::path> artifact_paths;
  /// False when a numerical contract (e.g. sequence verification) failed;
  /// the outputs are still emitted.
  bool contract_ok = true;
  std::string contract_message;
};

/// Runs the scenario. `threads` caps ensemble parallelism (0 = hardware).
/// Throws ConfigError for inputs rejected by the library and lets
/// NumericalError through.
RunSummary run(const ScenarioConfig& config, unsigned threads = 0);

/// Writes every artifact plus summary.json into `dir` (created if needed).
/// summary.json excludes the wall time so reruns are byte-identical.
void emit_outputs(RunSummary& summary, const std::filesystem::path& dir);

/// Threads from DISSIPFORGE_THREADS (0 when unset). Throws ConfigError on a
/// malformed value.
unsigned threads_from_env();

}  // namespace dissipforge::cli
