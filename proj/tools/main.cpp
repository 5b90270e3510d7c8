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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
  namespace cli = dissipforge::cli;

  CLI::App app{"Engineered-dissipation toolkit: synthesis, Lindblad evolution, steady states, QSD ensembles "
               "and coupling compilation driven by a JSON scenario file.",
               "dissipforge"};
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output;
  bool quiet = false;
  app.add_option("config,--config", config_path, "Scenario configuration (JSON)")->required();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--output", output, "Override the output directory");
  app.add_flag("--quiet", quiet, "Print nothing on success");
  app.footer("Exit codes: 0 success, 2 config error, 3 numerical-contract failure, 4 I/O error.\n"
             "DISSIPFORGE_THREADS caps ensemble parallelism.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    cli::ScenarioConfig config = cli::parse_config(config_path);
    if (app.count("--seed") > 0) config.seed = seed;
    if (app.count("--output") > 0) config.output_path = output;
    const unsigned threads = cli::threads_from_env();

    for (const auto& w : config.warnings) std::cerr << "dissipforge: warning: " << w << '\n';
    cli::RunSummary summary = cli::run(config, threads);
    cli::emit_outputs(summary, config.output_path);

    if (!quiet) {
      std::cout << "scenario: " << cli::to_string(summary.scenario) << '\n'
                << "wall_time_s: " << summary.wall_time_s << '\n'
                << "metrics: " << summary.metrics.dump() << '\n';
      for (const auto& p : summary.artifact_paths) std::cout << "wrote " << p.string() << '\n';
    }
    if (!summary.contract_ok) {
      std::cerr << "dissipforge: numerical contract failed: " << summary.contract_message << '\n';
      return kNumerical;
    }
    return kOk;
  } catch (const cli::ConfigError& e) {
    std::cerr << "dissipforge: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const cli::IoError& e) {
    std::cerr << "dissipforge: I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const dissipforge::NumericalError& e) {
    std::cerr << "dissipforge: numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dissipforge: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "dissipforge: numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}
