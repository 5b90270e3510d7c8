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

#include "scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string_view>

namespace dissipforge::cli {
namespace {

constexpr std::size_t kMaxStateQubits = 6;
constexpr std::size_t kMaxSteadyQubits = 5;
constexpr std::size_t kMaxCompileQubits = 6;
constexpr Index kMaxBathDim = 8;
constexpr double kSampleTol = 1e-8;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("config." + field + ": " + message);
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where.empty() ? key : where + "." + key, "unknown key '" + key + "'");
    }
  }
}

/// The single location among `candidates` (field path, json node) that sets
/// a value; rejects the config when more than one does.
const Json* pick(std::initializer_list<std::pair<std::string, const Json*>> candidates, std::string* where) {
  const Json* found = nullptr;
  for (const auto& [path, node] : candidates) {
    if (node == nullptr) continue;
    if (found != nullptr) fail(path, "also set as config." + *where + "; give it once");
    found = node;
    *where = path;
  }
  return found;
}

const Json* member(const Json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

double as_positive(const Json& j, const std::string& field) {
  const double v = as_number(j, field);
  if (!(v > 0.0)) fail(field, "must be positive");
  return v;
}

std::size_t as_count(const Json& j, const std::string& field, std::size_t min_value = 1) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < static_cast<std::int64_t>(min_value)) {
    fail(field, "expected an integer >= " + std::to_string(min_value));
  }
  return j.get<std::size_t>();
}

Complex as_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return {as_number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {as_number(j[0], field + "[0]"), as_number(j[1], field + "[1]")};
  fail(field, "expected a number or an [re, im] pair");
}

ComplexVector as_amplitudes(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty amplitude list");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = as_complex(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

/// Unit-norm state from user amplitudes: silent within 1e-12, renormalized
/// with a warning within 1e-6, rejected beyond.
PureState normalized_amplitudes(const ComplexVector& v, const std::string& field, std::vector<std::string>& warnings) {
  const double norm = v.norm();
  const double err = std::abs(norm - 1.0);
  if (err <= 1e-12) return PureState::normalized(v);
  if (err <= 1e-6) {
    std::ostringstream msg;
    msg << "config." << field << ": norm " << norm << " renormalized to 1";
    warnings.push_back(msg.str());
    return PureState::normalized(v);
  }
  std::ostringstream msg;
  msg << "amplitudes have norm " << norm << " (must be 1 within 1e-6)";
  fail(field, msg.str());
}

std::size_t qubits_for_dim(std::size_t dim, const std::string& field) {
  if (dim < 2 || !is_power_of_two(static_cast<Index>(dim))) fail(field, "length must be a power of two >= 2");
  return qubit_count(static_cast<Index>(dim));
}

PureState bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(v);
}

Scenario parse_scenario(const Json& j) {
  if (!j.is_string()) fail("scenario", "expected a string");
  const auto s = j.get<std::string>();
  if (s == "synth") return Scenario::kSynth;
  if (s == "evolve") return Scenario::kEvolve;
  if (s == "steady") return Scenario::kSteady;
  if (s == "qsd") return Scenario::kQsd;
  if (s == "compile") return Scenario::kCompile;
  if (s == "graph-state") return Scenario::kGraphState;
  fail("scenario", "unknown scenario '" + s + "' (synth, evolve, steady, qsd, compile, graph-state)");
}

ModelKind parse_model(const Json& j) {
  if (!j.is_string()) fail("model", "expected a string");
  const auto s = j.get<std::string>();
  if (s == "auto") return ModelKind::kAuto;
  if (s == "bell-preset") return ModelKind::kBellPreset;
  if (s == "subspace") return ModelKind::kSubspace;
  if (s == "single") return ModelKind::kSingle;
  fail("model", "unknown model '" + s + "' (auto, bell-preset, subspace, single)");
}

/// Qubit count implied by a target preset, if any.
std::optional<std::size_t> preset_qubits(const std::string& name) {
  if (name == "bell") return 2;
  if (name == "plus") return 1;
  if (name.starts_with("cluster-") && name != "cluster-n") {
    const std::string_view digits = std::string_view(name).substr(8);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) fail("target", "bad preset '" + name + "'");
    return k;
  }
  return std::nullopt;
}

void parse_target(const Json& j, ScenarioConfig& c) {
  if (j.is_string()) {
    c.target_name = j.get<std::string>();
    const auto implied = preset_qubits(c.target_name);
    if (c.target_name != "cluster-n" && !implied) {
      fail("target", "unknown preset '" + c.target_name + "' (bell, plus, cluster-n, cluster-<k>)");
    }
    if (implied) {
      if (c.n_qubits == 0) c.n_qubits = *implied;
      if (c.n_qubits != *implied) {
        fail("target", "preset '" + c.target_name + "' needs n_qubits = " + std::to_string(*implied));
      }
    }
    if (c.n_qubits == 0) fail("n_qubits", "required by target 'cluster-n'");
    if (c.n_qubits > kMaxStateQubits) fail("n_qubits", "at most " + std::to_string(kMaxStateQubits) + " qubits");
    if (c.target_name == "bell") {
      c.target = bell_state();
    } else if (c.target_name == "plus") {
      c.target = graph_state(GraphSpec::path(1));
    } else {
      c.target = graph_state(GraphSpec::path(c.n_qubits));
    }
    return;
  }
  c.target_name = "amplitudes";
  const ComplexVector v = as_amplitudes(j, "target");
  const std::size_t n = qubits_for_dim(static_cast<std::size_t>(v.size()), "target");
  if (c.n_qubits == 0) c.n_qubits = n;
  if (n != c.n_qubits) fail("target", "has " + std::to_string(v.size()) + " amplitudes but n_qubits = " + std::to_string(c.n_qubits));
  if (c.n_qubits > kMaxStateQubits) fail("n_qubits", "at most " + std::to_string(kMaxStateQubits) + " qubits");
  c.target = normalized_amplitudes(v, "target", c.warnings);
}

void parse_initial(const Json* j, ScenarioConfig& c) {
  const bool qsd = c.scenario == Scenario::kQsd;
  if (j == nullptr) {
    c.initial_name = qsd ? "ground" : "maximally_mixed";
    return;
  }
  if (j->is_string()) {
    c.initial_name = j->get<std::string>();
    if (c.initial_name != "maximally_mixed" && c.initial_name != "ground" && c.initial_name != "random") {
      fail("initial", "unknown initial state '" + c.initial_name + "' (maximally_mixed, ground, random, or amplitudes)");
    }
    if (qsd && c.initial_name == "maximally_mixed") fail("initial", "qsd trajectories need a pure initial state");
    return;
  }
  c.initial_name = "amplitudes";
  const ComplexVector v = as_amplitudes(*j, "initial");
  if (v.size() != (Index{1} << c.n_qubits)) fail("initial", "expected " + std::to_string(Index{1} << c.n_qubits) + " amplitudes");
  c.initial_state = normalized_amplitudes(v, "initial", c.warnings);
}

void parse_gamma(const Json* j, ScenarioConfig& c) {
  if (j == nullptr) return;
  if (j->is_array()) {
    if (j->empty()) fail("gamma", "rate list is empty");
    c.gamma.clear();
    for (std::size_t i = 0; i < j->size(); ++i) c.gamma.push_back(as_positive((*j)[i], "gamma[" + std::to_string(i) + "]"));
  } else {
    c.gamma = {as_positive(*j, "gamma")};
  }
}

std::uint64_t as_seed(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail("seed", "expected a non-negative integer");
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// ---- run helpers ----------------------------------------------------------

Json num(double x) { return std::isfinite(x) ? Json(round_sig15(x)) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ModelKind resolve_model(const ScenarioConfig& c) {
  if (c.model != ModelKind::kAuto) return c.model;
  return c.target_name == "bell" ? ModelKind::kBellPreset : ModelKind::kSubspace;
}

std::string model_name(ModelKind k) {
  switch (k) {
    case ModelKind::kAuto: return "auto";
    case ModelKind::kBellPreset: return "bell-preset";
    case ModelKind::kSubspace: return "subspace";
    case ModelKind::kSingle: return "single";
  }
  return "?";
}

DissipatorSet build_dissipators(const ScenarioConfig& c) {
  const PureState& target = *c.target;
  const Index dim = target.dim();
  DissipatorSet base;
  switch (resolve_model(c)) {
    case ModelKind::kBellPreset:
      base = preset_lfor2();
      if (dim != 4 || !is_dark(base, target)) fail("model", "bell-preset only stabilizes the Bell target");
      break;
    case ModelKind::kSingle: {
      SynthesisSpec spec;
      spec.basis = identity(dim);
      spec.k = 1;
      spec.coefficients = ComplexMatrix::Ones(dim - 1, 1);
      base = synth_single(spec, frame_for_target(target));
      break;
    }
    case ModelKind::kSubspace:
    case ModelKind::kAuto:
      base = synth_subspace(SynthesisSpec::for_target(target));
      break;
  }
  if (c.gamma.size() == 1) return base.with_rates_scaled(c.gamma[0]);
  if (c.gamma.size() != base.size()) {
    fail("gamma", "expected 1 or " + std::to_string(base.size()) + " rates for model '" +
                      model_name(resolve_model(c)) + "', got " + std::to_string(c.gamma.size()));
  }
  DissipatorSet out;
  for (std::size_t j = 0; j < base.size(); ++j) out.add(c.gamma[j] * base[j].gamma, base[j].op);
  return out;
}

DensityMatrix initial_density(const ScenarioConfig& c, std::mt19937_64& rng) {
  const Index dim = Index{1} << c.n_qubits;
  if (c.initial_state) return DensityMatrix::from_pure(*c.initial_state);
  if (c.initial_name == "ground") return DensityMatrix::from_pure(PureState::basis(dim, 0));
  if (c.initial_name == "random") return random_density_matrix(dim, rng);
  return DensityMatrix::maximally_mixed(dim);
}

PureState initial_pure(const ScenarioConfig& c, std::mt19937_64& rng) {
  const Index dim = Index{1} << c.n_qubits;
  if (c.initial_state) return *c.initial_state;
  if (c.initial_name == "random") return random_pure_state(dim, rng);
  return PureState::basis(dim, 0);
}

double spectral_norm(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

/// Checks every sample against the 1e-8 trace and positivity bounds.
void check_samples(const EvolutionRecord& rec, RunSummary& s) {
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (rec.trace_errors[i] > kSampleTol || rec.min_eigs[i] < -kSampleTol) {
      std::ostringstream msg;
      msg << "sample at t = " << rec.times[i] << " has trace error " << rec.trace_errors[i] << " and min eigenvalue "
          << rec.min_eigs[i] << " (bounds 1e-8)";
      s.contract_ok = false;
      s.contract_message = msg.str();
      return;
    }
  }
}

Json sample_metrics(const EvolutionRecord& rec) {
  double worst_trace = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    worst_trace = std::max(worst_trace, rec.trace_errors[i]);
    lowest = std::min(lowest, rec.min_eigs[i]);
  }
  return {{"samples", rec.times.size()}, {"max_trace_error", num(worst_trace)}, {"min_eigenvalue", num(lowest)}};
}

std::string csv(const EvolutionRecord& rec) {
  std::ostringstream out;
  write_evolution_csv(out, rec);
  return out.str();
}

void run_synth(const ScenarioConfig& c, RunSummary& s) {
  const DissipatorSet set = build_dissipators(c);
  double residual = 0.0;
  for (const auto& d : set) residual = std::max(residual, (d.op * c.target->amplitudes()).norm());
  s.metrics = {{"model", model_name(resolve_model(c))},
               {"num_operators", set.size()},
               {"dim", set.dim()},
               {"target_is_dark", is_dark(set, *c.target)},
               {"max_dark_residual", num(residual)}};
  s.artifacts.push_back({"dissipators.json", dump(dissipators_to_json(set))});
}

void run_evolve(const ScenarioConfig& c, RunSummary& s) {
  std::mt19937_64 rng(c.seed);
  const LindbladModel model(build_dissipators(c));
  const DensityMatrix rho0 = initial_density(c, rng);
  const IntegrationOptions opts{c.t_max, c.dt, c.sample_stride};
  const EvolutionRecord rec = integrate(model, rho0, opts, c.target);
  double reach = kNeverReached;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (rec.fidelities[i] >= 0.99) {
      reach = rec.times[i];
      break;
    }
  }
  s.metrics = sample_metrics(rec);
  s.metrics["model"] = model_name(resolve_model(c));
  s.metrics["dt"] = num(c.dt);
  s.metrics["final_fidelity"] = num(rec.fidelities.back());
  s.metrics["final_purity"] = num(rec.purities.back());
  s.metrics["time_to_fidelity_0.99"] = num(reach);
  s.artifacts.push_back({"evolution.csv", csv(rec)});
  check_samples(rec, s);
}

void run_steady(const ScenarioConfig& c, RunSummary& s) {
  if (c.n_qubits > kMaxSteadyQubits) fail("n_qubits", "steady supports at most " + std::to_string(kMaxSteadyQubits) + " qubits");
  const LindbladModel model(build_dissipators(c));
  const SteadyStateResult res = steady_states(model);
  const ComplexMatrix& rho = res.representative.matrix();
  Json flat = Json::array();
  for (Index i = 0; i < rho.rows(); ++i) {
    for (Index k = 0; k < rho.cols(); ++k) flat.push_back(complex_to_json(rho(i, k)));
  }
  const double fid = fidelity(res.representative, *c.target);
  const double pur = purity(res.representative);
  s.metrics = {{"model", model_name(resolve_model(c))},
               {"null_space_dim", res.dimension},
               {"fidelity", num(fid)},
               {"purity", num(pur)}};
  s.artifacts.push_back({"steady.json", dump({{"null_space_dim", res.dimension},
                                              {"fidelity", num(fid)},
                                              {"purity", num(pur)},
                                              {"min_eigenvalue", num(res.representative.min_eigenvalue())},
                                              {"representative", flat}})});
}

void run_qsd(const ScenarioConfig& c, RunSummary& s, unsigned threads) {
  if (c.gamma.size() != 1) fail("gamma", "qsd uses one combined operator and needs a single rate");
  const double gamma = c.gamma[0];
  ScenarioConfig unit = c;
  unit.gamma = {1.0};
  const DissipatorSet base = build_dissipators(unit);
  std::vector<Complex> coeffs = c.coefficients;
  if (coeffs.empty()) coeffs.assign(base.size(), Complex{1.0, 0.0});
  if (coeffs.size() != base.size()) {
    fail("qsd.coefficients", "expected " + std::to_string(base.size()) + " coefficients, got " + std::to_string(coeffs.size()));
  }
  const DissipatorSet combined = combine(base, coeffs, gamma);
  const ComplexMatrix& l = combined[0].op;

  std::mt19937_64 rng(c.seed);
  const PureState psi0 = initial_pure(c, rng);

  TrajectoryConfig cfg;
  cfg.n_traj = c.n_traj;
  cfg.dt = c.dt;
  cfg.t_max = c.t_max;
  cfg.master_seed = c.seed;
  cfg.gamma = gamma;
  cfg.sample_stride = c.sample_stride;
  cfg.threads = threads;
  const EnsembleRecord ens = ensemble_average(l, cfg, psi0);

  // Lindblad reference on the same grid; the tolerance adds the frozen
  // Euler bias allowance 0.1 * gamma * ||L||^2 * dt to 5 standard errors.
  const double horizon = static_cast<double>(cfg.steps()) * cfg.step();
  const EvolutionRecord ref = integrate(LindbladModel(combined), DensityMatrix::from_pure(psi0),
                                        IntegrationOptions{horizon, cfg.step(), c.sample_stride}, c.target);
  const double kappa = gamma * std::pow(spectral_norm(l), 2);
  const double allowance = 0.1 * kappa * cfg.step();
  std::size_t pairs = 0;
  std::size_t within = 0;
  double worst = 0.0;
  for (std::size_t a = 0, b = 0; a < ens.times.size() && b < ref.times.size();) {
    if (std::abs(ens.times[a] - ref.times[b]) > 1e-9 * std::max(1.0, horizon)) {
      (ens.times[a] < ref.times[b]) ? ++a : ++b;
      continue;
    }
    const ComplexMatrix diff = ens.rho_mean[a] - ref.states[b].matrix();
    for (Index i = 0; i < diff.rows(); ++i) {
      for (Index k = 0; k < diff.cols(); ++k) {
        const double d = std::abs(diff(i, k));
        worst = std::max(worst, d);
        ++pairs;
        if (d <= 5.0 * ens.rho_se[a](i, k) + allowance) ++within;
      }
    }
    ++a;
    ++b;
  }
  s.metrics = {{"model", model_name(resolve_model(c))},
               {"n_traj", ens.n_traj},
               {"excluded", ens.excluded},
               {"dt", num(cfg.step())},
               {"steps", cfg.steps()},
               {"final_norm_mean", num(ens.norm_mean.back())},
               {"final_norm_se", num(ens.norm_se.back())},
               {"final_fidelity_lindblad", num(ref.fidelities.back())},
               {"max_abs_deviation_vs_lindblad", num(worst)},
               {"bias_allowance", num(allowance)},
               {"fraction_within_tolerance", num(pairs ? static_cast<double>(within) / static_cast<double>(pairs) : 1.0)}};
  s.artifacts.push_back({"ensemble.json", dump(ensemble_to_json(ens))});
  s.artifacts.push_back({"lindblad_reference.csv", csv(ref)});
}

void run_compile(const ScenarioConfig& c, RunSummary& s) {
  const PauliString& w = *c.pauli_word;
  Adjacency allowed = Adjacency::path(w.size());
  if (c.graph) {
    allowed = Adjacency{c.graph->n, {}};
    for (auto [a, b] : c.graph->edges) allowed.edges.insert(std::minmax(a, b));
  }
  GateSequence seq = compile_coupling(w, c.theta, allowed);
  if (c.lower_ms) seq = lower_to_ms(seq);

  std::mt19937_64 rng(c.seed);
  const BathTestSpace bath = BathTestSpace::random(c.bath_dim, rng);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> thetas{c.theta};
  for (int i = 0; i < 4; ++i) thetas.push_back(angle(rng));
  const VerificationReport report = verify_sequence(seq, bath, thetas);

  s.metrics = {{"pauli_word", w.word()},
               {"gate_count", seq.gates.size()},
               {"conjugation_count", seq.conjugation_count()},
               {"chain_length", seq.conjugation_chain().size()},
               {"two_qubit_count", seq.two_qubit_count()},
               {"uses_ancilla", seq.uses_ancilla()},
               {"bath_dim", c.bath_dim},
               {"verified", report.passed},
               {"max_verification_deviation", num(report.max_deviation)}};
  s.artifacts.push_back({"sequence.json", dump(sequence_to_json(seq))});
  s.artifacts.push_back({"circuit.txt", render_circuit(seq)});
  s.artifacts.push_back({"verification.json", dump(report_to_json(report))});
  if (!report.passed) {
    std::ostringstream msg;
    msg << "sequence verification failed: max deviation " << report.max_deviation << " > 1e-10";
    s.contract_ok = false;
    s.contract_message = msg.str();
  }
}

void run_graph_state(const ScenarioConfig& c, RunSummary& s) {
  const GraphSpec g = c.graph ? *c.graph : GraphSpec::path(c.n_qubits);
  const PureState psi = graph_state(g);
  Json stabilizers = Json::array();
  double lowest = 1.0;
  for (const auto& p : graph_stabilizers(g)) {
    const double e = expectation(psi, p).real();
    lowest = std::min(lowest, e);
    stabilizers.push_back({{"operator", p.to_string()}, {"expectation", num(e)}});
  }
  s.metrics = {{"n", g.n}, {"num_edges", g.edges.size()}, {"min_stabilizer_expectation", num(lowest)}};
  if (g.n <= 4 && c.target) {
    const auto eq = find_local_equivalence(psi, *c.target);
    s.metrics["target_local_overlap"] = num(eq.overlap);
    s.metrics["target_local_gates"] = eq.gates;
  }
  s.artifacts.push_back(
      {"state.json", dump({{"graph", graph_to_json(g)}, {"amplitudes", state_to_json(psi)}, {"stabilizers", stabilizers}})});
  if (lowest < 1.0 - 1e-10) {
    s.contract_ok = false;
    s.contract_message = "graph state is not stabilized by its generators";
  }
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kSynth: return "synth";
    case Scenario::kEvolve: return "evolve";
    case Scenario::kSteady: return "steady";
    case Scenario::kQsd: return "qsd";
    case Scenario::kCompile: return "compile";
    case Scenario::kGraphState: return "graph-state";
  }
  return "?";
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return parse_config_json(j);
}

ScenarioConfig parse_config_json(const Json& j) {
  check_keys(j, "",
             {"scenario", "n_qubits", "graph", "target", "model", "gamma", "initial", "integrator", "t_max", "dt",
              "sample_stride", "qsd", "n_traj", "compile", "pauli_word", "theta", "bath_dim", "lower_to_ms", "seed",
              "output_path"});
  ScenarioConfig c;
  if (!j.contains("scenario")) fail("scenario", "required");
  c.scenario = parse_scenario(j["scenario"]);
  const Scenario sc = c.scenario;
  const bool needs_target =
      sc == Scenario::kSynth || sc == Scenario::kEvolve || sc == Scenario::kSteady || sc == Scenario::kQsd;

  const Json* integrator = member(j, "integrator");
  const Json* qsd = member(j, "qsd");
  const Json* compile = member(j, "compile");
  if (integrator) check_keys(*integrator, "integrator", {"t_max", "dt", "sample_stride"});
  if (qsd) check_keys(*qsd, "qsd", {"n_traj", "t_max", "dt", "sample_stride", "coefficients"});
  if (compile) check_keys(*compile, "compile", {"pauli_word", "theta", "bath_dim", "lower_to_ms"});
  if (qsd && sc != Scenario::kQsd) fail("qsd", "only valid for scenario 'qsd'");
  if (compile && sc != Scenario::kCompile) fail("compile", "only valid for scenario 'compile'");

  if (const Json* n = member(j, "n_qubits")) c.n_qubits = as_count(*n, "n_qubits");
  if (const Json* g = member(j, "graph")) {
    try {
      c.graph = graph_from_json(*g);
    } catch (const std::exception& e) {
      fail("graph", e.what());
    }
    if (c.n_qubits == 0) c.n_qubits = c.graph->n;
    if (c.graph->n != c.n_qubits) fail("graph.n", "disagrees with n_qubits = " + std::to_string(c.n_qubits));
  }
  if (const Json* t = member(j, "target")) {
    parse_target(*t, c);
  } else if (needs_target) {
    fail("target", "required for scenario '" + to_string(sc) + "'");
  }
  if (const Json* m = member(j, "model")) {
    if (!needs_target) fail("model", "only valid for state-preparation scenarios");
    c.model = parse_model(*m);
  }
  parse_gamma(member(j, "gamma"), c);
  if (needs_target) parse_initial(member(j, "initial"), c);
  else if (member(j, "initial")) fail("initial", "not used by scenario '" + to_string(sc) + "'");
  if (const Json* seed = member(j, "seed")) c.seed = as_seed(*seed);
  if (const Json* out = member(j, "output_path")) {
    if (!out->is_string() || out->get<std::string>().empty()) fail("output_path", "expected a non-empty string");
    c.output_path = out->get<std::string>();
  }

  const auto nested = [](const Json* section, const char* key) { return section ? member(*section, key) : nullptr; };
  std::string where;
  const Json* t_max = pick({{"t_max", member(j, "t_max")},
                            {"integrator.t_max", nested(integrator, "t_max")},
                            {"qsd.t_max", nested(qsd, "t_max")}},
                           &where);
  if (t_max) c.t_max = as_positive(*t_max, where);
  const Json* dt = pick({{"dt", member(j, "dt")}, {"integrator.dt", nested(integrator, "dt")}, {"qsd.dt", nested(qsd, "dt")}},
                        &where);
  const double rate = max_of(c.gamma);
  c.dt = dt ? as_positive(*dt, where) : (sc == Scenario::kQsd ? 1e-3 : 0.01) / rate;
  const Json* stride = pick({{"sample_stride", member(j, "sample_stride")},
                             {"integrator.sample_stride", nested(integrator, "sample_stride")},
                             {"qsd.sample_stride", nested(qsd, "sample_stride")}},
                            &where);
  if (stride) c.sample_stride = as_count(*stride, where);
  if (const Json* n = pick({{"n_traj", member(j, "n_traj")}, {"qsd.n_traj", nested(qsd, "n_traj")}}, &where)) {
    c.n_traj = as_count(*n, where);
  }
  if (const Json* co = nested(qsd, "coefficients")) {
    if (!co->is_array() || co->empty()) fail("qsd.coefficients", "expected a non-empty list");
    for (std::size_t i = 0; i < co->size(); ++i) {
      const Complex a = as_complex((*co)[i], "qsd.coefficients[" + std::to_string(i) + "]");
      if (a == Complex{0.0, 0.0}) fail("qsd.coefficients[" + std::to_string(i) + "]", "must be nonzero");
      c.coefficients.push_back(a);
    }
  }
  if (const Json* w = pick({{"pauli_word", member(j, "pauli_word")}, {"compile.pauli_word", nested(compile, "pauli_word")}}, &where)) {
    if (!w->is_string()) fail(where, "expected a string");
    try {
      c.pauli_word = PauliString::parse(w->get<std::string>());
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
  }
  if (const Json* th = pick({{"theta", member(j, "theta")}, {"compile.theta", nested(compile, "theta")}}, &where)) {
    c.theta = as_number(*th, where);
  } else if (sc == Scenario::kCompile) {
    fail("theta", "required for scenario 'compile'");
  }
  if (const Json* bd = pick({{"bath_dim", member(j, "bath_dim")}, {"compile.bath_dim", nested(compile, "bath_dim")}}, &where)) {
    c.bath_dim = static_cast<Index>(as_count(*bd, where, 2));
    if (c.bath_dim > kMaxBathDim) fail(where, "at most " + std::to_string(kMaxBathDim));
  }
  if (const Json* ms = pick({{"lower_to_ms", member(j, "lower_to_ms")}, {"compile.lower_to_ms", nested(compile, "lower_to_ms")}}, &where)) {
    if (!ms->is_boolean()) fail(where, "expected true or false");
    c.lower_ms = ms->get<bool>();
  }

  // Scenario-specific requirements.
  switch (sc) {
    case Scenario::kEvolve:
      if (!t_max) fail("t_max", "required for scenario 'evolve'");
      break;
    case Scenario::kQsd:
      if (!t_max) fail("t_max", "required for scenario 'qsd'");
      if (c.n_traj == 0) fail("n_traj", "required for scenario 'qsd'");
      if (c.gamma.size() != 1) fail("gamma", "qsd needs a single rate");
      break;
    case Scenario::kCompile:
      if (!c.pauli_word) fail("pauli_word", "required for scenario 'compile'");
      if (c.pauli_word->phase_power() != 0) fail("pauli_word", "sign or phase prefixes belong in theta");
      if (c.pauli_word->size() > kMaxCompileQubits) fail("pauli_word", "at most " + std::to_string(kMaxCompileQubits) + " qubits");
      if (c.n_qubits == 0) c.n_qubits = c.pauli_word->size();
      if (c.n_qubits != c.pauli_word->size()) fail("pauli_word", "length disagrees with n_qubits");
      break;
    case Scenario::kGraphState:
      if (c.n_qubits == 0) fail("n_qubits", "required for scenario 'graph-state' without a graph");
      if (c.n_qubits > kMaxStateQubits) fail("n_qubits", "at most " + std::to_string(kMaxStateQubits) + " qubits");
      break;
    default:
      break;
  }
  if (sc != Scenario::kEvolve && sc != Scenario::kQsd) {
    if (t_max || dt || stride) fail("t_max", "time-integration settings are not used by scenario '" + to_string(sc) + "'");
  } else if (c.t_max < c.dt) {
    fail("t_max", "must be at least dt");
  }
  if (sc != Scenario::kQsd && c.n_traj != 0) fail("n_traj", "only valid for scenario 'qsd'");
  if (sc != Scenario::kCompile && (c.pauli_word || c.lower_ms)) fail("pauli_word", "only valid for scenario 'compile'");
  return c;
}

RunSummary run(const ScenarioConfig& config, unsigned threads) {
  RunSummary s;
  s.scenario = config.scenario;
  s.warnings = config.warnings;
  const auto start = std::chrono::steady_clock::now();
  const std::string ctx = to_string(config.scenario) + ": ";
  try {
    switch (config.scenario) {
      case Scenario::kSynth: run_synth(config, s); break;
      case Scenario::kEvolve: run_evolve(config, s); break;
      case Scenario::kSteady: run_steady(config, s); break;
      case Scenario::kQsd: run_qsd(config, s, threads); break;
      case Scenario::kCompile: run_compile(config, s); break;
      case Scenario::kGraphState: run_graph_state(config, s); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + e.what());
  }
  s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

void emit_outputs(RunSummary& summary, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw IoError("cannot write '" + path.string() + "'");
  };
  summary.artifact_paths.clear();
  Json files = Json::array();
  for (const auto& a : summary.artifacts) {
    const auto path = dir / a.name;
    write(path, a.content);
    summary.artifact_paths.push_back(path);
    files.push_back(a.name);
  }
  Json doc = {{"scenario", to_string(summary.scenario)},
              {"contract_ok", summary.contract_ok},
              {"metrics", summary.metrics},
              {"artifacts", files},
              {"warnings", summary.warnings}};
  if (!summary.contract_ok) doc["contract_failure"] = summary.contract_message;
  const auto path = dir / "summary.json";
  write(path, dump(doc));
  summary.artifact_paths.push_back(path);
}

unsigned threads_from_env() {
  const char* raw = std::getenv("DISSIPFORGE_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string_view text(raw);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw ConfigError("DISSIPFORGE_THREADS: expected a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace dissipforge::cli
