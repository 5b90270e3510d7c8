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

#include "dissipforge/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dissipforge {
namespace {

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json flat = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) flat.push_back(complex_to_json(m(i, j)));
  }
  return flat;
}

double snap_angle(double a) {
  for (const double named : {kQuarterPi, -kQuarterPi, 2 * kQuarterPi, -2 * kQuarterPi}) {
    if (std::abs(a - named) < 1e-14) return named;
  }
  return a;
}

std::vector<std::size_t> qubits_of(const Json& g) {
  return g.at("qubits").get<std::vector<std::size_t>>();
}

}  // namespace

double round_sig15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::strtod(fmt15(x).c_str(), nullptr);
}

Json complex_to_json(Complex c) { return Json::array({round_sig15(c.real()), round_sig15(c.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json graph_to_json(const GraphSpec& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"n", g.n}, {"edges", edges}};
}

GraphSpec graph_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph: expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "edges") throw std::invalid_argument("graph: unknown key '" + key + "'");
  }
  GraphSpec g;
  g.n = j.at("n").get<std::size_t>();
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph: edges must be [a, b] pairs");
      g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  g.validate();
  return g;
}

Json state_to_json(const PureState& psi) {
  Json out = Json::array();
  for (Index i = 0; i < psi.dim(); ++i) out.push_back(complex_to_json(psi[i]));
  return out;
}

Json dissipators_to_json(const DissipatorSet& set) {
  Json out = Json::array();
  for (const auto& d : set) out.push_back({{"gamma", round_sig15(d.gamma)}, {"matrix", matrix_to_json(d.op)}});
  return out;
}

DissipatorSet dissipators_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("dissipators: expected an array");
  DissipatorSet set;
  for (const auto& entry : j) {
    const auto& flat = entry.at("matrix");
    const auto dim = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (dim * dim != static_cast<Index>(flat.size()) || dim == 0) {
      throw std::invalid_argument("dissipators: matrix entry count is not a square");
    }
    ComplexMatrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index k = 0; k < dim; ++k) m(i, k) = complex_from_json(flat[static_cast<std::size_t>(i * dim + k)]);
    }
    set.add(entry.at("gamma").get<double>(), std::move(m));
  }
  return set;
}

Json sequence_to_json(const GateSequence& seq) {
  Json gates = Json::array();
  for (const auto& gate : seq.gates) {
    if (const auto* c = std::get_if<Conjugation>(&gate)) {
      gates.push_back({{"kind", "conjugation"},
                       {"qubits", c->generator.support()},
                       {"pauli_word", c->generator.word()},
                       {"angle", round_sig15(c->angle)}});
    } else if (const auto* s = std::get_if<SeedCoupling>(&gate)) {
      gates.push_back({{"kind", "seed"}, {"qubits", {s->qubit}}, {"pauli_word", "Y"}, {"angle", round_sig15(s->theta)}});
    } else if (const auto* r = std::get_if<AncillaRotation>(&gate)) {
      gates.push_back(
          {{"kind", "ancilla_rotation"}, {"qubits", {0}}, {"pauli_word", "Z"}, {"angle", round_sig15(r->angle)}});
    } else if (const auto* m = std::get_if<MSGate>(&gate)) {
      gates.push_back({{"kind", "ms"},
                       {"qubits", {0, m->p, m->q}},
                       {"pauli_word", ""},
                       {"angle", round_sig15(m->mu)},
                       {"nu", round_sig15(m->nu)}});
    }
  }
  return {{"num_qubits", seq.num_qubits},
          {"target", seq.target.to_string()},
          {"theta", round_sig15(seq.theta)},
          {"gates", gates}};
}

GateSequence sequence_from_json(const Json& j) {
  GateSequence seq;
  seq.num_qubits = j.at("num_qubits").get<std::size_t>();
  seq.target = PauliString::parse(j.at("target").get<std::string>());
  seq.theta = j.at("theta").get<double>();
  if (seq.target.size() != seq.num_qubits) throw std::invalid_argument("sequence: target length != num_qubits");
  for (const auto& g : j.at("gates")) {
    const auto kind = g.at("kind").get<std::string>();
    const double angle = g.at("angle").get<double>();
    const auto qubits = qubits_of(g);
    if (kind == "conjugation") {
      const auto word = PauliString::parse(g.at("pauli_word").get<std::string>());
      if (word.size() != seq.num_qubits || word.support() != qubits) {
        throw std::invalid_argument("sequence: conjugation word and qubits disagree");
      }
      seq.gates.emplace_back(Conjugation{word, snap_angle(angle)});
    } else if (kind == "seed") {
      if (qubits.size() != 1) throw std::invalid_argument("sequence: seed acts on one qubit");
      seq.gates.emplace_back(SeedCoupling{qubits[0], angle});
    } else if (kind == "ancilla_rotation") {
      seq.gates.emplace_back(AncillaRotation{angle});
    } else if (kind == "ms") {
      if (qubits.size() != 3 || qubits[0] != 0) throw std::invalid_argument("sequence: ms gate acts on [0, p, q]");
      seq.gates.emplace_back(MSGate{qubits[1], qubits[2], snap_angle(angle), g.value("nu", 0.0)});
    } else {
      throw std::invalid_argument("sequence: unknown gate kind '" + kind + "'");
    }
  }
  return seq;
}

Json report_to_json(const VerificationReport& report) {
  Json devs = Json::array();
  Json thetas = Json::array();
  for (std::size_t i = 0; i < report.deviations.size(); ++i) {
    devs.push_back(round_sig15(report.deviations[i]));
    thetas.push_back(round_sig15(report.thetas[i]));
  }
  return {{"passed", report.passed},
          {"max_deviation", round_sig15(report.max_deviation)},
          {"thetas", thetas},
          {"deviations", devs}};
}

Json ensemble_to_json(const EnsembleRecord& rec) {
  Json times = Json::array();
  Json mean = Json::array();
  Json se = Json::array();
  for (std::size_t s = 0; s < rec.times.size(); ++s) {
    times.push_back(round_sig15(rec.times[s]));
    mean.push_back(matrix_to_json(rec.rho_mean[s]));
    Json flat = Json::array();
    const auto& e = rec.rho_se[s];
    for (Index i = 0; i < e.rows(); ++i) {
      for (Index k = 0; k < e.cols(); ++k) flat.push_back(round_sig15(e(i, k)));
    }
    se.push_back(std::move(flat));
  }
  return {{"n_traj", rec.n_traj}, {"excluded", rec.excluded}, {"times", times}, {"rho_mean", mean}, {"rho_se", se}};
}

void write_evolution_csv(std::ostream& out, const EvolutionRecord& rec) {
  out << "t,fidelity,trace_error,purity,min_eig\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    out << fmt15(rec.times[i]) << ',' << (rec.fidelities.empty() ? std::string("nan") : fmt15(rec.fidelities[i]))
        << ',' << fmt15(rec.trace_errors[i]) << ',' << fmt15(rec.purities[i]) << ',' << fmt15(rec.min_eigs[i])
        << '\n';
  }
}

}  // namespace dissipforge
