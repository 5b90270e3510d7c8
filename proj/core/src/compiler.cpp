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

#include "dissipforge/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <sstream>

namespace dissipforge {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Letter A such that i A G = +pred(G) for a single-qubit G:
// X -> Z (A = Y), Z -> Y (A = X), Y -> X (A = Z).
Pauli positive_partner(Pauli g) {
  switch (g) {
    case Pauli::X: return Pauli::Y;
    case Pauli::Y: return Pauli::Z;
    case Pauli::Z: return Pauli::X;
    case Pauli::I: break;
  }
  throw std::logic_error("positive_partner: identity has no anticommuting partner");
}

// Pauli string on the full register ([ancilla] + system) as a dense matrix.
ComplexMatrix register_pauli(const PauliString& system, bool ancilla, Pauli ancilla_letter = Pauli::I) {
  if (!ancilla) return system.dense();
  std::vector<Pauli> letters;
  letters.reserve(system.size() + 1);
  letters.push_back(ancilla_letter);
  letters.insert(letters.end(), system.letters().begin(), system.letters().end());
  return PauliString(std::move(letters), system.phase_power()).dense();
}

ComplexMatrix ms_generator(const MSGate& g, std::size_t n, bool ancilla) {
  if (!ancilla) throw std::invalid_argument("MSGate requires an ancilla register");
  const auto x = [&](std::size_t q, Pauli letter) {
    if (q == 0) return register_pauli(PauliString::identity(n), true, letter);
    return register_pauli(PauliString::single(n, q, letter), true);
  };
  const ComplexMatrix sx = x(0, Pauli::X) + x(g.p, Pauli::X) + x(g.q, Pauli::X);
  const ComplexMatrix sy = x(0, Pauli::Y) + x(g.p, Pauli::Y) + x(g.q, Pauli::Y);
  const ComplexMatrix s = std::cos(g.nu) * sx + std::sin(g.nu) * sy;
  return matexp((-kI * g.mu / 4.0) * (s * s));
}

// exp(i a P) for an involutory P.
ComplexMatrix involution_exp(const ComplexMatrix& p, double a) {
  return std::cos(a) * identity(p.rows()) + (kI * std::sin(a)) * p;
}

std::string format_angle(double a) {
  struct Named {
    double value;
    const char* name;
  };
  static constexpr Named kNames[] = {{kQuarterPi, "+pi/4"},
                                     {-kQuarterPi, "-pi/4"},
                                     {2 * kQuarterPi, "+pi/2"},
                                     {-2 * kQuarterPi, "-pi/2"},
                                     {0.0, "0"}};
  for (const auto& n : kNames) {
    if (std::abs(a - n.value) < 1e-15) return n.name;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", a);
  return buf;
}

void check_qubit(std::size_t q, std::size_t n, const char* what) {
  if (q < 1 || q > n) {
    throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " outside 1.." +
                                std::to_string(n));
  }
}

}  // namespace

bool GateSequence::uses_ancilla() const {
  return std::any_of(gates.begin(), gates.end(), [](const Gate& g) {
    return std::holds_alternative<AncillaRotation>(g) || std::holds_alternative<MSGate>(g);
  });
}

std::size_t GateSequence::conjugation_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return std::holds_alternative<Conjugation>(g); }));
}

std::size_t GateSequence::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) {
    const auto* c = std::get_if<Conjugation>(&g);
    return c != nullptr && c->generator.weight() == 2;
  }));
}

std::vector<PauliString> GateSequence::conjugation_chain() const {
  std::vector<PauliString> chain;
  bool after_seed = false;
  for (const auto& g : gates) {
    if (std::holds_alternative<SeedCoupling>(g)) {
      after_seed = true;
    } else if (const auto* c = std::get_if<Conjugation>(&g); c != nullptr && after_seed) {
      chain.push_back(c->generator);
    }
  }
  return chain;
}

Adjacency Adjacency::path(std::size_t n) {
  Adjacency a{n, {}};
  for (std::size_t q = 1; q < n; ++q) a.edges.emplace(q, q + 1);
  return a;
}

Adjacency Adjacency::complete(std::size_t n) {
  Adjacency a{n, {}};
  for (std::size_t p = 1; p <= n; ++p) {
    for (std::size_t q = p + 1; q <= n; ++q) a.edges.emplace(p, q);
  }
  return a;
}

bool Adjacency::connected(std::size_t a, std::size_t b) const {
  return edges.contains(std::minmax(a, b));
}

PauliString conjugation_step(const PauliString& a, const PauliString& g) {
  if (a.size() != g.size()) throw std::invalid_argument("conjugation_step: qubit counts differ");
  if (a.weight() == 0 || a.weight() > 2) {
    throw std::invalid_argument("conjugation_step: conjugator " + a.to_string() + " must have weight 1 or 2");
  }
  if (a.commutes_with(g)) {
    throw std::invalid_argument("conjugation_step: " + a.to_string() + " commutes with " + g.to_string() +
                                ", conjugation would leave it unchanged");
  }
  const PauliString ag = pauli_mul(a, g);
  return ag.with_phase_power(ag.phase_power() + 1);
}

GateSequence sequence_from_chain(std::size_t num_qubits, std::size_t seed_qubit,
                                 std::span<const PauliString> chain, double theta) {
  check_qubit(seed_qubit, num_qubits, "sequence_from_chain");
  PauliString image = PauliString::single(num_qubits, seed_qubit, Pauli::Y);
  for (const auto& a : chain) image = conjugation_step(a, image);

  GateSequence seq;
  seq.num_qubits = num_qubits;
  seq.target = image;
  seq.theta = theta;
  seq.gates.reserve(2 * chain.size() + 1);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) seq.gates.emplace_back(Conjugation{*it, -kQuarterPi});
  seq.gates.emplace_back(SeedCoupling{seed_qubit, theta});
  for (const auto& a : chain) seq.gates.emplace_back(Conjugation{a, kQuarterPi});
  return seq;
}

GateSequence compile_coupling(const PauliString& w, double theta, const Adjacency& allowed) {
  const std::size_t n = w.size();
  if (allowed.n != n) {
    throw std::invalid_argument("compile_coupling: adjacency has " + std::to_string(allowed.n) +
                                " qubits, target has " + std::to_string(n));
  }
  if (w.phase_power() != 0) {
    throw std::invalid_argument("compile_coupling: target " + w.to_string() +
                                " carries a phase; absorb it into theta first");
  }
  const auto support = w.support();
  if (support.empty()) throw std::invalid_argument("compile_coupling: target has weight 0");

  // Breadth-first tree over the subgraph induced by the support.
  const std::size_t seed = support.front();
  std::vector<std::size_t> order{seed};
  std::map<std::size_t, std::size_t> parent;
  std::queue<std::size_t> frontier;
  frontier.push(seed);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const std::size_t v : support) {
      if (v == seed || parent.contains(v) || !allowed.connected(u, v)) continue;
      parent[v] = u;
      order.push_back(v);
      frontier.push(v);
    }
  }
  if (order.size() != support.size()) {
    throw std::invalid_argument("compile_coupling: support of " + w.indexed() +
                                " is not connected in the allowed interaction graph");
  }

  std::vector<PauliString> chain;
  PauliString current = PauliString::single(n, seed, Pauli::Y);
  const auto apply = [&](PauliString a) {
    current = conjugation_step(a, current);
    chain.push_back(std::move(a));
  };
  for (std::size_t i = 1; i < order.size(); ++i) {
    const std::size_t v = order[i];
    const std::size_t p = parent.at(v);
    std::vector<Pauli> letters(n, Pauli::I);
    letters[p - 1] = positive_partner(current.letter(p));
    letters[v - 1] = w.letter(v);
    apply(PauliString(std::move(letters)));
  }
  for (const std::size_t q : support) {
    while (current.letter(q) != w.letter(q)) apply(PauliString::single(n, q, positive_partner(current.letter(q))));
  }
  if (current != w) {
    throw std::logic_error("compile_coupling: chain produced " + current.to_string() + " instead of " +
                           w.to_string());
  }
  return sequence_from_chain(n, seed, chain, theta);
}

BathTestSpace BathTestSpace::lowering(Index d) {
  if (d < 2) throw std::invalid_argument("BathTestSpace: dimension must be at least 2");
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {a};
}

BathTestSpace BathTestSpace::random(Index d, std::mt19937_64& rng, bool hermitian) {
  if (d < 2) throw std::invalid_argument("BathTestSpace: dimension must be at least 2");
  std::normal_distribution<double> normal;
  ComplexMatrix b(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) b(i, j) = Complex(normal(rng), normal(rng));
  }
  if (hermitian) b = (0.5 * (b + b.adjoint())).eval();
  Eigen::JacobiSVD<ComplexMatrix> svd(b);
  b /= svd.singularValues()(0);
  return {b};
}

ComplexMatrix realize(const GateSequence& seq, const BathTestSpace& bath, double theta) {
  const std::size_t n = seq.num_qubits;
  const bool ancilla = seq.uses_ancilla();
  const Index reg_dim = Index{1} << (n + (ancilla ? 1 : 0));
  const Index d = bath.dim();
  const ComplexMatrix bath_id = identity(d);

  ComplexMatrix u = identity(reg_dim * d);
  for (const auto& gate : seq.gates) {
    const ComplexMatrix step = std::visit(
        Overloaded{
            [&](const Conjugation& c) -> ComplexMatrix {
              if (c.generator.size() != n || !c.generator.is_hermitian()) {
                throw std::invalid_argument("realize: conjugation generator must be a Hermitian string on " +
                                            std::to_string(n) + " qubits");
              }
              return kron(involution_exp(register_pauli(c.generator, ancilla), c.angle), bath_id);
            },
            [&](const SeedCoupling& s) -> ComplexMatrix {
              check_qubit(s.qubit, n, "realize");
              const ComplexMatrix y = register_pauli(PauliString::single(n, s.qubit, Pauli::Y), ancilla);
              return matexp((kI * theta) * kron(y, bath.op));
            },
            [&](const AncillaRotation& r) -> ComplexMatrix {
              const ComplexMatrix z = register_pauli(PauliString::identity(n), true, Pauli::Z);
              return kron(involution_exp(z, -r.angle), bath_id);
            },
            [&](const MSGate& g) -> ComplexMatrix {
              check_qubit(g.p, n, "realize");
              check_qubit(g.q, n, "realize");
              return kron(ms_generator(g, n, ancilla), bath_id);
            },
        },
        gate);
    u = step * u;
  }
  return u;
}

ComplexMatrix realize_system(const GateSequence& seq) {
  return realize(seq, BathTestSpace{ComplexMatrix::Zero(1, 1)}, seq.theta);
}

ComplexMatrix target_unitary(const PauliString& w, const BathTestSpace& bath, double theta) {
  return matexp((kI * theta) * kron(w.dense(), bath.op));
}

VerificationReport verify_sequence(const GateSequence& seq, const BathTestSpace& bath,
                                   std::span<const double> thetas, double tol) {
  VerificationReport report;
  report.passed = true;
  const bool ancilla = seq.uses_ancilla();
  const Index rest = (Index{1} << seq.num_qubits) * bath.dim();
  for (const double theta : thetas) {
    const ComplexMatrix u = realize(seq, bath, theta);
    const ComplexMatrix t = target_unitary(seq.target, bath, theta);
    double dev = 0.0;
    if (ancilla) {
      const double block = (u.topLeftCorner(rest, rest) - t).squaredNorm();
      const double leak = u.block(rest, 0, rest, rest).squaredNorm();
      dev = std::sqrt(block + leak);
    } else {
      dev = (u - t).norm();
    }
    report.thetas.push_back(theta);
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (!(dev <= tol)) report.passed = false;
  }
  return report;
}

GateSequence ms_decompose(std::size_t p, std::size_t q, double theta, std::size_t num_qubits) {
  if (p == q) throw std::invalid_argument("ms_decompose: qubits must be distinct");
  if (num_qubits == 0) num_qubits = std::max(p, q);
  check_qubit(p, num_qubits, "ms_decompose");
  check_qubit(q, num_qubits, "ms_decompose");
  std::vector<Pauli> letters(num_qubits, Pauli::I);
  letters[p - 1] = Pauli::X;
  letters[q - 1] = Pauli::X;

  GateSequence seq;
  seq.num_qubits = num_qubits;
  seq.target = PauliString(std::move(letters));
  seq.theta = theta;
  seq.gates = {MSGate{p, q, 2 * kQuarterPi, 0.0}, AncillaRotation{theta}, MSGate{p, q, -2 * kQuarterPi, 0.0}};
  return seq;
}

GateSequence lower_to_ms(const GateSequence& seq) {
  GateSequence out;
  out.num_qubits = seq.num_qubits;
  out.target = seq.target;
  out.theta = seq.theta;
  for (const auto& gate : seq.gates) {
    const auto* c = std::get_if<Conjugation>(&gate);
    if (c == nullptr || c->generator.weight() != 2) {
      out.gates.push_back(gate);
      continue;
    }
    const auto support = c->generator.support();
    // Local V_u with V_u X V_u^dagger = letter, emitted as a pi/4 conjugation.
    std::vector<Conjugation> into_x;
    std::vector<Conjugation> out_of_x;
    for (const std::size_t u : support) {
      switch (c->generator.letter(u)) {
        case Pauli::Y:
          out_of_x.push_back({PauliString::single(seq.num_qubits, u, Pauli::Z), -kQuarterPi});
          into_x.push_back({PauliString::single(seq.num_qubits, u, Pauli::Z), kQuarterPi});
          break;
        case Pauli::Z:
          out_of_x.push_back({PauliString::single(seq.num_qubits, u, Pauli::Y), kQuarterPi});
          into_x.push_back({PauliString::single(seq.num_qubits, u, Pauli::Y), -kQuarterPi});
          break;
        default:
          break;
      }
    }
    for (auto& g : into_x) out.gates.emplace_back(std::move(g));
    for (auto& g : ms_decompose(support[0], support[1], c->angle, seq.num_qubits).gates) {
      out.gates.push_back(std::move(g));
    }
    for (auto& g : out_of_x) out.gates.emplace_back(std::move(g));
  }
  return out;
}

namespace {

ComplexMatrix coupling_generator(const TrotterTerm& term, const BathTestSpace& bath) {
  const ComplexMatrix w = term.word.dense();
  return term.coupling * kron(w, bath.op.adjoint()) + std::conj(term.coupling) * kron(w.adjoint(), bath.op);
}

void check_terms(std::span<const TrotterTerm> terms, double dt) {
  if (terms.empty()) throw std::invalid_argument("trotter: no terms");
  if (!(dt > 0.0)) throw std::invalid_argument("trotter: dt must be positive");
  for (const auto& t : terms) {
    if (t.word.size() != terms.front().word.size()) throw std::invalid_argument("trotter: qubit counts differ");
  }
}

}  // namespace

ComplexMatrix trotter_step(std::span<const TrotterTerm> terms, double dt, const BathTestSpace& bath) {
  check_terms(terms, dt);
  ComplexMatrix u;
  for (const auto& term : terms) {
    const ComplexMatrix step = matexp((-kI * dt) * coupling_generator(term, bath));
    u = u.size() == 0 ? step : ComplexMatrix(step * u);
  }
  return u;
}

ComplexMatrix exact_step(std::span<const TrotterTerm> terms, double dt, const BathTestSpace& bath) {
  check_terms(terms, dt);
  ComplexMatrix h = coupling_generator(terms.front(), bath);
  for (std::size_t a = 1; a < terms.size(); ++a) h += coupling_generator(terms[a], bath);
  return matexp((-kI * dt) * h);
}

std::string render_circuit(const GateSequence& seq) {
  std::ostringstream out;
  out << "# exp(i*theta*" << seq.target.indexed() << "*B), theta = " << format_angle(seq.theta) << '\n';
  for (const auto& gate : seq.gates) {
    std::visit(Overloaded{
                   [&](const Conjugation& c) {
                     out << "T[" << format_angle(c.angle) << "] " << c.generator.indexed() << '\n';
                   },
                   [&](const SeedCoupling& s) {
                     out << "SEED exp(i*" << format_angle(s.theta) << "*Y" << s.qubit << "*B)\n";
                   },
                   [&](const AncillaRotation& r) {
                     out << "ANC exp(-i*" << format_angle(r.angle) << "*Z0)\n";
                   },
                   [&](const MSGate& g) {
                     out << "MS[mu=" << format_angle(g.mu) << ",nu=" << format_angle(g.nu) << "] 0," << g.p
                         << ',' << g.q << '\n';
                   },
               },
               gate);
  }
  return out.str();
}

}  // namespace dissipforge
