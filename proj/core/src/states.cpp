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

#include "dissipforge/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dissipforge {
namespace {

// In-place single-qubit gate on a state of n qubits; qubit is 1-based.
void apply_local(ComplexVector& psi, std::size_t n, std::size_t qubit, const ComplexMatrix& u) {
  const Index stride = Index{1} << (n - qubit);
  const Index dim = psi.size();
  for (Index base = 0; base < dim; base += 2 * stride) {
    for (Index off = 0; off < stride; ++off) {
      const Index i0 = base + off;
      const Index i1 = i0 + stride;
      const Complex a = psi(i0);
      const Complex b = psi(i1);
      psi(i0) = u(0, 0) * a + u(0, 1) * b;
      psi(i1) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

void search_local(const ComplexVector& current, const ComplexVector& target, std::size_t n,
                  std::size_t qubit, std::vector<std::size_t>& choice,
                  LocalEquivalence& best) {
  const auto& gates = local_gate_set();
  if (qubit > n) {
    const double overlap = std::abs(target.dot(current));
    if (overlap > best.overlap + 1e-13) {
      best.overlap = overlap;
      best.gates.clear();
      for (auto c : choice) best.gates.push_back(gates[c].name);
    }
    return;
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    ComplexVector next = current;
    apply_local(next, n, qubit, gates[g].matrix);
    choice[qubit - 1] = g;
    search_local(next, target, n, qubit + 1, choice, best);
  }
}

}  // namespace

PureState PureState::from_amplitudes(ComplexVector amps, double tol) {
  if (amps.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("PureState: amplitudes have norm " + std::to_string(norm) +
                                ", expected 1");
  }
  return PureState(std::move(amps));
}

PureState PureState::normalized(ComplexVector amps) {
  const double norm = amps.norm();
  if (amps.size() == 0 || norm == 0.0) throw std::invalid_argument("PureState: zero vector");
  return PureState(amps / norm);
}

PureState PureState::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  const ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double positivity_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  const double herm = hermiticity_error(m);
  if (herm > 1e-12) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (error " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const double lo = dissipforge::min_eigenvalue(m);
  if (lo < -positivity_tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw std::invalid_argument("DensityMatrix: dimension must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const { return dissipforge::min_eigenvalue(m_); }

void GraphSpec::validate() const {
  if (n == 0) throw std::invalid_argument("GraphSpec: n must be at least 1");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw std::invalid_argument("GraphSpec: edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") has a vertex outside 1.." + std::to_string(n));
    }
    if (a == b) throw std::invalid_argument("GraphSpec: self-loop on vertex " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second) {
      throw std::invalid_argument("GraphSpec: duplicate edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    }
  }
}

GraphSpec GraphSpec::path(std::size_t n) {
  GraphSpec g{n, {}};
  for (std::size_t v = 1; v < n; ++v) g.edges.emplace_back(v, v + 1);
  return g;
}

PureState graph_state(const GraphSpec& g) {
  g.validate();
  const std::size_t n = g.n;
  const Index dim = Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  ComplexVector v(dim);
  for (Index idx = 0; idx < dim; ++idx) {
    int sign = 1;
    for (auto [a, b] : g.edges) {
      const bool bit_a = (idx >> (n - a)) & 1;
      const bool bit_b = (idx >> (n - b)) & 1;
      if (bit_a && bit_b) sign = -sign;
    }
    v(idx) = amp * sign;
  }
  return PureState::from_amplitudes(std::move(v));
}

PureState cluster_formula(std::size_t n) {
  if (n < 1) throw std::invalid_argument("cluster_formula: n must be at least 1");
  const Index dim = Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  ComplexVector v(dim);
  for (Index idx = 0; idx < dim; ++idx) {
    // Choosing |0>_q pulls in Z_{q+1}, which gives -1 when qubit q+1 is |1>.
    int sign = 1;
    for (std::size_t q = 1; q < n; ++q) {
      const bool bit_q = (idx >> (n - q)) & 1;
      const bool bit_next = (idx >> (n - q - 1)) & 1;
      if (!bit_q && bit_next) sign = -sign;
    }
    v(idx) = amp * sign;
  }
  return PureState::from_amplitudes(std::move(v));
}

double fidelity(const ComplexMatrix& rho, const PureState& phi) {
  if (rho.rows() != phi.dim() || rho.cols() != phi.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch (" + std::to_string(rho.rows()) +
                                " vs " + std::to_string(phi.dim()) + ")");
  }
  const double f = phi.amplitudes().dot(rho * phi.amplitudes()).real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const PureState& phi) { return fidelity(rho.matrix(), phi); }

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

Complex expectation(const PureState& psi, const PauliString& p) {
  if ((Index{1} << p.size()) != psi.dim()) {
    throw std::invalid_argument("expectation: qubit count mismatch");
  }
  Complex acc{};
  const auto& a = psi.amplitudes();
  for (Index j = 0; j < a.size(); ++j) {
    const auto [k, c] = p.act_on_basis(static_cast<std::uint64_t>(j));
    acc += std::conj(a(static_cast<Index>(k))) * c * a(j);
  }
  return acc;
}

std::vector<PauliString> graph_stabilizers(const GraphSpec& g) {
  g.validate();
  std::vector<PauliString> out;
  for (std::size_t v = 1; v <= g.n; ++v) {
    std::vector<Pauli> letters(g.n, Pauli::I);
    letters[v - 1] = Pauli::X;
    for (auto [a, b] : g.edges) {
      if (a == v) letters[b - 1] = Pauli::Z;
      if (b == v) letters[a - 1] = Pauli::Z;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

const std::array<LocalGate, 8>& local_gate_set() {
  static const std::array<LocalGate, 8> kGates = [] {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix h(2, 2);
    h << r, r, r, -r;
    ComplexMatrix s = ComplexMatrix::Identity(2, 2);
    s(1, 1) = kI;
    const ComplexMatrix& x = pauli_matrix(Pauli::X);
    const ComplexMatrix& z = pauli_matrix(Pauli::Z);
    return std::array<LocalGate, 8>{LocalGate{"I", identity(2)}, LocalGate{"H", h},
                                    LocalGate{"Z", z},           LocalGate{"X", x},
                                    LocalGate{"S", s},           LocalGate{"HS", h * s},
                                    LocalGate{"SH", s * h},      LocalGate{"HZ", h * z}};
  }();
  return kGates;
}

LocalEquivalence find_local_equivalence(const PureState& from, const PureState& to) {
  if (from.dim() != to.dim()) throw std::invalid_argument("find_local_equivalence: dimension mismatch");
  const std::size_t n = qubit_count(from.dim());
  LocalEquivalence best;
  std::vector<std::size_t> choice(n, 0);
  search_local(from.amplitudes(), to.amplitudes(), n, 1, choice, best);
  return best;
}

PureState random_pure_state(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return PureState::normalized(std::move(v));
}

DensityMatrix random_density_matrix(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix::from_matrix(std::move(rho));
}

}  // namespace dissipforge
