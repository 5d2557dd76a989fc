// Copyright 2026 The vqemit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqemit/densesim.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vqemit/error.hpp"
#include "vqemit/rng.hpp"

namespace vqemit {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorKind::capacity, "qubit count " + std::to_string(n) +
                                         " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

// Offsets of the 2^k local basis states inside the full index space.
std::vector<std::size_t> local_offsets(const std::vector<int>& targets) {
  const std::size_t k = targets.size();
  std::vector<std::size_t> off(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < off.size(); ++a)
    for (std::size_t j = 0; j < k; ++j)
      if ((a >> j) & 1U) off[a] |= std::size_t{1} << targets[j];
  return off;
}

std::vector<std::size_t> base_indices(std::size_t dim, const std::vector<int>& targets) {
  std::size_t mask = 0;
  for (int t : targets) mask |= std::size_t{1} << t;
  std::vector<std::size_t> out;
  out.reserve(dim >> targets.size());
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & mask) == 0) out.push_back(i);
  return out;
}

void check_gate(const Gate& g, int n_qubits) {
  if (static_cast<int>(g.targets.size()) != gate_arity(g.kind)) {
    throw Error(ErrorKind::invalid_gate, std::string("gate ") + gate_name(g.kind) + " expects " +
                                             std::to_string(gate_arity(g.kind)) + " target(s)");
  }
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    const int t = g.targets[i];
    if (t < 0 || t >= n_qubits) {
      throw Error(ErrorKind::invalid_gate, std::string("gate ") + gate_name(g.kind) +
                                               " target " + std::to_string(t) +
                                               " outside register of " +
                                               std::to_string(n_qubits));
    }
    for (std::size_t j = 0; j < i; ++j)
      if (g.targets[j] == t)
        throw Error(ErrorKind::invalid_gate,
                    std::string("gate ") + gate_name(g.kind) + " repeats target " +
                        std::to_string(t));
  }
}

Gate make(GateKind k, std::vector<int> t, double param = 0.0) {
  Gate g;
  g.kind = k;
  g.targets = std::move(t);
  g.param = param;
  return g;
}

}  // namespace

const char* gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::Rz: return "Rz";
    case GateKind::Ry: return "Ry";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::B: return "B";
  }
  return "?";
}

int gate_arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::B:
      return 2;
    default:
      return 1;
  }
}

namespace gates {
Gate x(int q) { return make(GateKind::X, {q}); }
Gate y(int q) { return make(GateKind::Y, {q}); }
Gate z(int q) { return make(GateKind::Z, {q}); }
Gate h(int q) { return make(GateKind::H, {q}); }
Gate s(int q) { return make(GateKind::S, {q}); }
Gate sdg(int q) { return make(GateKind::Sdg, {q}); }
Gate rz(int q, double angle) { return make(GateKind::Rz, {q}, angle); }
Gate ry(int q, double angle) { return make(GateKind::Ry, {q}, angle); }
Gate cnot(int control, int target) { return make(GateKind::CNOT, {control, target}); }
Gate swap(int a, int b) { return make(GateKind::SWAP, {a, b}); }
Gate b(int first, int second) { return make(GateKind::B, {first, second}); }
}  // namespace gates

Eigen::Matrix4cd b_matrix() {
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix4cd m;
  m << 1, 0, 0, 0,
       0, r, -r, 0,
       0, r, r, 0,
       0, 0, 0, 1;
  return m;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::MatrixXcd m;
  switch (g.kind) {
    case GateKind::X:
      m = Eigen::MatrixXcd::Zero(2, 2);
      m(0, 1) = m(1, 0) = 1.0;
      break;
    case GateKind::Y:
      m = Eigen::MatrixXcd::Zero(2, 2);
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case GateKind::Z:
      m = Eigen::MatrixXcd::Identity(2, 2);
      m(1, 1) = -1.0;
      break;
    case GateKind::H:
      m.resize(2, 2);
      m << r, r, r, -r;
      break;
    case GateKind::S:
      m = Eigen::MatrixXcd::Identity(2, 2);
      m(1, 1) = kI;
      break;
    case GateKind::Sdg:
      m = Eigen::MatrixXcd::Identity(2, 2);
      m(1, 1) = -kI;
      break;
    case GateKind::Rz:
      m = Eigen::MatrixXcd::Zero(2, 2);
      m(0, 0) = std::exp(-kI * (g.param / 2.0));
      m(1, 1) = std::exp(kI * (g.param / 2.0));
      break;
    case GateKind::Ry: {
      const double c = std::cos(g.param / 2.0), s = std::sin(g.param / 2.0);
      m.resize(2, 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::CNOT:
      // control = low bit; flips the high bit when the low bit is set
      m = Eigen::MatrixXcd::Zero(4, 4);
      m(0, 0) = m(2, 2) = 1.0;
      m(3, 1) = m(1, 3) = 1.0;
      break;
    case GateKind::SWAP:
      m = Eigen::MatrixXcd::Zero(4, 4);
      m(0, 0) = m(3, 3) = 1.0;
      m(1, 2) = m(2, 1) = 1.0;
      break;
    case GateKind::B:
      m = b_matrix();
      break;
  }
  return m;
}

void Circuit::validate() const {
  check_qubit_count(n_qubits);
  for (const Gate& g : ops) check_gate(g, n_qubits);
  for (std::size_t i = 0; i < measured.size(); ++i) {
    if (measured[i] < 0 || measured[i] >= n_qubits)
      throw Error(ErrorKind::invalid_gate,
                  "measured qubit " + std::to_string(measured[i]) + " outside register");
    for (std::size_t j = 0; j < i; ++j)
      if (measured[j] == measured[i])
        throw Error(ErrorKind::invalid_gate,
                    "measured qubit " + std::to_string(measured[i]) + " listed twice");
  }
}

Circuit& Circuit::add(Gate g) {
  ops.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::add(const std::vector<Gate>& gs) {
  ops.insert(ops.end(), gs.begin(), gs.end());
  return *this;
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd data) : n_(n_qubits), rho_(std::move(data)) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(dim());
  if (rho_.rows() != d || rho_.cols() != d)
    throw Error(ErrorKind::dimension, "density matrix shape does not match qubit count");
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho_.squaredNorm();
}

DensityMatrix DensityMatrix::from_pure(int n_qubits, const Eigen::VectorXcd& psi) {
  return DensityMatrix(n_qubits, psi * psi.adjoint());
}

std::string to_bitstring(std::size_t index, int n_bits) {
  std::string s(static_cast<std::size_t>(n_bits), '0');
  for (int j = 0; j < n_bits; ++j)
    if ((index >> j) & 1U) s[static_cast<std::size_t>(n_bits - 1 - j)] = '1';
  return s;
}

std::size_t from_bitstring(const std::string& bits) {
  if (bits.empty() || bits.size() > 16)
    throw Error(ErrorKind::parse, "bitstring '" + bits + "' has unsupported length");
  std::size_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorKind::parse, "bitstring '" + bits + "' is not binary");
    v = (v << 1) | static_cast<std::size_t>(c == '1');
  }
  return v;
}

ShotHistogram ShotHistogram::from_map(const std::map<std::string, std::uint64_t>& m) {
  if (m.empty()) throw Error(ErrorKind::parse, "histogram has no entries");
  ShotHistogram h;
  h.n_bits = static_cast<int>(m.begin()->first.size());
  if (h.n_bits > kMaxQubits) throw Error(ErrorKind::capacity, "histogram keys longer than 8 bits");
  h.counts.assign(std::size_t{1} << h.n_bits, 0);
  for (const auto& [k, v] : m) {
    if (static_cast<int>(k.size()) != h.n_bits)
      throw Error(ErrorKind::parse, "histogram keys have unequal length");
    h.counts[from_bitstring(k)] += v;
    h.shots += v;
  }
  return h;
}

std::map<std::string, std::uint64_t> ShotHistogram::to_map() const {
  std::map<std::string, std::uint64_t> m;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) m[to_bitstring(i, n_bits)] = counts[i];
  return m;
}

ProbabilityVector ShotHistogram::frequencies() const {
  if (shots == 0) throw Error(ErrorKind::parse, "histogram holds zero shots");
  ProbabilityVector p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  return p;
}

PauliString::PauliString(std::string text) {
  if (text.empty()) throw Error(ErrorKind::parse, "empty Pauli string");
  letters_.assign(text.rbegin(), text.rend());
  for (char& c : letters_) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw Error(ErrorKind::parse, "invalid Pauli letter in '" + text + "'");
  }
}

PauliString PauliString::on(int n_qubits, std::initializer_list<std::pair<int, char>> ops) {
  PauliString p;
  p.letters_.assign(static_cast<std::size_t>(n_qubits), 'I');
  for (auto [q, c] : ops) {
    if (q < 0 || q >= n_qubits) throw Error(ErrorKind::parse, "Pauli qubit out of range");
    p.letters_[static_cast<std::size_t>(q)] = c;
  }
  return PauliString(p.text());  // revalidates letters
}

bool PauliString::is_identity() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (int q = 0; q < size(); ++q)
    if (letters_[static_cast<std::size_t>(q)] != 'I') s.push_back(q);
  return s;
}

std::string PauliString::text() const { return {letters_.rbegin(), letters_.rend()}; }

Eigen::MatrixXcd PauliString::matrix() const {
  const std::size_t dim = std::size_t{1} << size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t j = k;
    cplx phase = 1.0;
    for (int q = 0; q < size(); ++q) {
      const bool bit = (k >> q) & 1U;
      switch (letters_[static_cast<std::size_t>(q)]) {
        case 'X': j ^= std::size_t{1} << q; break;
        case 'Y': j ^= std::size_t{1} << q; phase *= bit ? -kI : kI; break;
        case 'Z': if (bit) phase = -phase; break;
        default: break;
      }
    }
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = phase;
  }
  return m;
}

DensityMatrix init_state(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(0, 0) = 1.0;
  return DensityMatrix(n_qubits, std::move(m));
}

void apply_unitary_in_place(DensityMatrix& rho, const Gate& g) {
  check_gate(g, rho.n_qubits());
  const Eigen::MatrixXcd u = gate_matrix(g);
  const auto off = local_offsets(g.targets);
  const auto bases = base_indices(rho.dim(), g.targets);
  const std::size_t k = off.size();
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd& m = rho.mutable_data();
  cplx in[4], out[4];

  // rho <- U rho
  for (Eigen::Index c = 0; c < dim; ++c) {
    cplx* col = m.col(c).data();
    for (std::size_t b : bases) {
      for (std::size_t a = 0; a < k; ++a) in[a] = col[b + off[a]];
      for (std::size_t a = 0; a < k; ++a) {
        cplx acc = 0.0;
        for (std::size_t a2 = 0; a2 < k; ++a2)
          acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) * in[a2];
        out[a] = acc;
      }
      for (std::size_t a = 0; a < k; ++a) col[b + off[a]] = out[a];
    }
  }
  // rho <- rho U^dag
  for (std::size_t b : bases) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (std::size_t a = 0; a < k; ++a) in[a] = m(r, static_cast<Eigen::Index>(b + off[a]));
      for (std::size_t a = 0; a < k; ++a) {
        cplx acc = 0.0;
        for (std::size_t a2 = 0; a2 < k; ++a2)
          acc += in[a2] * std::conj(u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)));
        out[a] = acc;
      }
      for (std::size_t a = 0; a < k; ++a) m(r, static_cast<Eigen::Index>(b + off[a])) = out[a];
    }
  }
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Gate& g) {
  DensityMatrix out = rho;
  apply_unitary_in_place(out, g);
  return out;
}

ProbabilityVector probabilities(const DensityMatrix& rho, std::span<const int> qubits) {
  const int n = rho.n_qubits();
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n)
      throw Error(ErrorKind::invalid_gate, "measured qubit outside register");
    for (std::size_t j = 0; j < i; ++j)
      if (qubits[i] == qubits[j]) throw Error(ErrorKind::invalid_gate, "measured qubit listed twice");
  }
  ProbabilityVector p(std::size_t{1} << qubits.size(), 0.0);
  const auto& m = rho.data();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    std::size_t key = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      key |= ((i >> qubits[j]) & 1U) << j;
    p[key] += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  for (double& v : p) v = std::max(v, 0.0);  // round-off can leave -1e-17
  return p;
}

ShotHistogram sample_shots(const ProbabilityVector& p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorKind::parameter, "shot count must be positive");
  if (p.empty() || (p.size() & (p.size() - 1)) != 0)
    throw Error(ErrorKind::dimension, "probability vector length is not a power of two");
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw Error(ErrorKind::normalization, "negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw Error(ErrorKind::normalization, "probabilities sum to " + std::to_string(total));

  ShotHistogram h;
  h.n_bits = std::countr_zero(p.size());
  h.counts.assign(p.size(), 0);
  h.shots = shots;
  Rng rng(seed);
  // Conditional binomial chain: outcome i gets Bin(remaining, p_i / mass_left).
  std::uint64_t remaining = shots;
  double mass_left = total;
  for (std::size_t i = 0; i + 1 < p.size() && remaining > 0; ++i) {
    const double pi = std::max(p[i], 0.0);
    if (pi <= 0.0) {
      mass_left -= pi;
      continue;
    }
    const double q = std::clamp(pi / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(remaining, q);
    const std::uint64_t c = q >= 1.0 ? remaining : bin(rng);
    h.counts[i] = c;
    remaining -= c;
    mass_left -= pi;
  }
  h.counts.back() += remaining;
  return h;
}

double pauli_expectation(const DensityMatrix& rho, const PauliString& pauli) {
  if (pauli.size() != rho.n_qubits())
    throw Error(ErrorKind::dimension, "Pauli string length does not match register");
  std::size_t flip = 0;
  for (int q = 0; q < pauli.size(); ++q)
    if (pauli.at(q) == 'X' || pauli.at(q) == 'Y') flip |= std::size_t{1} << q;
  const auto& m = rho.data();
  cplx acc = 0.0;
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    cplx phase = 1.0;
    for (int q = 0; q < pauli.size(); ++q) {
      const bool bit = (k >> q) & 1U;
      const char c = pauli.at(q);
      if (c == 'Y') phase *= bit ? -kI : kI;
      else if (c == 'Z' && bit) phase = -phase;
    }
    // Tr(P rho) = sum_k <k^flip| P |k> rho(k, k^flip)
    acc += phase * m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ flip));
  }
  return acc.real();
}

DensityMatrix simulate(const Circuit& c) {
  c.validate();
  DensityMatrix rho = init_state(c.n_qubits);
  for (const Gate& g : c.ops) apply_unitary_in_place(rho, g);
  return rho;
}

}  // namespace vqemit
