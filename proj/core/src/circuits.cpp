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

#include "vqemit/circuits.hpp"

#include <algorithm>
#include <numbers>

#include "vqemit/error.hpp"

namespace vqemit {

namespace {

// Product of single-qubit Paulis a*b = i^phase * result.
std::pair<int, char> letter_product(char a, char b) {
  if (a == 'I') return {0, b};
  if (b == 'I') return {0, a};
  if (a == b) return {0, 'I'};
  const std::string cyc = "XYZ";
  const auto ia = cyc.find(a), ib = cyc.find(b);
  const char c = cyc[3 - ia - ib];
  return {(ib == (ia + 1) % 3) ? 1 : 3, c};
}

int weight(const PauliString& p) { return static_cast<int>(p.support().size()); }

PauliString pad_to(const PauliString& p, int n) {
  if (p.size() > n) throw Error(ErrorKind::dimension, "Pauli string longer than register");
  return PauliString(std::string(static_cast<std::size_t>(n - p.size()), 'I') + p.text());
}

}  // namespace

const char* to_string(MeasurementBasis b) noexcept {
  switch (b) {
    case MeasurementBasis::ZZ: return "ZZ";
    case MeasurementBasis::XX: return "XX";
    case MeasurementBasis::YY: return "YY";
  }
  return "?";
}

const char* to_string(BGateForm f) noexcept {
  return f == BGateForm::exact ? "exact" : "decomposed";
}

std::vector<Gate> basis_rotation(MeasurementBasis b, std::span<const int> qubits) {
  std::vector<Gate> out;
  for (int q : qubits) {
    if (b == MeasurementBasis::YY) out.push_back(gates::sdg(q));
    if (b != MeasurementBasis::ZZ) out.push_back(gates::h(q));
  }
  return out;
}

std::vector<Gate> pauli_exponential(const PauliString& p, double angle, std::optional<int> ancilla) {
  if (p.is_identity()) throw Error(ErrorKind::parameter, "exponential of the identity string");
  const std::vector<int> sup = p.support();
  if (ancilla && std::find(sup.begin(), sup.end(), *ancilla) != sup.end())
    throw Error(ErrorKind::invalid_gate, "rotation ancilla lies in the Pauli support");

  std::vector<Gate> into, ladder, out;
  for (int q : sup) {
    if (p.at(q) == 'Y') into.push_back(gates::sdg(q));
    if (p.at(q) != 'Z') into.push_back(gates::h(q));
  }
  int pivot = sup.back();
  if (ancilla) {
    pivot = *ancilla;
    for (int q : sup) ladder.push_back(gates::cnot(q, pivot));
  } else {
    for (std::size_t i = 0; i + 1 < sup.size(); ++i) ladder.push_back(gates::cnot(sup[i], sup[i + 1]));
  }
  out = into;
  out.insert(out.end(), ladder.begin(), ladder.end());
  out.push_back(gates::rz(pivot, 2.0 * angle));
  out.insert(out.end(), ladder.rbegin(), ladder.rend());
  for (auto it = sup.rbegin(); it != sup.rend(); ++it) {
    const int q = *it;
    if (p.at(q) != 'Z') out.push_back(gates::h(q));
    if (p.at(q) == 'Y') out.push_back(gates::s(q));
  }
  return out;
}

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.pauli.size() != b.pauli.size())
    throw Error(ErrorKind::dimension, "Pauli product of different lengths");
  int phase = a.phase + b.phase;
  std::string text(static_cast<std::size_t>(a.pauli.size()), 'I');
  for (int q = 0; q < a.pauli.size(); ++q) {
    auto [ph, c] = letter_product(a.pauli.at(q), b.pauli.at(q));
    phase += ph;
    text[static_cast<std::size_t>(a.pauli.size() - 1 - q)] = c;
  }
  return {phase % 4, PauliString(text)};
}

const CodeSpec& CodeSpec::standard() {
  static const CodeSpec spec = [] {
    CodeSpec s;
    s.stabilizer_z = PauliString("ZZZZ");
    s.stabilizer_x = PauliString("XXXX");
    s.x_l1 = PauliString("IIXX");  // X2X1
    s.x_l2 = PauliString("IXIX");  // X3X1
    s.z_l1 = PauliString("IZIZ");  // Z3Z1
    s.z_l2 = PauliString("IIZZ");  // Z2Z1
    return s;
  }();
  return spec;
}

PhasedPauli CodeSpec::physical(char logical1, char logical2) const {
  auto logical = [](char c, const PauliString& x, const PauliString& z) -> PhasedPauli {
    switch (c) {
      case 'I': return {0, PauliString("IIII")};
      case 'X': return {0, x};
      case 'Z': return {0, z};
      case 'Y': return multiply({1, x}, {0, z});  // Y = i X Z
      default: throw Error(ErrorKind::parse, std::string("invalid logical Pauli '") + c + "'");
    }
  };
  const PhasedPauli base = multiply(logical(logical1, x_l1, z_l1), logical(logical2, x_l2, z_l2));
  const PhasedPauli sx{0, stabilizer_x}, sz{0, stabilizer_z};
  PhasedPauli best = base;
  for (const PhasedPauli& cand : {multiply(base, sx), multiply(base, sz), multiply(multiply(base, sx), sz)}) {
    if (weight(cand.pauli) < weight(best.pauli)) best = cand;
  }
  return best;
}

std::vector<Gate> ansatz_gates(double theta, int first, int second) {
  return {gates::ry(first, 2.0 * theta), gates::cnot(first, second)};
}

Circuit bare_ansatz(double theta, MeasurementBasis b) {
  Circuit c;
  c.n_qubits = 2;
  c.add(ansatz_gates(theta, 0, 1));
  const int qs[] = {0, 1};
  c.add(basis_rotation(b, qs));
  c.measured = {0, 1};
  return c;
}

std::vector<Gate> encoded_preparation() {
  return {gates::h(0),       gates::cnot(0, 1), gates::cnot(1, 2),
          gates::cnot(2, 3), gates::cnot(0, CodeSpec::kFlag), gates::cnot(3, CodeSpec::kFlag)};
}

Circuit encoded_ansatz(double theta, MeasurementBasis b, const EncodedOptions& opts) {
  const CodeSpec& code = CodeSpec::standard();
  // Each basis folds its diagonal logical Clifford into the generator, so
  // the basis change itself is transversal H (or nothing).
  //   ZZ: S_L1^dag applied before Z readout is invisible -> X_L1 X_L2
  //   XX: the ansatz generator itself                   -> Y_L1 X_L2
  //   YY: (Sdg x Sdg) conjugation                         -> -X_L1 Y_L2
  PhasedPauli gen;
  double angle = theta;
  switch (b) {
    case MeasurementBasis::ZZ: gen = code.physical('X', 'X'); break;
    case MeasurementBasis::XX: gen = code.physical('Y', 'X'); break;
    case MeasurementBasis::YY:
      gen = code.physical('X', 'Y');
      angle = -theta;
      break;
  }
  if (gen.phase % 2 != 0) throw Error(ErrorKind::degenerate, "non-Hermitian logical generator");
  if (gen.phase == 2) angle = -angle;

  Circuit c;
  c.n_qubits = CodeSpec::kQubits;
  c.add(encoded_preparation());
  c.add(pauli_exponential(pad_to(gen.pauli, CodeSpec::kQubits), angle, CodeSpec::kRotationAncilla));
  if (opts.fault) c.add(*opts.fault);
  if (b != MeasurementBasis::ZZ)
    for (int q = 0; q < CodeSpec::kData; ++q) c.add(gates::h(q));
  c.measured = {0, 1, 2, 3, 4, 5};
  return c;
}

std::vector<Gate> b_gate(int first, int second, BGateForm form, bool noisy) {
  std::vector<Gate> out;
  if (form == BGateForm::exact) {
    out.push_back(gates::b(first, second));
  } else {
    const double a = -std::numbers::pi / 4.0;
    out = {gates::sdg(first),   gates::h(first),       gates::s(second),
           gates::cnot(first, second), gates::ry(first, a), gates::ry(second, a),
           gates::cnot(first, second), gates::h(first),  gates::s(first),
           gates::sdg(second)};
  }
  for (Gate& g : out) g.noisy = noisy;
  return out;
}

Circuit duplicate_ansatz(double theta, MeasurementBasis b, const DuplicateOptions& opts) {
  Circuit c;
  c.n_qubits = 4;
  for (int base : {0, 2}) {
    c.add(ansatz_gates(theta, base, base + 1));
    const int qs[] = {base, base + 1};
    c.add(basis_rotation(b, qs));
    if (opts.parity_fold) c.add(gates::cnot(base, base + 1));
  }
  c.add(b_gate(0, 2, opts.b_form, !opts.ideal_b));
  c.add(b_gate(1, 3, opts.b_form, !opts.ideal_b));
  c.measured = {0, 1, 2, 3};
  return c;
}

std::vector<Circuit> calibration_circuits(int n) {
  if (n < 1 || n > kMaxQubits)
    throw Error(ErrorKind::capacity, "calibration width " + std::to_string(n) + " outside [1, 8]");
  std::vector<Circuit> out;
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    Circuit c;
    c.n_qubits = n;
    for (int q = 0; q < n; ++q)
      if ((k >> q) & 1U) c.add(gates::x(q));
    for (int q = 0; q < n; ++q) c.measured.push_back(q);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace vqemit
