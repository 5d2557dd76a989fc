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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vqemit {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 8;

// Bit order: qubit q is bit q of a basis index, so qubit 0 ("qubit 1" in
// the physics labelling) is the rightmost character of a bitstring.

enum class GateKind { X, Y, Z, H, S, Sdg, Rz, Ry, CNOT, SWAP, B };

const char* gate_name(GateKind kind) noexcept;
int gate_arity(GateKind kind) noexcept;

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> targets;
  double param = 0.0;
  // Cleared for gates that the noise layer must leave untouched.
  bool noisy = true;
};

namespace gates {
Gate x(int q);
Gate y(int q);
Gate z(int q);
Gate h(int q);
Gate s(int q);
Gate sdg(int q);
Gate rz(int q, double angle);
Gate ry(int q, double angle);
Gate cnot(int control, int target);
Gate swap(int a, int b);
Gate b(int first, int second);
}  // namespace gates

/// Matrix of a gate in its local basis. For multi-qubit gates the local
/// index is sum_j bit(targets[j]) << j, so CNOT(c, t) has the control as
/// the low bit.
Eigen::MatrixXcd gate_matrix(const Gate& g);

/// The two-mode beam-splitter unitary on a qubit pair, as printed:
/// rows/cols ordered 00, 01, 10, 11 with the first target as the low bit.
Eigen::Matrix4cd b_matrix();

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> ops;
  std::vector<int> measured;

  /// Throws invalid_gate / capacity errors on malformed content.
  void validate() const;
  Circuit& add(Gate g);
  Circuit& add(const std::vector<Gate>& gs);
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(int n_qubits, Eigen::MatrixXcd data);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  const Eigen::MatrixXcd& data() const noexcept { return rho_; }
  Eigen::MatrixXcd& mutable_data() noexcept { return rho_; }

  double trace() const;
  double purity() const;

  static DensityMatrix from_pure(int n_qubits, const Eigen::VectorXcd& psi);

 private:
  int n_ = 0;
  Eigen::MatrixXcd rho_;
};

/// Probabilities over outcomes of the measured qubits. Entry k has bit j
/// equal to the outcome of the j-th measured qubit.
using ProbabilityVector = std::vector<double>;

struct ShotHistogram {
  int n_bits = 0;
  std::vector<std::uint64_t> counts;  // dense, indexed by outcome
  std::uint64_t shots = 0;

  static ShotHistogram from_map(const std::map<std::string, std::uint64_t>& m);
  std::map<std::string, std::uint64_t> to_map() const;  // nonzero entries
  ProbabilityVector frequencies() const;
};

std::string to_bitstring(std::size_t index, int n_bits);
std::size_t from_bitstring(const std::string& bits);

/// Pauli word with one letter per qubit. letters[q] acts on qubit q; the
/// text form is written like a bitstring (qubit 0 rightmost).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string text);
  static PauliString on(int n_qubits, std::initializer_list<std::pair<int, char>> ops);

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  char at(int q) const { return letters_.at(static_cast<std::size_t>(q)); }
  bool is_identity() const noexcept;
  std::vector<int> support() const;
  std::string text() const;
  Eigen::MatrixXcd matrix() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::string letters_;  // letters_[q] for qubit q
};

DensityMatrix init_state(int n_qubits);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Gate& g);
void apply_unitary_in_place(DensityMatrix& rho, const Gate& g);

ProbabilityVector probabilities(const DensityMatrix& rho, std::span<const int> qubits);

/// Multinomial draw of `shots` outcomes from p. Deterministic in seed.
ShotHistogram sample_shots(const ProbabilityVector& p, std::uint64_t shots,
                           std::uint64_t seed);

double pauli_expectation(const DensityMatrix& rho, const PauliString& pauli);

/// Noise-free evolution of |0..0> through a circuit.
DensityMatrix simulate(const Circuit& c);

}  // namespace vqemit
