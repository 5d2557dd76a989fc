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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqemit/densesim.hpp"

namespace vqemit {

enum class MeasurementBasis { ZZ, XX, YY };

const char* to_string(MeasurementBasis b) noexcept;

/// ZZ: nothing. XX: H on each qubit. YY: Sdg then H on each qubit.
std::vector<Gate> basis_rotation(MeasurementBasis b, std::span<const int> qubits);

/// Gates realizing exp(-i * angle * P). Without an ancilla the parity is
/// collected on the last support qubit by a CNOT ladder; with one, every
/// support qubit fans into the ancilla, which must start and end in |0>.
std::vector<Gate> pauli_exponential(const PauliString& p, double angle,
                                    std::optional<int> ancilla = std::nullopt);

/// Pauli operator with a phase i^phase.
struct PhasedPauli {
  int phase = 0;  // 0..3
  PauliString pauli;
};
PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b);

/// The [[4,2,2]] code on data qubits 0..3 (b1..b4), with the preparation
/// flag a1 on qubit 4 and the rotation ancilla a2 on qubit 5.
struct CodeSpec {
  static constexpr int kData = 4;
  static constexpr int kFlag = 4;
  static constexpr int kRotationAncilla = 5;
  static constexpr int kQubits = 6;

  PauliString stabilizer_z;  // Z4Z3Z2Z1
  PauliString stabilizer_x;  // X4X3X2X1
  PauliString x_l1, x_l2, z_l1, z_l2;

  static const CodeSpec& standard();

  /// Lowest-weight data-qubit representative of P_L1 (x) P_L2, letters in
  /// {I, X, Y, Z}; equal to the logical operator on the code space.
  PhasedPauli physical(char logical1, char logical2) const;
};

/// Noise-free output e^{-i theta Y1X2}|00> = cos(theta)|00> + sin(theta)|11>.
std::vector<Gate> ansatz_gates(double theta, int first, int second);

Circuit bare_ansatz(double theta, MeasurementBasis b);

struct EncodedOptions {
  // Extra gate placed on the prepared encoded state, before the basis change.
  std::optional<Gate> fault;
};

/// Six-qubit encoded ansatz measured on all qubits (key order a2 a1 b4 b3
/// b2 b1). Decoded with the post-selection in mitigation.hpp it reproduces
/// the bare distribution for the same basis.
Circuit encoded_ansatz(double theta, MeasurementBasis b, const EncodedOptions& opts = {});

/// GHZ-type preparation of |00>_L with a1 as flag.
std::vector<Gate> encoded_preparation();

enum class BGateForm { exact, decomposed };

const char* to_string(BGateForm f) noexcept;

/// B on (first, second). The decomposed form uses single-qubit gates and
/// two CNOTs and equals the exact matrix.
std::vector<Gate> b_gate(int first, int second, BGateForm form, bool noisy = true);

struct DuplicateOptions {
  BGateForm b_form = BGateForm::exact;
  bool ideal_b = false;      // exempt B gates from noise
  bool parity_fold = false;  // CNOT(q1->q2) in each copy before the B layer
};

/// Two copies on qubits {0,1} and {2,3}; B on pairs (0,2) and (1,3).
/// With parity_fold, Z on the second qubit of each copy carries the
/// copy's Z1Z2 parity, which lets two-qubit terms use the one-qubit
/// estimator.
Circuit duplicate_ansatz(double theta, MeasurementBasis b, const DuplicateOptions& opts = {});

/// 2^n circuits; circuit k flips every qubit whose bit in k is set.
std::vector<Circuit> calibration_circuits(int n);

}  // namespace vqemit
