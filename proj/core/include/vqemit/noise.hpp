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

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "vqemit/densesim.hpp"

namespace vqemit {

struct ReadoutError {
  double p01 = 0.0;  // Pr(read 1 | true 0)
  double p10 = 0.0;  // Pr(read 0 | true 1)
};

struct NoiseModel {
  double p1 = 0.0;  // single-qubit depolarizing rate
  double p2 = 0.0;  // two-qubit depolarizing rate
  ReadoutError readout;
  // Optional per-qubit overrides; qubit q uses per_qubit[q] when present.
  std::vector<ReadoutError> per_qubit;

  static NoiseModel depolarizing(double rate) { return {rate, rate, {}, {}}; }
  static NoiseModel readout_only(double flip) { return {0.0, 0.0, {flip, flip}, {}}; }

  ReadoutError readout_for(int qubit) const;
  bool has_readout_error() const;
  void validate() const;
};

struct ExecutionMode {
  enum class Kind { exact, shots };
  Kind kind = Kind::exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static ExecutionMode exact() { return {}; }
  static ExecutionMode sampled(std::uint64_t shots, std::uint64_t seed) {
    return {Kind::shots, shots, seed};
  }
};

/// Replaces the marginal of `targets` by the maximally mixed state with
/// weight p: rho -> (1-p) rho + p (I/2^k (x) Tr_targets rho).
DensityMatrix depolarize(const DensityMatrix& rho, std::span<const int> targets, double p);
void depolarize_in_place(DensityMatrix& rho, std::span<const int> targets, double p);

/// p' = C p with C the tensor product of per-qubit confusion matrices.
/// Bit j of an outcome belongs to measured[j]; an empty list means bit j is
/// qubit j.
ProbabilityVector apply_readout_error(const ProbabilityVector& p, const NoiseModel& model,
                                      std::span<const int> measured = {});

/// Final noisy state: each gate followed by depolarizing noise on its
/// targets (p1 or p2 by arity; none for gates marked noiseless).
DensityMatrix evolve(const Circuit& c, const NoiseModel& model);

/// Exact outcome distribution of the measured qubits, readout confusion
/// included.
ProbabilityVector execute_exact(const Circuit& c, const NoiseModel& model);

ShotHistogram execute_shots(const Circuit& c, const NoiseModel& model, std::uint64_t shots,
                            std::uint64_t seed);

std::variant<ProbabilityVector, ShotHistogram> execute(const Circuit& c, const NoiseModel& model,
                                                       const ExecutionMode& mode);

}  // namespace vqemit
