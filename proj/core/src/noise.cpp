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

#include "vqemit/noise.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vqemit/error.hpp"

namespace vqemit {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorKind::parameter, std::string(what) + " = " + std::to_string(p) +
                                          " is outside [0, 1]");
}

}  // namespace

ReadoutError NoiseModel::readout_for(int qubit) const {
  if (qubit >= 0 && static_cast<std::size_t>(qubit) < per_qubit.size())
    return per_qubit[static_cast<std::size_t>(qubit)];
  return readout;
}

bool NoiseModel::has_readout_error() const {
  if (readout.p01 != 0.0 || readout.p10 != 0.0) return true;
  for (const auto& r : per_qubit)
    if (r.p01 != 0.0 || r.p10 != 0.0) return true;
  return false;
}

void NoiseModel::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(readout.p01, "readout p01");
  check_probability(readout.p10, "readout p10");
  for (const auto& r : per_qubit) {
    check_probability(r.p01, "readout p01");
    check_probability(r.p10, "readout p10");
  }
}

void depolarize_in_place(DensityMatrix& rho, std::span<const int> targets, double p) {
  check_probability(p, "depolarizing rate");
  if (targets.empty() || targets.size() > 2)
    throw Error(ErrorKind::parameter, "depolarize acts on one or two qubits");
  const int n = rho.n_qubits();
  std::size_t mask = 0;
  for (int t : targets) {
    if (t < 0 || t >= n) throw Error(ErrorKind::invalid_gate, "depolarize target outside register");
    if (mask & (std::size_t{1} << t)) throw Error(ErrorKind::invalid_gate, "depolarize target repeated");
    mask |= std::size_t{1} << t;
  }
  if (p == 0.0) return;

  const std::size_t k = std::size_t{1} << targets.size();
  std::vector<std::size_t> off(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < targets.size(); ++j)
      if ((a >> j) & 1U) off[a] |= std::size_t{1} << targets[j];

  Eigen::MatrixXcd& m = rho.mutable_data();
  const std::size_t dim = rho.dim();
  const double w = p / static_cast<double>(k);
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      // Partial trace over the targets for this (rest-row, rest-col) block.
      cplx red = 0.0;
      for (std::size_t a = 0; a < k; ++a)
        red += m(static_cast<Eigen::Index>(r + off[a]), static_cast<Eigen::Index>(c + off[a]));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t a2 = 0; a2 < k; ++a2) {
          auto& e = m(static_cast<Eigen::Index>(r + off[a]), static_cast<Eigen::Index>(c + off[a2]));
          e *= (1.0 - p);
          if (a == a2) e += w * red;
        }
    }
  }
}

DensityMatrix depolarize(const DensityMatrix& rho, std::span<const int> targets, double p) {
  DensityMatrix out = rho;
  depolarize_in_place(out, targets, p);
  return out;
}

ProbabilityVector apply_readout_error(const ProbabilityVector& p, const NoiseModel& model,
                                      std::span<const int> measured) {
  model.validate();
  if (p.empty() || (p.size() & (p.size() - 1)) != 0)
    throw Error(ErrorKind::dimension, "probability vector length is not a power of two");
  const int n_bits = std::countr_zero(p.size());
  if (!measured.empty() && static_cast<int>(measured.size()) != n_bits)
    throw Error(ErrorKind::dimension, "measured list does not match probability vector");
  ProbabilityVector out = p;
  for (int j = 0; j < n_bits; ++j) {
    const ReadoutError e = model.readout_for(measured.empty() ? j : measured[static_cast<std::size_t>(j)]);
    if (e.p01 == 0.0 && e.p10 == 0.0) continue;
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i & bit) continue;
      const double t0 = out[i], t1 = out[i | bit];
      out[i] = (1.0 - e.p01) * t0 + e.p10 * t1;
      out[i | bit] = e.p01 * t0 + (1.0 - e.p10) * t1;
    }
  }
  return out;
}

DensityMatrix evolve(const Circuit& c, const NoiseModel& model) {
  c.validate();
  model.validate();
  DensityMatrix rho = init_state(c.n_qubits);
  for (const Gate& g : c.ops) {
    apply_unitary_in_place(rho, g);
    if (!g.noisy) continue;
    const double p = g.targets.size() == 1 ? model.p1 : model.p2;
    if (p > 0.0) depolarize_in_place(rho, g.targets, p);
  }
  return rho;
}

ProbabilityVector execute_exact(const Circuit& c, const NoiseModel& model) {
  const DensityMatrix rho = evolve(c, model);
  ProbabilityVector p = probabilities(rho, c.measured);
  if (model.has_readout_error()) p = apply_readout_error(p, model, c.measured);
  // Clean accumulated round-off so the vector sums to one.
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return p;
}

ShotHistogram execute_shots(const Circuit& c, const NoiseModel& model, std::uint64_t shots,
                            std::uint64_t seed) {
  return sample_shots(execute_exact(c, model), shots, seed);
}

std::variant<ProbabilityVector, ShotHistogram> execute(const Circuit& c, const NoiseModel& model,
                                                       const ExecutionMode& mode) {
  if (mode.kind == ExecutionMode::Kind::exact) return execute_exact(c, model);
  if (mode.shots == 0) throw Error(ErrorKind::parameter, "shot mode needs a positive shot count");
  return execute_shots(c, model, mode.shots, mode.seed);
}

}  // namespace vqemit
