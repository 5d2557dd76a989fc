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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqemit/chem.hpp"
#include "vqemit/circuits.hpp"
#include "vqemit/mitigation.hpp"
#include "vqemit/noise.hpp"

namespace vqemit {

enum class Family { bare, encoded, duplicate, duplicate_ideal_b, duplicate_2q_noise_only };

const char* to_string(Family f) noexcept;
/// Throws a config error for unknown names.
Family family_from_string(const std::string& name);

enum class BremOrder { unfold_then_postselect, postselect_then_unfold };

struct ScanConfig {
  Family family = Family::bare;
  std::string scenario = "custom";
  int theta_points = 257;
  std::vector<double> r_list;  // empty: every table row
  bool exact = true;
  std::uint64_t shots = 8192;
  std::uint64_t calibration_shots = 8192;
  std::uint64_t seed = 1;
  NoiseModel noise;
  bool brem = false;
  UnfoldOptions brem_options;
  BremOrder brem_order = BremOrder::unfold_then_postselect;
  bool calibration_gate_noise = true;  // false: calibration sees readout error only
  bool y_basis = false;  // measure Y1Y2 directly instead of using -<X1X2>
  BGateForm b_form = BGateForm::exact;
  bool postselect_a2 = true;
  int jobs = 1;

  void validate() const;
};

struct EnergyRecord {
  Family family = Family::bare;
  std::string scenario;
  double r_angstrom = 0.0;
  double theta_star = 0.0;      // argmin of the mitigated curve
  double theta_star_raw = 0.0;  // argmin of the raw curve
  double e_raw = 0.0;
  double e_mitigated = 0.0;
  double e_exact = 0.0;
  std::optional<double> retention_ratio;       // encoded only
  std::optional<double> duplicate_denominator;  // duplicate families only
  std::optional<std::uint64_t> shots;           // empty in exact mode
  std::optional<std::uint64_t> seed;
  int skipped_thetas = 0;  // mitigated points lost to total post-selection
};

/// `points` equally spaced angles on [-pi, pi], endpoints included.
std::vector<double> theta_grid(int points);

struct ThetaEnergy {
  double theta = 0.0;
  double energy = 0.0;
};

/// Smallest energy; ties (within 1e-12) go to the smallest theta.
ThetaEnergy min_over_theta(std::span<const ThetaEnergy> curve);

/// Energies of one grid point, before minimization.
struct PointEnergy {
  double e_raw = 0.0;
  std::optional<double> e_mitigated;  // empty when post-selection kept nothing
  std::optional<double> retention_ratio;
  std::optional<double> duplicate_denominator;
};

/// Full E(theta) curves at one bond length (row index into the table).
std::vector<PointEnergy> energy_curve(const ScanConfig& cfg, const CoefficientTable& table,
                                      std::size_t row);

/// Response matrix on the family's measured register, from the 2^n
/// calibration circuits run under the scan's noise model.
ResponseMatrix calibration_response(const ScanConfig& cfg);

std::vector<EnergyRecord> run_scan(const ScanConfig& cfg, const CoefficientTable& table);

struct SweepConfig {
  std::vector<double> rates;
  double r_angstrom = 0.75;
  std::vector<Family> variants = {Family::bare, Family::encoded, Family::duplicate,
                                  Family::duplicate_2q_noise_only, Family::duplicate_ideal_b};
  int theta_points = 257;
  BGateForm b_form = BGateForm::exact;
  int jobs = 1;
};

struct SweepRow {
  double rate = 0.0;
  Family variant = Family::bare;
  double abs_error = 0.0;
};

/// Exact-mode ground-energy error per variant and depolarizing rate, with
/// no readout error and no unfolding. Rows ordered by rate then variant
/// position in the config.
std::vector<SweepRow> gate_error_sweep(const SweepConfig& cfg, const CoefficientTable& table);

/// Runs f(0..n-1) on up to `jobs` threads; rethrows the first failure.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

}  // namespace vqemit
