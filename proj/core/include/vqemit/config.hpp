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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vqemit/vqe.hpp"

namespace vqemit {

/// Parsed `[section] key = value` document. Unknown sections or keys are
/// rejected; every error names the offending `section.key`.
struct ExperimentConfig {
  // [chem]
  std::filesystem::path coefficients_path = "data/h2_coefficients.csv";
  // [scan]
  int theta_points = 257;
  std::vector<double> r_list;  // empty: all rows
  bool y_basis = false;
  // [noise]
  double depolarizing_1q = 0.0;
  double depolarizing_2q = 0.0;
  double readout_p01 = 0.0;
  double readout_p10 = 0.0;
  // [run]
  std::vector<Family> families = {Family::bare};
  std::string scenario = "custom";
  bool exact = true;
  std::uint64_t shots = 8192;
  std::uint64_t calibration_shots = 8192;
  std::uint64_t seed = 1;
  BGateForm b_gate = BGateForm::exact;
  bool postselect_a2 = true;
  // [mitigation]
  bool brem = false;
  int brem_max_iters = 100;
  double brem_tol = 1e-6;
  bool ideal_b = false;
  BremOrder brem_order = BremOrder::unfold_then_postselect;
  bool calibration_gate_noise = true;
  // [sweep]
  std::vector<double> sweep_rates;
  double sweep_r_angstrom = 0.75;
  std::vector<Family> sweep_variants = SweepConfig{}.variants;

  /// One scan per family.
  std::vector<ScanConfig> scans(int jobs) const;
  SweepConfig sweep(int jobs) const;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct Preset {
  std::string name;
  std::string description;
};

std::vector<Preset> run_presets();
std::vector<Preset> sweep_presets();

/// Scenario configs of a run-vqe preset, layered over `base` (which keeps
/// its coefficient path, grid size and seed).
std::vector<ExperimentConfig> expand_run_preset(const std::string& name, const ExperimentConfig& base);
/// Sweep preset layered over `base`.
ExperimentConfig expand_sweep_preset(const std::string& name, const ExperimentConfig& base);

}  // namespace vqemit
