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

#include <iosfwd>
#include <string>
#include <vector>

#include "vqemit/chem.hpp"
#include "vqemit/mitigation.hpp"
#include "vqemit/vqe.hpp"

namespace vqemit {

/// Twelve significant digits, shortest form ("%.12g").
std::string format_real(double v);

inline constexpr const char* kEnergyCurveHeader =
    "family,scenario,r_angstrom,theta_star,e_raw_ha,e_mitigated_ha,e_exact_ha,retention_ratio,shots,seed";

/// Rows sorted by (family, scenario, r) so output bytes never depend on
/// evaluation order.
void write_energy_csv(std::ostream& out, std::vector<EnergyRecord> records);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_exact_curve_csv(std::ostream& out, const CoefficientTable& table);

/// `bitstring,count` lines; the header line is optional.
ShotHistogram read_histogram_csv(std::istream& in, const std::string& source = "<histogram>");
/// First line `n_qubits=<n>`, then 2^n rows of 2^n comma-separated entries.
ResponseMatrix read_response_csv(std::istream& in, const std::string& source = "<response>");
void write_response_csv(std::ostream& out, const ResponseMatrix& r);
void write_spectrum_csv(std::ostream& out, const ProbabilityVector& p);

}  // namespace vqemit
