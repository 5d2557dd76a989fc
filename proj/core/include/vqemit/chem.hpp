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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vqemit/densesim.hpp"

namespace vqemit {

/// Coefficients of H = g0 + g1 Z1 + g2 Z2 + g3 Z1Z2 + g4 Y1Y2 + g5 X1X2.
using Coefficients = std::array<double, 6>;

struct CoefficientRow {
  double r_angstrom = 0.0;
  Coefficients g{};
};

struct CoefficientTable {
  std::vector<CoefficientRow> rows;

  /// Exact lookup (within 1e-9 Angstrom); throws a lookup error naming the
  /// nearest rows otherwise.
  const CoefficientRow& at(double r) const;
  std::size_t index_of(double r) const;
};

/// CSV with header `r_angstrom,g0,g1,g2,g3,g4,g5`; `#` starts a comment line.
CoefficientTable parse_coefficients(std::istream& in, const std::string& source = "<stream>");
CoefficientTable load_coefficients(const std::filesystem::path& path);

struct ObservableTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

struct ObservableSum {
  std::vector<ObservableTerm> terms;

  int n_qubits() const;
  Eigen::MatrixXcd matrix() const;
};

/// Six terms in the order I, Z1, Z2, Z1Z2, Y1Y2, X1X2.
ObservableSum hamiltonian(const Coefficients& g);
ObservableSum hamiltonian(const CoefficientTable& table, double r);

double exact_ground_energy(const ObservableSum& h);

struct TermExpectations {
  double z1 = 0.0;
  double z2 = 0.0;
  double z1z2 = 0.0;
  double x1x2 = 0.0;
  std::optional<double> y1y2;  // absent: taken as -<X1X2>
};

double assemble_energy(const Coefficients& g, const TermExpectations& e);

}  // namespace vqemit
