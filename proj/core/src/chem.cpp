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

#include "vqemit/chem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vqemit/error.hpp"

namespace vqemit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& cell, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, where + ": '" + cell + "' is not a real number");
  }
}

}  // namespace

CoefficientTable parse_coefficients(std::istream& in, const std::string& source) {
  static const std::vector<std::string> kHeader = {"r_angstrom", "g0", "g1", "g2",
                                                   "g3",         "g4", "g5"};
  CoefficientTable table;
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto cells = split_commas(t);
    if (!seen_header) {
      if (cells != kHeader)
        throw Error(ErrorKind::parse, where + ": expected header r_angstrom,g0,g1,g2,g3,g4,g5");
      seen_header = true;
      continue;
    }
    if (cells.size() != 7)
      throw Error(ErrorKind::parse, where + ": expected 7 columns, found " +
                                        std::to_string(cells.size()));
    CoefficientRow row;
    row.r_angstrom = parse_real(cells[0], where);
    for (std::size_t i = 0; i < 6; ++i) row.g[i] = parse_real(cells[i + 1], where);
    if (!table.rows.empty() && row.r_angstrom <= table.rows.back().r_angstrom)
      throw Error(ErrorKind::parse, where + ": bond length " + cells[0] +
                                        " is not strictly increasing");
    table.rows.push_back(row);
  }
  if (!seen_header) throw Error(ErrorKind::parse, source + ": missing header");
  if (table.rows.empty()) throw Error(ErrorKind::parse, source + ": table has no rows");
  return table;
}

CoefficientTable load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open coefficient file " + path.string());
  return parse_coefficients(in, path.string());
}

std::size_t CoefficientTable::index_of(double r) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (std::abs(rows[i].r_angstrom - r) <= 1e-9) return i;
  std::ostringstream msg;
  msg << "bond length " << r << " not in table";
  if (!rows.empty()) {
    auto it = std::lower_bound(rows.begin(), rows.end(), r,
                               [](const CoefficientRow& row, double v) { return row.r_angstrom < v; });
    msg << "; nearest rows:";
    if (it != rows.begin()) msg << ' ' << std::prev(it)->r_angstrom;
    if (it != rows.end()) msg << ' ' << it->r_angstrom;
  }
  throw Error(ErrorKind::lookup, msg.str());
}

const CoefficientRow& CoefficientTable::at(double r) const { return rows[index_of(r)]; }

int ObservableSum::n_qubits() const { return terms.empty() ? 0 : terms.front().pauli.size(); }

Eigen::MatrixXcd ObservableSum::matrix() const {
  const int n = n_qubits();
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& t : terms) {
    if (t.pauli.size() != n) throw Error(ErrorKind::dimension, "terms act on different registers");
    m += t.coefficient * t.pauli.matrix();
  }
  return m;
}

ObservableSum hamiltonian(const Coefficients& g) {
  static const char* kWords[6] = {"II", "IZ", "ZI", "ZZ", "YY", "XX"};
  ObservableSum h;
  for (std::size_t i = 0; i < 6; ++i) h.terms.push_back({g[i], PauliString(kWords[i])});
  return h;
}

ObservableSum hamiltonian(const CoefficientTable& table, double r) { return hamiltonian(table.at(r).g); }

double exact_ground_energy(const ObservableSum& h) {
  if (h.terms.empty()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double assemble_energy(const Coefficients& g, const TermExpectations& e) {
  auto check = [](double v, const char* name) {
    if (!(std::abs(v) <= 1.0 + 1e-6))
      throw Error(ErrorKind::range, std::string("expectation ") + name + " = " +
                                        std::to_string(v) + " outside [-1, 1]");
  };
  check(e.z1, "<Z1>");
  check(e.z2, "<Z2>");
  check(e.z1z2, "<Z1Z2>");
  check(e.x1x2, "<X1X2>");
  const double yy = e.y1y2.value_or(-e.x1x2);
  check(yy, "<Y1Y2>");
  return g[0] + g[1] * e.z1 + g[2] * e.z2 + g[3] * e.z1z2 + g[4] * yy + g[5] * e.x1x2;
}

}  // namespace vqemit
