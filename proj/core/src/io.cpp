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

#include "vqemit/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

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

template <class T>
std::string optional_real(const std::optional<T>& v) {
  return v ? format_real(static_cast<double>(*v)) : std::string{};
}

template <class T>
std::string optional_count(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string{};
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_energy_csv(std::ostream& out, std::vector<EnergyRecord> records) {
  std::sort(records.begin(), records.end(), [](const EnergyRecord& a, const EnergyRecord& b) {
    return std::make_tuple(std::string(to_string(a.family)), a.scenario, a.r_angstrom) <
           std::make_tuple(std::string(to_string(b.family)), b.scenario, b.r_angstrom);
  });
  out << kEnergyCurveHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.family) << ',' << r.scenario << ',' << format_real(r.r_angstrom) << ','
        << format_real(r.theta_star) << ',' << format_real(r.e_raw) << ',' << format_real(r.e_mitigated)
        << ',' << format_real(r.e_exact) << ',' << optional_real(r.retention_ratio) << ','
        << optional_count(r.shots) << ',' << optional_count(r.seed) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "gate_error_rate,variant,abs_energy_error_ha\n";
  for (const auto& r : rows)
    out << format_real(r.rate) << ',' << to_string(r.variant) << ',' << format_real(r.abs_error) << '\n';
}

void write_exact_curve_csv(std::ostream& out, const CoefficientTable& table) {
  out << "r_angstrom,e_exact_ha\n";
  for (const auto& row : table.rows)
    out << format_real(row.r_angstrom) << ',' << format_real(exact_ground_energy(hamiltonian(row.g))) << '\n';
}

ShotHistogram read_histogram_csv(std::istream& in, const std::string& source) {
  std::map<std::string, std::uint64_t> m;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_commas(t);
    if (cells.size() == 2 && cells[0] == "bitstring" && cells[1] == "count") continue;
    if (cells.size() != 2) throw Error(ErrorKind::parse, where + ": expected 'bitstring,count'");
    const std::string& key = cells[0];
    if (key.empty() || key.find_first_not_of("01") != std::string::npos)
      throw Error(ErrorKind::parse, where + ": '" + key + "' is not a bitstring");
    if (width == 0) width = key.size();
    if (key.size() != width) throw Error(ErrorKind::parse, where + ": bitstrings have unequal length");
    if (cells[1].empty() || cells[1].find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::parse, where + ": '" + cells[1] + "' is not a count");
    m[key] += std::stoull(cells[1]);
  }
  if (m.empty()) throw Error(ErrorKind::parse, source + ": histogram is empty");
  ShotHistogram h = ShotHistogram::from_map(m);
  if (h.shots == 0) throw Error(ErrorKind::parse, source + ": histogram holds zero shots");
  return h;
}

ResponseMatrix read_response_csv(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  ResponseMatrix r;
  bool have_header = false;
  Eigen::Index row = 0, dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (t.empty() || t[0] == '#') continue;
    if (!have_header) {
      if (t.rfind("n_qubits=", 0) != 0) throw Error(ErrorKind::parse, where + ": expected 'n_qubits=<n>'");
      try {
        r.n_qubits = std::stoi(t.substr(9));
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, where + ": bad qubit count");
      }
      if (r.n_qubits < 1 || r.n_qubits > kMaxQubits) throw Error(ErrorKind::parse, where + ": qubit count outside [1, 8]");
      dim = Eigen::Index{1} << r.n_qubits;
      r.r = Eigen::MatrixXd::Zero(dim, dim);
      have_header = true;
      continue;
    }
    const auto cells = split_commas(t);
    if (row >= dim) throw Error(ErrorKind::parse, where + ": more than " + std::to_string(dim) + " rows");
    if (static_cast<Eigen::Index>(cells.size()) != dim)
      throw Error(ErrorKind::parse, where + ": expected " + std::to_string(dim) + " columns");
    for (Eigen::Index c = 0; c < dim; ++c) {
      try {
        std::size_t used = 0;
        r.r(row, c) = std::stod(cells[static_cast<std::size_t>(c)], &used);
        if (used != cells[static_cast<std::size_t>(c)].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, where + ": '" + cells[static_cast<std::size_t>(c)] + "' is not a number");
      }
    }
    ++row;
  }
  if (!have_header) throw Error(ErrorKind::parse, source + ": empty response file");
  if (row != dim) throw Error(ErrorKind::parse, source + ": expected " + std::to_string(dim) + " rows");
  r.validate();
  return r;
}

void write_response_csv(std::ostream& out, const ResponseMatrix& r) {
  out << "n_qubits=" << r.n_qubits << '\n';
  for (Eigen::Index i = 0; i < r.r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.r.cols(); ++j) out << (j ? "," : "") << format_real(r.r(i, j));
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const ProbabilityVector& p) {
  const int n = std::countr_zero(p.size());
  out << "bitstring,probability\n";
  for (std::size_t k = 0; k < p.size(); ++k) out << to_bitstring(k, n) << ',' << format_real(p[k]) << '\n';
}

}  // namespace vqemit
