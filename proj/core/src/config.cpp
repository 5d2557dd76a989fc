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

#include "vqemit/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "vqemit/error.hpp"

namespace vqemit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Ctx {
  std::string where;  // "source:line"
  std::string key;    // "section.key"
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::config, where + ": " + key + ": " + why);
  }
};

double as_real(const std::string& v, const Ctx& c) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    c.fail("'" + v + "' is not a real number");
  }
}

double as_probability(const std::string& v, const Ctx& c) {
  const double d = as_real(v, c);
  if (d < 0.0 || d > 1.0) c.fail("value " + v + " outside [0, 1]");
  return d;
}

std::uint64_t as_count(const std::string& v, const Ctx& c) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    c.fail("'" + v + "' is not a non-negative integer");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    c.fail("'" + v + "' is out of range");
  }
}

bool as_bool(const std::string& v, const Ctx& c) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  c.fail("'" + v + "' is not a boolean");
}

std::vector<double> as_reals(const std::string& v, const Ctx& c) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(as_real(item, c));
  if (out.empty()) c.fail("empty list");
  return out;
}

std::vector<Family> as_families(const std::string& v, const Ctx& c) {
  std::vector<Family> out;
  for (const auto& item : split_list(v)) {
    try {
      out.push_back(family_from_string(item));
    } catch (const Error& e) {
      c.fail(e.what());
    }
  }
  if (out.empty()) c.fail("empty list");
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const Ctx&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"chem",
       {{"coefficients_path",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           if (v.empty()) c.fail("empty path");
           e.coefficients_path = v;
         }}}},
      {"scan",
       {{"theta_points",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           const auto n = as_count(v, c);
           if (n < 2 || n > 100000) c.fail("theta_points must be in [2, 100000]");
           e.theta_points = static_cast<int>(n);
         }},
        {"r_list",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           e.r_list = v == "all" ? std::vector<double>{} : as_reals(v, c);
         }},
        {"y_basis", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.y_basis = as_bool(v, c); }}}},
      {"noise",
       {{"depolarizing_1q",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.depolarizing_1q = as_probability(v, c); }},
        {"depolarizing_2q",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.depolarizing_2q = as_probability(v, c); }},
        {"readout_p01",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.readout_p01 = as_probability(v, c); }},
        {"readout_p10",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.readout_p10 = as_probability(v, c); }}}},
      {"run",
       {{"family", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.families = as_families(v, c); }},
        {"scenario",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           if (v.empty() || v.find(',') != std::string::npos) c.fail("scenario must be non-empty and comma-free");
           e.scenario = v;
         }},
        {"mode",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           if (v != "exact" && v != "shots") c.fail("mode must be 'exact' or 'shots'");
           e.exact = v == "exact";
         }},
        {"shots",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           e.shots = as_count(v, c);
           if (e.shots == 0) c.fail("shots must be positive");
         }},
        {"calibration_shots",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           e.calibration_shots = as_count(v, c);
           if (e.calibration_shots == 0) c.fail("calibration_shots must be positive");
         }},
        {"seed", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.seed = as_count(v, c); }},
        {"b_gate",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           if (v != "exact" && v != "decomposed") c.fail("b_gate must be 'exact' or 'decomposed'");
           e.b_gate = v == "exact" ? BGateForm::exact : BGateForm::decomposed;
         }},
        {"postselect_a2",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.postselect_a2 = as_bool(v, c); }}}},
      {"mitigation",
       {{"brem", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.brem = as_bool(v, c); }},
        {"brem_max_iters",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           const auto n = as_count(v, c);
           if (n == 0 || n > 1000000) c.fail("brem_max_iters must be in [1, 1000000]");
           e.brem_max_iters = static_cast<int>(n);
         }},
        {"brem_tol",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           e.brem_tol = as_real(v, c);
           if (!(e.brem_tol > 0.0)) c.fail("brem_tol must be positive");
         }},
        {"ideal_b", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.ideal_b = as_bool(v, c); }},
        {"calibration_gate_noise",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.calibration_gate_noise = as_bool(v, c); }},
        {"brem_order",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           if (v == "unfold_then_postselect") e.brem_order = BremOrder::unfold_then_postselect;
           else if (v == "postselect_then_unfold") e.brem_order = BremOrder::postselect_then_unfold;
           else c.fail("brem_order must be 'unfold_then_postselect' or 'postselect_then_unfold'");
         }}}},
      {"sweep",
       {{"rates",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
           e.sweep_rates = as_reals(v, c);
           for (double r : e.sweep_rates)
             if (r < 0.0 || r > 0.5) c.fail("rates must lie in [0, 0.5]");
         }},
        {"r_angstrom", [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.sweep_r_angstrom = as_real(v, c); }},
        {"variants",
         [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.sweep_variants = as_families(v, c); }}}},
  };
  return s;
}

std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%gpct", fraction * 100.0);
  return buf;
}

ExperimentConfig shots_base(const ExperimentConfig& base) {
  ExperimentConfig e = base;
  e.families = {Family::bare, Family::encoded, Family::duplicate};
  e.exact = false;
  e.brem = true;
  e.depolarizing_1q = e.depolarizing_2q = 0.0;
  e.readout_p01 = e.readout_p10 = 0.0;
  return e;
}

ExperimentConfig readout_scenario(const ExperimentConfig& base, double flip) {
  ExperimentConfig e = shots_base(base);
  e.readout_p01 = e.readout_p10 = flip;
  e.scenario = "readout-" + pct(flip);
  return e;
}

ExperimentConfig depolarizing_scenario(const ExperimentConfig& base, double rate) {
  ExperimentConfig e = shots_base(base);
  e.depolarizing_1q = e.depolarizing_2q = rate;
  e.scenario = "depolarizing-" + pct(rate);
  return e;
}

ExperimentConfig mixed_scenario(const ExperimentConfig& base, double flip, double rate) {
  ExperimentConfig e = depolarizing_scenario(base, rate);
  e.readout_p01 = e.readout_p10 = flip;
  e.scenario = "readout-" + pct(flip) + "-depolarizing-" + pct(rate);
  return e;
}

std::vector<double> rate_range(int last_percent) {
  std::vector<double> out;
  for (int i = 0; i <= last_percent; ++i) out.push_back(i / 100.0);
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::string section, line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw Error(ErrorKind::config, where + ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      if (!schema().count(section))
        throw Error(ErrorKind::config, where + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::config, where + ": expected 'key = value', got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    std::string sec = section;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      sec = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
    const std::string full = sec.empty() ? key : sec + "." + key;
    const auto s = schema().find(sec);
    if (s == schema().end() || !s->second.count(key))
      throw Error(ErrorKind::config, where + ": unknown key '" + full + "'");
    s->second.at(key)(cfg, value, Ctx{where, full});
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open config file " + path.string());
  return parse_config(in, path.string());
}

std::vector<ScanConfig> ExperimentConfig::scans(int jobs) const {
  std::vector<ScanConfig> out;
  for (Family f : families) {
    ScanConfig s;
    s.family = (ideal_b && f == Family::duplicate) ? Family::duplicate_ideal_b : f;
    s.scenario = scenario;
    s.theta_points = theta_points;
    s.r_list = r_list;
    s.exact = exact;
    s.shots = shots;
    s.calibration_shots = calibration_shots;
    s.seed = seed;
    s.noise.p1 = depolarizing_1q;
    s.noise.p2 = depolarizing_2q;
    s.noise.readout = {readout_p01, readout_p10};
    s.brem = brem;
    s.brem_options = {brem_max_iters, brem_tol};
    s.brem_order = brem_order;
    s.calibration_gate_noise = calibration_gate_noise;
    s.y_basis = y_basis;
    s.b_form = b_gate;
    s.postselect_a2 = postselect_a2;
    s.jobs = jobs;
    out.push_back(std::move(s));
  }
  return out;
}

SweepConfig ExperimentConfig::sweep(int jobs) const {
  SweepConfig s;
  s.rates = sweep_rates;
  s.r_angstrom = sweep_r_angstrom;
  s.variants = sweep_variants;
  s.theta_points = theta_points;
  s.b_form = b_gate;
  s.jobs = jobs;
  return s;
}

std::vector<Preset> run_presets() {
  return {
      {"noise-free", "all families, exact mode, no noise"},
      {"readout-only-0.5pct", "readout flips 0.5%, 8192 shots, BREM"},
      {"readout-only-2pct", "readout flips 2%, 8192 shots, BREM"},
      {"readout-only-4pct", "readout flips 4%, 8192 shots, BREM"},
      {"readout-only", "readout flips 0.5%, 2% and 4%"},
      {"depolarizing-only-0.1pct", "gate depolarizing 0.1%, 8192 shots, BREM"},
      {"depolarizing-only-0.5pct", "gate depolarizing 0.5%, 8192 shots, BREM"},
      {"depolarizing-only-1pct", "gate depolarizing 1%, 8192 shots, BREM"},
      {"depolarizing-only-2pct", "gate depolarizing 2%, 8192 shots, BREM"},
      {"depolarizing-only", "gate depolarizing 0.1%, 0.5%, 1% and 2%"},
      {"mixed-1pct-readout", "readout 1% with depolarizing 0.4%, 1.2% and 2%"},
  };
}

std::vector<Preset> sweep_presets() {
  return {
      {"gate-error-sweep", "depolarizing 0..12% in 1% steps at 0.75 A"},
      {"gate-error-sweep-wide", "depolarizing 0..50% in 1% steps at 0.75 A"},
  };
}

std::vector<ExperimentConfig> expand_run_preset(const std::string& name, const ExperimentConfig& base) {
  if (name == "noise-free") {
    ExperimentConfig e = shots_base(base);
    e.exact = true;
    e.brem = false;
    e.scenario = "noise-free";
    return {e};
  }
  if (name == "readout-only-0.5pct") return {readout_scenario(base, 0.005)};
  if (name == "readout-only-2pct") return {readout_scenario(base, 0.02)};
  if (name == "readout-only-4pct") return {readout_scenario(base, 0.04)};
  if (name == "readout-only")
    return {readout_scenario(base, 0.005), readout_scenario(base, 0.02), readout_scenario(base, 0.04)};
  if (name == "depolarizing-only-0.1pct") return {depolarizing_scenario(base, 0.001)};
  if (name == "depolarizing-only-0.5pct") return {depolarizing_scenario(base, 0.005)};
  if (name == "depolarizing-only-1pct") return {depolarizing_scenario(base, 0.01)};
  if (name == "depolarizing-only-2pct") return {depolarizing_scenario(base, 0.02)};
  if (name == "depolarizing-only")
    return {depolarizing_scenario(base, 0.001), depolarizing_scenario(base, 0.005),
            depolarizing_scenario(base, 0.01), depolarizing_scenario(base, 0.02)};
  if (name == "mixed-1pct-readout")
    return {mixed_scenario(base, 0.01, 0.004), mixed_scenario(base, 0.01, 0.012),
            mixed_scenario(base, 0.01, 0.02)};
  throw Error(ErrorKind::config, "unknown preset '" + name + "'");
}

ExperimentConfig expand_sweep_preset(const std::string& name, const ExperimentConfig& base) {
  ExperimentConfig e = base;
  e.sweep_r_angstrom = 0.75;
  e.sweep_variants = SweepConfig{}.variants;
  if (name == "gate-error-sweep") {
    e.sweep_rates = rate_range(12);
  } else if (name == "gate-error-sweep-wide") {
    e.sweep_rates = rate_range(50);
  } else {
    throw Error(ErrorKind::config, "unknown sweep preset '" + name + "'");
  }
  return e;
}

}  // namespace vqemit
