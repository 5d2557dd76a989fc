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

// vqemit command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vqemit/vqemit.hpp"

namespace fs = std::filesystem;
using namespace vqemit;

namespace {

struct Common {
  std::string config;
  std::string preset;
  std::string out;
  std::string coefficients;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

ExperimentConfig base_config(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
  if (!c.coefficients.empty()) cfg.coefficients_path = c.coefficients;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Writes through a temporary so a failed run never leaves a partial file.
void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    f << content;
    if (!f) throw Error(ErrorKind::io, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

std::string family_path(const std::string& out, Family f) {
  const fs::path p(out);
  return (p.parent_path() / (p.stem().string() + "_" + to_string(f) + p.extension().string())).string();
}

int run_vqe(const Common& c) {
  const ExperimentConfig base = base_config(c);
  const std::vector<ExperimentConfig> runs =
      c.preset.empty() ? std::vector<ExperimentConfig>{base} : expand_run_preset(c.preset, base);
  const CoefficientTable table = load_coefficients(base.coefficients_path);

  std::vector<EnergyRecord> all;
  for (const auto& run : runs) {
    for (const ScanConfig& scan : run.scans(c.jobs)) {
      std::cerr << "run-vqe: " << to_string(scan.family) << " / " << scan.scenario << '\n';
      auto recs = run_scan(scan, table);
      for (const auto& r : recs)
        if (r.skipped_thetas > 0)
          std::cerr << "run-vqe: r=" << format_real(r.r_angstrom) << ": " << r.skipped_thetas
                    << " angle(s) lost every shot to post-selection\n";
      all.insert(all.end(), recs.begin(), recs.end());
    }
  }

  std::ostringstream combined;
  write_energy_csv(combined, all);
  write_file(c.out, combined.str());

  std::vector<Family> families;
  for (const auto& r : all)
    if (std::find(families.begin(), families.end(), r.family) == families.end()) families.push_back(r.family);
  if (families.size() > 1 && c.out != "-") {
    for (Family f : families) {
      std::vector<EnergyRecord> part;
      std::copy_if(all.begin(), all.end(), std::back_inserter(part),
                   [f](const EnergyRecord& r) { return r.family == f; });
      std::ostringstream s;
      write_energy_csv(s, part);
      write_file(family_path(c.out, f), s.str());
    }
  }
  return 0;
}

int sweep(const Common& c) {
  ExperimentConfig cfg = base_config(c);
  if (!c.preset.empty()) cfg = expand_sweep_preset(c.preset, cfg);
  if (cfg.sweep_rates.empty()) throw Error(ErrorKind::config, "sweep.rates is not set (use a config or --preset)");
  const CoefficientTable table = load_coefficients(cfg.coefficients_path);
  std::ostringstream s;
  write_sweep_csv(s, gate_error_sweep(cfg.sweep(c.jobs), table));
  write_file(c.out, s.str());
  return 0;
}

int exact_curve(const Common& c) {
  const ExperimentConfig cfg = base_config(c);
  std::ostringstream s;
  write_exact_curve_csv(s, load_coefficients(cfg.coefficients_path));
  write_file(c.out, s.str());
  return 0;
}

int calibrate_cmd(const Common& c, const std::string& family_name) {
  const ExperimentConfig cfg = base_config(c);
  const Family f = family_from_string(family_name);
  ScanConfig sc = cfg.scans(c.jobs).front();
  sc.family = f;
  std::ostringstream s;
  write_response_csv(s, calibration_response(sc));
  write_file(c.out, s.str());
  return 0;
}

int unfold_cmd(const std::string& hist_path, const std::string& resp_path, const std::string& out,
               int max_iters, double tol) {
  std::ifstream hin(hist_path);
  if (!hin) throw Error(ErrorKind::io, "cannot open histogram " + hist_path);
  std::ifstream rin(resp_path);
  if (!rin) throw Error(ErrorKind::io, "cannot open response matrix " + resp_path);
  const ShotHistogram h = read_histogram_csv(hin, hist_path);
  const ResponseMatrix r = read_response_csv(rin, resp_path);
  if (h.n_bits != r.n_qubits)
    throw Error(ErrorKind::dimension, "histogram has " + std::to_string(h.n_bits) + " bits but response matrix covers " +
                                          std::to_string(r.n_qubits) + " qubits");
  const UnfoldResult res = brem_unfold(h.frequencies(), r, {max_iters, tol});
  std::ostringstream s;
  write_spectrum_csv(s, res.spectrum);
  write_file(out, s.str());
  return 0;
}

void add_common(CLI::App* app, Common& c, bool with_preset) {
  app->add_option("--config", c.config, "experiment config ([section] key = value)")->check(CLI::ExistingFile);
  if (with_preset) app->add_option("--preset", c.preset, "named scenario preset (see 'vqemit presets')");
  app->add_option("--out", c.out, "output CSV path ('-' for stdout)")->required();
  app->add_option("--coefficients", c.coefficients, "coefficient table, overrides chem.coefficients_path");
  app->add_option("--seed", c.seed, "master seed, overrides run.seed");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 1024));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy VQE simulation with error-detection, duplicate-circuit and readout mitigation"};
  app.require_subcommand(1);

  Common c;
  auto* run = app.add_subcommand("run-vqe", "theta scan per bond length, writes energy_curve CSV");
  add_common(run, c, true);
  auto* sw = app.add_subcommand("sweep", "gate-error sweep at one bond length, writes noise_sweep CSV");
  add_common(sw, c, true);
  auto* ex = app.add_subcommand("exact-curve", "exact ground energy per table row");
  add_common(ex, c, false);
  std::string family = "bare";
  auto* cal = app.add_subcommand("calibrate", "response matrix for a family under the configured noise");
  add_common(cal, c, false);
  cal->add_option("--family", family, "circuit family");

  std::string hist, resp, unfold_out;
  int max_iters = 100;
  double tol = 1e-6;
  auto* unf = app.add_subcommand("unfold", "Bayesian unfolding of a histogram");
  unf->add_option("--histogram", hist, "CSV bitstring,count")->required();
  unf->add_option("--response", resp, "response matrix CSV")->required();
  unf->add_option("--out", unfold_out, "output CSV path")->required();
  unf->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);
  unf->add_option("--tol", tol)->check(CLI::PositiveNumber);

  auto* pre = app.add_subcommand("presets", "list scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_vqe(c);
    if (*sw) return sweep(c);
    if (*ex) return exact_curve(c);
    if (*cal) return calibrate_cmd(c, family);
    if (*unf) return unfold_cmd(hist, resp, unfold_out, max_iters, tol);
    if (*pre) {
      std::cout << "run-vqe presets:\n";
      for (const auto& p : run_presets()) std::cout << "  " << p.name << "  " << p.description << '\n';
      std::cout << "sweep presets:\n";
      for (const auto& p : sweep_presets()) std::cout << "  " << p.name << "  " << p.description << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "vqemit: " << to_string(e.kind()) << " error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "vqemit: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
