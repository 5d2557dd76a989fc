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

#include "vqemit/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "vqemit/error.hpp"
#include "vqemit/rng.hpp"

namespace vqemit {

namespace {

// Which measurement a circuit of a family serves.
enum class Role { zz, xx, yy, zz_folded, xx_folded, yy_folded };

struct Plan {
  Family family;
  int width = 2;
  NoiseModel noise;
  std::vector<Role> roles;
  DuplicateOptions dup;
};

bool is_duplicate(Family f) {
  return f == Family::duplicate || f == Family::duplicate_ideal_b ||
         f == Family::duplicate_2q_noise_only;
}

Plan make_plan(const ScanConfig& cfg) {
  Plan p;
  p.family = cfg.family;
  p.noise = cfg.noise;
  if (is_duplicate(cfg.family)) {
    p.width = 4;
    p.roles = {Role::zz, Role::zz_folded, Role::xx_folded};
    if (cfg.y_basis) p.roles.push_back(Role::yy_folded);
    p.dup.b_form = cfg.b_form;
    p.dup.ideal_b = cfg.family == Family::duplicate_ideal_b;
    if (cfg.family == Family::duplicate_2q_noise_only) p.noise.p1 = 0.0;
  } else {
    p.width = cfg.family == Family::encoded ? CodeSpec::kQubits : 2;
    p.roles = {Role::zz, Role::xx};
    if (cfg.y_basis) p.roles.push_back(Role::yy);
  }
  return p;
}

MeasurementBasis basis_of(Role r) {
  switch (r) {
    case Role::zz:
    case Role::zz_folded: return MeasurementBasis::ZZ;
    case Role::xx:
    case Role::xx_folded: return MeasurementBasis::XX;
    default: return MeasurementBasis::YY;
  }
}

Circuit build(const Plan& plan, Role role, double theta) {
  const MeasurementBasis b = basis_of(role);
  switch (plan.family) {
    case Family::bare: return bare_ansatz(theta, b);
    case Family::encoded: return encoded_ansatz(theta, b);
    default: {
      DuplicateOptions o = plan.dup;
      o.parity_fold = role == Role::zz_folded || role == Role::xx_folded || role == Role::yy_folded;
      return duplicate_ansatz(theta, b, o);
    }
  }
}

struct Terms {
  TermExpectations raw;
  std::optional<TermExpectations> mitigated;
  std::optional<double> retention;
  std::optional<double> denominator;
};

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Hamiltonian terms from direct two-qubit spectra, one per role.
TermExpectations direct_terms(const std::vector<Role>& roles, const std::vector<ProbabilityVector>& spectra) {
  static const int z1[] = {0}, z2[] = {1}, both[] = {0, 1};
  TermExpectations t;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    const auto& p = spectra[i];
    switch (roles[i]) {
      case Role::zz:
        t.z1 = expectation_from_distribution(p, z1);
        t.z2 = expectation_from_distribution(p, z2);
        t.z1z2 = expectation_from_distribution(p, both);
        break;
      case Role::xx: t.x1x2 = expectation_from_distribution(p, both); break;
      case Role::yy: t.y1y2 = expectation_from_distribution(p, both); break;
      default: break;
    }
  }
  return t;
}

std::pair<TermExpectations, double> duplicate_terms(const std::vector<Role>& roles,
                                                    const std::vector<ProbabilityVector>& spectra,
                                                    double guard) {
  static const int first[] = {0}, second[] = {1};
  TermExpectations t;
  double den = 0.0;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    const auto& p = spectra[i];
    switch (roles[i]) {
      case Role::zz: {
        const auto e1 = duplicate_estimate(p, first, 2, guard);
        t.z1 = clamp_unit(e1.ratio);
        t.z2 = clamp_unit(duplicate_estimate(p, second, 2, guard).ratio);
        den = e1.denominator;
        break;
      }
      // Folded circuits carry the copy parity on the second qubit.
      case Role::zz_folded: t.z1z2 = clamp_unit(duplicate_estimate(p, second, 2, guard).ratio); break;
      case Role::xx_folded: t.x1x2 = clamp_unit(duplicate_estimate(p, second, 2, guard).ratio); break;
      case Role::yy_folded: t.y1y2 = clamp_unit(duplicate_estimate(p, second, 2, guard).ratio); break;
      default: break;
    }
  }
  return {t, den};
}

ProbabilityVector postselected_spectrum(const ProbabilityVector& p, const PostSelectOptions& o) {
  ProbabilityVector out(p.size(), 0.0);
  double kept = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (passes_checks(k, o)) {
      out[k] = p[k];
      kept += p[k];
    }
  if (kept <= 1e-15) throw Error(ErrorKind::all_discarded, "post-selection discarded all probability");
  for (double& v : out) v /= kept;
  return out;
}

Terms evaluate(const Plan& plan, const ScanConfig& cfg, const std::vector<ProbabilityVector>& measured,
               const ResponseMatrix* response, double guard) {
  Terms out;
  auto unfold = [&](const ProbabilityVector& p) {
    return brem_unfold(p, *response, cfg.brem_options).spectrum;
  };

  if (plan.family == Family::bare) {
    out.raw = direct_terms(plan.roles, measured);
    if (response) {
      std::vector<ProbabilityVector> u;
      for (const auto& p : measured) u.push_back(unfold(p));
      out.mitigated = direct_terms(plan.roles, u);
    } else {
      out.mitigated = out.raw;
    }
    return out;
  }

  if (plan.family == Family::encoded) {
    const PostSelectOptions ps{cfg.postselect_a2};
    std::vector<ProbabilityVector> raw_logical, kept_logical;
    for (const auto& p : measured) raw_logical.push_back(qec_decode_all(p));
    out.raw = direct_terms(plan.roles, raw_logical);
    try {
      for (std::size_t i = 0; i < measured.size(); ++i) {
        ProbabilityVector p = measured[i];
        if (response && cfg.brem_order == BremOrder::unfold_then_postselect) p = unfold(p);
        if (response && cfg.brem_order == BremOrder::postselect_then_unfold)
          p = unfold(postselected_spectrum(p, ps));
        const LogicalDistribution sel = qec_postselect(p, ps);
        if (plan.roles[i] == Role::zz) out.retention = sel.retention_ratio;
        kept_logical.push_back(sel.logical);
      }
      out.mitigated = direct_terms(plan.roles, kept_logical);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::all_discarded) throw;
      out.mitigated.reset();
    }
    return out;
  }

  auto [raw, den] = duplicate_terms(plan.roles, measured, guard);
  out.raw = raw;
  out.denominator = den;
  if (response) {
    std::vector<ProbabilityVector> u;
    for (const auto& p : measured) u.push_back(unfold(p));
    auto [mit, mden] = duplicate_terms(plan.roles, u, guard);
    out.mitigated = mit;
    out.denominator = mden;
  } else {
    out.mitigated = raw;
  }
  return out;
}


std::vector<std::size_t> selected_rows(const ScanConfig& cfg, const CoefficientTable& table) {
  std::vector<std::size_t> rows;
  if (cfg.r_list.empty()) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) rows.push_back(i);
  } else {
    for (double r : cfg.r_list) rows.push_back(table.index_of(r));
  }
  return rows;
}

struct ScanState {
  Plan plan;
  std::vector<double> thetas;
  std::vector<std::vector<ProbabilityVector>> exact;  // [theta][role]
  std::optional<ResponseMatrix> response;
};

ScanState prepare(const ScanConfig& cfg) {
  cfg.validate();
  ScanState st;
  st.plan = make_plan(cfg);
  st.thetas = theta_grid(cfg.theta_points);
  st.exact.resize(st.thetas.size());
  parallel_for(st.thetas.size(), cfg.jobs, [&](std::size_t i) {
    std::vector<ProbabilityVector> ps;
    for (Role r : st.plan.roles) ps.push_back(execute_exact(build(st.plan, r, st.thetas[i]), st.plan.noise));
    st.exact[i] = std::move(ps);
  });
  if (cfg.brem) st.response = calibration_response(cfg);
  return st;
}

// Terms at (row, theta index). Exact mode ignores the row.
Terms terms_at(const ScanState& st, const ScanConfig& cfg, std::size_t row, std::size_t ti) {
  const ResponseMatrix* resp = st.response ? &*st.response : nullptr;
  if (cfg.exact) return evaluate(st.plan, cfg, st.exact[ti], resp, 1e-12);
  std::vector<ProbabilityVector> freq;
  for (std::size_t c = 0; c < st.plan.roles.size(); ++c) {
    const auto seed = derive_seed(cfg.seed, {row, ti, static_cast<std::uint64_t>(st.plan.family), c});
    freq.push_back(sample_shots(st.exact[ti][c], cfg.shots, seed).frequencies());
  }
  return evaluate(st.plan, cfg, freq, resp, 10.0 / static_cast<double>(cfg.shots));
}

PointEnergy energy_of(const Terms& t, const Coefficients& g) {
  PointEnergy e;
  e.e_raw = assemble_energy(g, t.raw);
  if (t.mitigated) e.e_mitigated = assemble_energy(g, *t.mitigated);
  e.retention_ratio = t.retention;
  e.duplicate_denominator = t.denominator;
  return e;
}

EnergyRecord summarize(const ScanConfig& cfg, const CoefficientTable& table, std::size_t row,
                       const std::vector<double>& thetas, const std::vector<PointEnergy>& pts) {
  const auto& r = table.rows[row];
  std::vector<ThetaEnergy> raw, mit;
  std::vector<std::size_t> mit_index;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    raw.push_back({thetas[i], pts[i].e_raw});
    if (pts[i].e_mitigated) {
      mit.push_back({thetas[i], *pts[i].e_mitigated});
      mit_index.push_back(i);
    }
  }
  if (mit.empty())
    throw Error(ErrorKind::all_discarded,
                "post-selection discarded everything at every angle for r = " + std::to_string(r.r_angstrom));
  EnergyRecord rec;
  rec.family = cfg.family;
  rec.scenario = cfg.scenario;
  rec.r_angstrom = r.r_angstrom;
  const ThetaEnergy best_raw = min_over_theta(raw);
  const ThetaEnergy best_mit = min_over_theta(mit);
  rec.theta_star_raw = best_raw.theta;
  rec.e_raw = best_raw.energy;
  rec.theta_star = best_mit.theta;
  rec.e_mitigated = best_mit.energy;
  rec.e_exact = exact_ground_energy(hamiltonian(r.g));
  for (std::size_t k = 0; k < mit.size(); ++k)
    if (mit[k].theta == best_mit.theta) {
      rec.retention_ratio = pts[mit_index[k]].retention_ratio;
      rec.duplicate_denominator = pts[mit_index[k]].duplicate_denominator;
    }
  rec.skipped_thetas = static_cast<int>(pts.size() - mit.size());
  if (!cfg.exact) {
    rec.shots = cfg.shots;
    rec.seed = cfg.seed;
  }
  return rec;
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::bare: return "bare";
    case Family::encoded: return "encoded";
    case Family::duplicate: return "duplicate";
    case Family::duplicate_ideal_b: return "duplicate_ideal_b";
    case Family::duplicate_2q_noise_only: return "duplicate_2q_noise_only";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::bare, Family::encoded, Family::duplicate, Family::duplicate_ideal_b,
                   Family::duplicate_2q_noise_only})
    if (name == to_string(f)) return f;
  throw Error(ErrorKind::config, "unknown circuit family '" + name + "'");
}

void ScanConfig::validate() const {
  if (theta_points < 2) throw Error(ErrorKind::config, "theta_points must be at least 2");
  if (!exact && shots == 0) throw Error(ErrorKind::config, "shots must be positive");
  if (brem && !exact && calibration_shots == 0)
    throw Error(ErrorKind::config, "calibration shots must be positive");
  if (brem_options.max_iters < 1) throw Error(ErrorKind::config, "brem_max_iters must be positive");
  if (!(brem_options.tol > 0.0)) throw Error(ErrorKind::config, "brem_tol must be positive");
  try {
    noise.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::config, e.what());
  }
}

ResponseMatrix calibration_response(const ScanConfig& cfg) {
  const Plan plan = make_plan(cfg);
  const auto circuits = calibration_circuits(plan.width);
  NoiseModel noise = plan.noise;
  if (!cfg.calibration_gate_noise) noise.p1 = noise.p2 = 0.0;
  std::vector<ProbabilityVector> cols(circuits.size());
  parallel_for(circuits.size(), cfg.jobs, [&](std::size_t k) {
    ProbabilityVector p = execute_exact(circuits[k], noise);
    if (!cfg.exact) {
      const auto seed = derive_seed(cfg.seed, {0xCA11B8A7EULL, static_cast<std::uint64_t>(plan.family), k});
      p = sample_shots(p, cfg.calibration_shots, seed).frequencies();
    }
    cols[k] = std::move(p);
  });
  return estimate_response_matrix(cols);
}

std::vector<double> theta_grid(int points) {
  if (points < 2) throw Error(ErrorKind::parameter, "theta grid needs at least 2 points");
  std::vector<double> t(static_cast<std::size_t>(points));
  const double step = 2.0 * std::numbers::pi / (points - 1);
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = -std::numbers::pi + step * i;
  t.back() = std::numbers::pi;
  return t;
}

ThetaEnergy min_over_theta(std::span<const ThetaEnergy> curve) {
  if (curve.empty()) throw Error(ErrorKind::parameter, "minimum over an empty curve");
  ThetaEnergy best = curve.front();
  for (const auto& p : curve.subspan(1)) {
    if (p.energy < best.energy - 1e-12 ||
        (std::abs(p.energy - best.energy) <= 1e-12 && p.theta < best.theta))
      best = p;
  }
  return best;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<PointEnergy> energy_curve(const ScanConfig& cfg, const CoefficientTable& table, std::size_t row) {
  if (row >= table.rows.size()) throw Error(ErrorKind::lookup, "row index outside table");
  const ScanState st = prepare(cfg);
  std::vector<PointEnergy> pts(st.thetas.size());
  parallel_for(st.thetas.size(), cfg.jobs, [&](std::size_t i) {
    pts[i] = energy_of(terms_at(st, cfg, row, i), table.rows[row].g);
  });
  return pts;
}

std::vector<EnergyRecord> run_scan(const ScanConfig& cfg, const CoefficientTable& table) {
  if (table.rows.empty()) throw Error(ErrorKind::parse, "coefficient table is empty");
  const std::vector<std::size_t> rows = selected_rows(cfg, table);
  const ScanState st = prepare(cfg);
  const std::size_t nt = st.thetas.size();

  std::vector<std::vector<PointEnergy>> curves(rows.size(), std::vector<PointEnergy>(nt));
  if (cfg.exact) {
    // Measured terms do not depend on the bond length; evaluate once per angle.
    std::vector<Terms> terms(nt);
    parallel_for(nt, cfg.jobs, [&](std::size_t i) { terms[i] = terms_at(st, cfg, 0, i); });
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t i = 0; i < nt; ++i) curves[k][i] = energy_of(terms[i], table.rows[rows[k]].g);
  } else {
    parallel_for(rows.size() * nt, cfg.jobs, [&](std::size_t task) {
      const std::size_t k = task / nt, i = task % nt;
      curves[k][i] = energy_of(terms_at(st, cfg, rows[k], i), table.rows[rows[k]].g);
    });
  }
  std::vector<EnergyRecord> out;
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out.push_back(summarize(cfg, table, rows[k], st.thetas, curves[k]));
  return out;
}

std::vector<SweepRow> gate_error_sweep(const SweepConfig& cfg, const CoefficientTable& table) {
  for (double rate : cfg.rates)
    if (!(rate >= 0.0 && rate <= 0.5))
      throw Error(ErrorKind::config, "sweep rate " + std::to_string(rate) + " outside [0, 0.5]");
  std::vector<SweepRow> out;
  for (double rate : cfg.rates) {
    for (Family v : cfg.variants) {
      ScanConfig sc;
      sc.family = v;
      sc.theta_points = cfg.theta_points;
      sc.r_list = {cfg.r_angstrom};
      sc.exact = true;
      sc.noise = NoiseModel::depolarizing(rate);
      sc.b_form = cfg.b_form;
      sc.jobs = cfg.jobs;
      const EnergyRecord rec = run_scan(sc, table).front();
      out.push_back({rate, v, std::abs(rec.e_mitigated - rec.e_exact)});
    }
  }
  return out;
}

}  // namespace vqemit
