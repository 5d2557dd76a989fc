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
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqemit/densesim.hpp"

namespace vqemit {

/// R(j, i) = Pr(measure j | prepared i); columns sum to one.
struct ResponseMatrix {
  int n_qubits = 0;
  Eigen::MatrixXd r;

  void validate() const;
  ProbabilityVector apply(const ProbabilityVector& truth) const;
};

/// Column i comes from the histogram of calibration circuit i.
ResponseMatrix estimate_response_matrix(const std::vector<ShotHistogram>& histograms);
ResponseMatrix estimate_response_matrix(const std::vector<ProbabilityVector>& distributions);

struct UnfoldOptions {
  int max_iters = 100;
  double tol = 1e-6;  // L1 change between iterates
};

struct UnfoldResult {
  ProbabilityVector spectrum;
  int iterations = 0;
};

/// Iterative Bayesian unfolding from a uniform prior:
///   t_i <- sum_j m_j R(j,i) t_i / sum_s R(j,s) t_s
UnfoldResult brem_unfold(const ProbabilityVector& measured, const ResponseMatrix& response,
                         const UnfoldOptions& opts = {});

// ---- [[4,2,2]] post-selection --------------------------------------------

struct PostSelectOptions {
  bool require_a2_zero = true;
};

/// Logical bits of a 6-bit outcome: z1 = b3^b1, z2 = b2^b1 (bit 0 = z1).
std::size_t decode_logical(std::size_t outcome);
/// True when a1 = 0, (a2 = 0 if required) and the data parity is even.
bool passes_checks(std::size_t outcome, const PostSelectOptions& opts = {});

struct PostSelectionReport {
  std::uint64_t kept_shots = 0;
  std::uint64_t discarded_shots = 0;
  double retention_ratio = 0.0;
  ShotHistogram logical;  // 2-bit keys
};

PostSelectionReport qec_postselect(const ShotHistogram& h, const PostSelectOptions& opts = {});

struct LogicalDistribution {
  ProbabilityVector logical;  // 4 entries, renormalized
  double retention_ratio = 0.0;
};

/// Same as qec_postselect on an exact 6-bit distribution.
LogicalDistribution qec_postselect(const ProbabilityVector& p, const PostSelectOptions& opts = {});
/// Decodes every outcome without discarding anything.
ProbabilityVector qec_decode_all(const ProbabilityVector& p);

// ---- duplicate-circuit estimator ----------------------------------------

/// Per-pair outcome weights for the layout where pair outcome
/// m = bit(copy A) + 2 bit(copy B). d weighs a copy-symmetrized Z, s the
/// swap; both are diagonals of the operators conjugated into the
/// measurement frame of the B gate.
struct DuplicateWeights {
  std::array<double, 4> d{};
  std::array<double, 4> s{};

  /// Derived from the B matrix; throws if the conjugated operators are not
  /// diagonal.
  static DuplicateWeights from_b(const Eigen::Matrix4cd& b);
  static const DuplicateWeights& standard();
};

struct DuplicateEstimate {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

/// Estimates Tr(O rho^2)/Tr(rho^2) with O = Z on the copy qubits in
/// `observable_qubits` (0-based, each < m). Outcomes have 2m bits; copy A is
/// bits 0..m-1 and copy B bits m..2m-1.
DuplicateEstimate duplicate_estimate(const ShotHistogram& h, std::span<const int> observable_qubits,
                                     int m = 2);
/// Distribution version. Shot-derived spectra should pass 10/shots as the
/// guard; exact distributions keep the default.
DuplicateEstimate duplicate_estimate(const ProbabilityVector& p,
                                     std::span<const int> observable_qubits, int m = 2,
                                     double min_denominator = 1e-12);

/// Tr(O rho^2) / Tr(rho^2) by direct matrix algebra.
double duplicate_oracle(const DensityMatrix& rho, const PauliString& o);

/// sum_b freq(b) (-1)^{parity of b on `bits`}.
double expectation_from_histogram(const ShotHistogram& h, std::span<const int> bits);
double expectation_from_distribution(const ProbabilityVector& p, std::span<const int> bits);

}  // namespace vqemit
