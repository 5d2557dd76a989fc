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

#include "vqemit/mitigation.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vqemit/error.hpp"

namespace vqemit {

namespace {

int bits_of(std::size_t len) {
  if (len == 0 || (len & (len - 1)) != 0)
    throw Error(ErrorKind::dimension, "length " + std::to_string(len) + " is not a power of two");
  return std::countr_zero(len);
}

void check_observable(std::span<const int> a, int m) {
  if (m < 1) throw Error(ErrorKind::parameter, "copy width must be positive");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= m)
      throw Error(ErrorKind::parameter, "observable qubit " + std::to_string(a[i]) +
                                            " outside a copy of " + std::to_string(m));
    for (std::size_t j = 0; j < i; ++j)
      if (a[i] == a[j]) throw Error(ErrorKind::parameter, "observable qubit listed twice");
  }
}

// Numerator and denominator weights of one 2m-bit outcome.
std::pair<double, double> duplicate_weights(std::size_t outcome, std::uint32_t a_mask, int m,
                                            const DuplicateWeights& w) {
  double num = 1.0, den = 1.0;
  for (int i = 0; i < m; ++i) {
    const std::size_t pair = ((outcome >> i) & 1U) | (((outcome >> (i + m)) & 1U) << 1);
    den *= w.s[pair];
    num *= ((a_mask >> i) & 1U) ? w.d[pair] : w.s[pair];
  }
  return {num, den};
}

std::uint32_t mask_of(std::span<const int> a) {
  std::uint32_t mask = 0;
  for (int q : a) mask |= 1U << q;
  return mask;
}

}  // namespace

void ResponseMatrix::validate() const {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  if (r.rows() != d || r.cols() != d)
    throw Error(ErrorKind::dimension, "response matrix shape does not match qubit count");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(r.col(i).sum() - 1.0) > 1e-9)
      throw Error(ErrorKind::normalization,
                  "response column " + std::to_string(i) + " does not sum to one");
    if (r.col(i).minCoeff() < 0.0 || r.col(i).maxCoeff() > 1.0)
      throw Error(ErrorKind::range, "response entries must lie in [0, 1]");
  }
}

ProbabilityVector ResponseMatrix::apply(const ProbabilityVector& truth) const {
  if (static_cast<Eigen::Index>(truth.size()) != r.cols())
    throw Error(ErrorKind::dimension, "spectrum length does not match response matrix");
  Eigen::Map<const Eigen::VectorXd> t(truth.data(), static_cast<Eigen::Index>(truth.size()));
  Eigen::VectorXd m = r * t;
  return {m.data(), m.data() + m.size()};
}

ResponseMatrix estimate_response_matrix(const std::vector<ProbabilityVector>& distributions) {
  const int n = bits_of(distributions.size());
  ResponseMatrix out;
  out.n_qubits = n;
  const auto d = static_cast<Eigen::Index>(distributions.size());
  out.r.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& col = distributions[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(col.size()) != d)
      throw Error(ErrorKind::arity, "calibration result " + std::to_string(i) + " has " +
                                        std::to_string(col.size()) + " outcomes, expected " +
                                        std::to_string(d));
    double total = 0.0;
    for (double v : col) total += v;
    if (total <= 0.0) throw Error(ErrorKind::singular_response, "empty calibration column");
    for (Eigen::Index j = 0; j < d; ++j) out.r(j, i) = col[static_cast<std::size_t>(j)] / total;
  }
  return out;
}

ResponseMatrix estimate_response_matrix(const std::vector<ShotHistogram>& histograms) {
  std::vector<ProbabilityVector> cols;
  cols.reserve(histograms.size());
  const std::size_t expected = histograms.size();
  if (expected == 0 || (expected & (expected - 1)) != 0)
    throw Error(ErrorKind::arity, "need 2^n calibration histograms, got " + std::to_string(expected));
  for (const auto& h : histograms) {
    if (h.counts.size() != expected)
      throw Error(ErrorKind::arity, "calibration histogram width does not match the count of circuits");
    cols.push_back(h.frequencies());
  }
  return estimate_response_matrix(cols);
}

UnfoldResult brem_unfold(const ProbabilityVector& measured, const ResponseMatrix& response,
                         const UnfoldOptions& opts) {
  const auto d = response.r.cols();
  if (response.r.rows() != d || static_cast<Eigen::Index>(measured.size()) != d)
    throw Error(ErrorKind::dimension, "measured spectrum and response matrix disagree in size");
  if (opts.max_iters < 1) throw Error(ErrorKind::parameter, "max_iters must be positive");
  for (Eigen::Index i = 0; i < d; ++i)
    if (response.r.col(i).cwiseAbs().sum() == 0.0)
      throw Error(ErrorKind::singular_response, "response column " + std::to_string(i) + " is all zero");

  Eigen::Map<const Eigen::VectorXd> m(measured.data(), d);
  if (std::abs(m.sum() - 1.0) > 1e-8)
    throw Error(ErrorKind::normalization, "measured spectrum is not normalized");

  Eigen::VectorXd t = Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d));
  Eigen::VectorXd folded(d), ratio(d), next(d);
  UnfoldResult res;
  for (int it = 1; it <= opts.max_iters; ++it) {
    folded.noalias() = response.r * t;
    for (Eigen::Index j = 0; j < d; ++j) ratio(j) = folded(j) > 0.0 ? m(j) / folded(j) : 0.0;
    next.noalias() = response.r.transpose() * ratio;
    next = next.cwiseProduct(t);
    const double total = next.sum();
    if (total <= 0.0) throw Error(ErrorKind::singular_response, "unfolding lost all probability mass");
    next /= total;
    const double change = (next - t).cwiseAbs().sum();
    t.swap(next);
    res.iterations = it;
    if (change < opts.tol) break;
  }
  res.spectrum.assign(t.data(), t.data() + d);
  return res;
}

std::size_t decode_logical(std::size_t outcome) {
  const std::size_t b1 = outcome & 1U, b2 = (outcome >> 1) & 1U, b3 = (outcome >> 2) & 1U;
  return (b3 ^ b1) | ((b2 ^ b1) << 1);
}

bool passes_checks(std::size_t outcome, const PostSelectOptions& opts) {
  const bool a1 = (outcome >> 4) & 1U, a2 = (outcome >> 5) & 1U;
  const bool odd = std::popcount(outcome & 0xFU) & 1U;
  return !a1 && !(opts.require_a2_zero && a2) && !odd;
}

PostSelectionReport qec_postselect(const ShotHistogram& h, const PostSelectOptions& opts) {
  if (h.n_bits != 6) throw Error(ErrorKind::dimension, "post-selection expects 6-bit outcomes");
  PostSelectionReport rep;
  rep.logical.n_bits = 2;
  rep.logical.counts.assign(4, 0);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (passes_checks(k, opts)) {
      rep.logical.counts[decode_logical(k)] += h.counts[k];
      rep.kept_shots += h.counts[k];
    } else {
      rep.discarded_shots += h.counts[k];
    }
  }
  if (rep.kept_shots == 0) throw Error(ErrorKind::all_discarded, "post-selection discarded every shot");
  rep.logical.shots = rep.kept_shots;
  rep.retention_ratio = static_cast<double>(rep.kept_shots) / static_cast<double>(h.shots);
  return rep;
}

LogicalDistribution qec_postselect(const ProbabilityVector& p, const PostSelectOptions& opts) {
  if (p.size() != 64) throw Error(ErrorKind::dimension, "post-selection expects 6-bit outcomes");
  LogicalDistribution out;
  out.logical.assign(4, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (passes_checks(k, opts)) out.logical[decode_logical(k)] += p[k];
  double kept = 0.0;
  for (double v : out.logical) kept += v;
  if (kept <= 1e-15) throw Error(ErrorKind::all_discarded, "post-selection discarded all probability");
  for (double& v : out.logical) v /= kept;
  out.retention_ratio = kept;
  return out;
}

ProbabilityVector qec_decode_all(const ProbabilityVector& p) {
  if (p.size() != 64) throw Error(ErrorKind::dimension, "decoding expects 6-bit outcomes");
  ProbabilityVector out(4, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) out[decode_logical(k)] += p[k];
  return out;
}

DuplicateWeights DuplicateWeights::from_b(const Eigen::Matrix4cd& b) {
  // Local pair index = bit(copy A) + 2 bit(copy B).
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  Eigen::Matrix4cd zsym = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) {
    const double za = (k & 1) ? -1.0 : 1.0, zb = (k & 2) ? -1.0 : 1.0;
    zsym(k, k) = 0.5 * (za + zb);
  }
  // After rho -> B rho B^dag a Z-basis readout of D estimates Tr(B^dag D B rho),
  // so D = B O B^dag reproduces O.
  const Eigen::Matrix4cd dd = b * (zsym * swap) * b.adjoint();
  const Eigen::Matrix4cd ss = b * swap * b.adjoint();
  DuplicateWeights w;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      if (std::abs(dd(i, j)) > 1e-12 || std::abs(ss(i, j)) > 1e-12)
        throw Error(ErrorKind::degenerate, "B does not diagonalize the swap observables");
    }
  for (int i = 0; i < 4; ++i) {
    w.d[static_cast<std::size_t>(i)] = dd(i, i).real();
    w.s[static_cast<std::size_t>(i)] = ss(i, i).real();
  }
  return w;
}

const DuplicateWeights& DuplicateWeights::standard() {
  static const DuplicateWeights w = from_b(b_matrix());
  return w;
}

DuplicateEstimate duplicate_estimate(const ShotHistogram& h, std::span<const int> observable_qubits,
                                     int m) {
  check_observable(observable_qubits, m);
  if (h.n_bits != 2 * m) throw Error(ErrorKind::dimension, "duplicate outcomes must have 2m bits");
  if (h.shots == 0) throw Error(ErrorKind::parse, "histogram holds zero shots");
  const auto& w = DuplicateWeights::standard();
  const std::uint32_t mask = mask_of(observable_qubits);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const auto [wn, wd] = duplicate_weights(k, mask, m, w);
    num += wn * static_cast<double>(h.counts[k]);
    den += wd * static_cast<double>(h.counts[k]);
  }
  const double shots = static_cast<double>(h.shots);
  DuplicateEstimate e{num / shots, den / shots, 0.0};
  if (std::abs(e.denominator) < 10.0 / shots)
    throw Error(ErrorKind::unstable_denominator,
                "duplicate denominator " + std::to_string(e.denominator) + " below 10/shots");
  e.ratio = e.numerator / e.denominator;
  return e;
}

DuplicateEstimate duplicate_estimate(const ProbabilityVector& p, std::span<const int> observable_qubits,
                                     int m, double min_denominator) {
  check_observable(observable_qubits, m);
  if (p.size() != (std::size_t{1} << (2 * m)))
    throw Error(ErrorKind::dimension, "duplicate outcomes must have 2m bits");
  const auto& w = DuplicateWeights::standard();
  const std::uint32_t mask = mask_of(observable_qubits);
  DuplicateEstimate e;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto [wn, wd] = duplicate_weights(k, mask, m, w);
    e.numerator += wn * p[k];
    e.denominator += wd * p[k];
  }
  if (std::abs(e.denominator) < min_denominator)
    throw Error(ErrorKind::unstable_denominator,
                "duplicate denominator " + std::to_string(e.denominator) + " below guard");
  e.ratio = e.numerator / e.denominator;
  return e;
}

double duplicate_oracle(const DensityMatrix& rho, const PauliString& o) {
  if (o.size() != rho.n_qubits()) throw Error(ErrorKind::dimension, "observable size mismatch");
  const Eigen::MatrixXcd r2 = rho.data() * rho.data();
  const double purity = r2.trace().real();
  if (purity < 1e-12) throw Error(ErrorKind::degenerate, "state purity vanishes");
  return (o.matrix() * r2).trace().real() / purity;
}

double expectation_from_distribution(const ProbabilityVector& p, std::span<const int> bits) {
  const int n = bits_of(p.size());
  std::size_t mask = 0;
  for (int b : bits) {
    if (b < 0 || b >= n) throw Error(ErrorKind::parameter, "bit index outside outcome width");
    mask |= std::size_t{1} << b;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) acc += (std::popcount(k & mask) & 1) ? -p[k] : p[k];
  return acc;
}

double expectation_from_histogram(const ShotHistogram& h, std::span<const int> bits) {
  return expectation_from_distribution(h.frequencies(), bits);
}

}  // namespace vqemit
