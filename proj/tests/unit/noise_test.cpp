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

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <algorithm>
#include <variant>

#include "oracles.hpp"
#include "vqemit/circuits.hpp"
#include "vqemit/error.hpp"
#include "vqemit/noise.hpp"

namespace vqemit {
namespace {

using oracle::Mat;

TEST(Depolarize, ZeroRateIsIdentity) {
  std::mt19937_64 rng(1);
  const DensityMatrix rho(2, oracle::random_mixed(4, rng));
  const std::vector<int> t = {0, 1};
  EXPECT_EQ((depolarize(rho, t, 0.0).data() - rho.data()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Depolarize, FullRateOnSingleQubitGivesMaximallyMixed) {
  const std::vector<int> t = {0};
  const auto out = depolarize(init_state(1), t, 1.0);
  EXPECT_LT((out.data() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Depolarize, HalfRateOnZero) {
  const std::vector<int> t = {0};
  const auto out = depolarize(init_state(1), t, 0.5);
  EXPECT_NEAR(out.data()(0, 0).real(), 0.75, 1e-15);
  EXPECT_NEAR(out.data()(1, 1).real(), 0.25, 1e-15);
}

// E(rho) = (1-p) rho + p (I/2^k tensor Tr_T rho), built from the oracle partial trace.
TEST(Depolarize, MatchesPartialTraceFormula) {
  std::mt19937_64 rng(2);
  const int n = 3;
  const Mat rho = oracle::random_mixed(8, rng);
  for (const std::vector<int>& t : {std::vector<int>{1}, std::vector<int>{2, 0}}) {
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
      if (std::find(t.begin(), t.end(), q) == t.end()) rest.push_back(q);
    const Mat reduced = oracle::partial_trace(rho, n, rest);
    const int k = static_cast<int>(t.size());
    // Operator order: targets on the low bits, rest above, then permute back.
    const Mat local = Eigen::kroneckerProduct(reduced, oracle::id(1 << k) / double(1 << k)).eval();
    std::vector<int> order = t;
    order.insert(order.end(), rest.begin(), rest.end());
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;
    const Mat p = oracle::qubit_permutation(n, perm);
    const Mat mixed = p.adjoint() * local * p;
    const double rate = 0.3;
    const Mat expected = (1 - rate) * rho + rate * mixed;
    EXPECT_LT((depolarize(DensityMatrix(n, rho), t, rate).data() - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Depolarize, IdempotentAtFullRate) {
  std::mt19937_64 rng(3);
  const DensityMatrix rho(2, oracle::random_mixed(4, rng));
  const std::vector<int> t = {1};
  const auto once = depolarize(rho, t, 1.0);
  EXPECT_LT((depolarize(once, t, 1.0).data() - once.data()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Depolarize, RejectsBadRate) {
  const std::vector<int> t = {0};
  EXPECT_THROW(depolarize(init_state(1), t, 1.5), Error);
  EXPECT_THROW(depolarize(init_state(1), t, -0.1), Error);
}

TEST(ReadoutError, ZeroFlipsIsIdentity) {
  const ProbabilityVector p = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(apply_readout_error(p, NoiseModel{}), p);
}

TEST(ReadoutError, SingleBitFlip) {
  NoiseModel m;
  m.readout = {0.04, 0.0};
  EXPECT_LT(oracle::max_abs_diff(apply_readout_error({1.0, 0.0}, m), {0.96, 0.04}), 1e-15);
}

TEST(ReadoutError, TwoQubitSymmetricFlips) {
  const auto out = apply_readout_error({1.0, 0.0, 0.0, 0.0}, NoiseModel::readout_only(0.02));
  EXPECT_LT(oracle::max_abs_diff(out, {0.9604, 0.0196, 0.0196, 0.0004}), 1e-15);
}

TEST(ReadoutError, MatchesKroneckerConfusionMatrix) {
  NoiseModel m;
  m.readout = {0.03, 0.07};
  m.per_qubit = {{0.01, 0.02}, {0.03, 0.07}, {0.05, 0.0}};
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(1, 1);
  for (int q = 0; q < 3; ++q) {
    const auto e = m.readout_for(q);
    Eigen::MatrixXd cq(2, 2);
    cq << 1 - e.p01, e.p10, e.p01, 1 - e.p10;
    c = Eigen::kroneckerProduct(cq, c).eval();
  }
  std::mt19937_64 rng(4);
  const auto psi = oracle::random_pure(8, rng);
  ProbabilityVector p(8);
  for (int i = 0; i < 8; ++i) p[static_cast<std::size_t>(i)] = std::norm(psi(i));
  const Eigen::VectorXd ref = c * Eigen::Map<const Eigen::VectorXd>(p.data(), 8);
  const auto out = apply_readout_error(p, m);
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(out[static_cast<std::size_t>(i)], ref(i), 1e-15);
    sum += out[static_cast<std::size_t>(i)];
  }
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(Execute, NoiseFreeReferenceState) {
  const auto out = execute(bare_ansatz(0.0, MeasurementBasis::ZZ), NoiseModel{}, ExecutionMode::exact());
  const auto& p = std::get<ProbabilityVector>(out);
  EXPECT_LT(oracle::max_abs_diff(p, {1, 0, 0, 0}), 1e-15);
}

TEST(Execute, FullDepolarizingGivesUniformMarginal) {
  const auto p = execute_exact(bare_ansatz(0.7, MeasurementBasis::XX), NoiseModel::depolarizing(1.0));
  EXPECT_LT(oracle::max_abs_diff(p, {0.25, 0.25, 0.25, 0.25}), 1e-14);
  const auto enc = execute_exact(encoded_ansatz(0.7, MeasurementBasis::ZZ), NoiseModel::depolarizing(1.0));
  EXPECT_LT(oracle::max_abs_diff(enc, ProbabilityVector(64, 1.0 / 64)), 1e-14);
}

TEST(Execute, QuarterTurnAnsatz) {
  const auto p = execute_exact(bare_ansatz(std::numbers::pi / 4, MeasurementBasis::ZZ), NoiseModel{});
  EXPECT_LT(oracle::max_abs_diff(p, {0.5, 0, 0, 0.5}), 1e-14);
}

TEST(Execute, NoisyGateFlagIsHonored) {
  Circuit c{1, {}, {0}};
  Gate g = gates::x(0);
  g.noisy = false;
  c.add(g);
  EXPECT_LT(oracle::max_abs_diff(execute_exact(c, NoiseModel::depolarizing(0.5)), {0, 1}), 1e-15);
}

TEST(Execute, ShotsConvergeToExact) {
  const Circuit c = encoded_ansatz(0.4, MeasurementBasis::XX);
  NoiseModel m = NoiseModel::depolarizing(0.02);
  m.readout = {0.01, 0.02};
  const auto exact = execute_exact(c, m);
  const auto freq = execute_shots(c, m, 1u << 17, 99).frequencies();
  EXPECT_LT(0.5 * oracle::l1(exact, freq), 0.01);
}

TEST(Execute, ShotModeIsSeedDeterministic) {
  const Circuit c = bare_ansatz(0.4, MeasurementBasis::XX);
  const auto mode = ExecutionMode::sampled(1000, 17);
  EXPECT_EQ(std::get<ShotHistogram>(execute(c, NoiseModel::readout_only(0.05), mode)).counts,
            std::get<ShotHistogram>(execute(c, NoiseModel::readout_only(0.05), mode)).counts);
}

TEST(NoiseModel, ValidatesProbabilities) {
  NoiseModel m;
  m.p1 = 1.2;
  EXPECT_THROW(m.validate(), Error);
  m = NoiseModel{};
  m.readout.p10 = -0.1;
  EXPECT_THROW(m.validate(), Error);
}

}  // namespace
}  // namespace vqemit
