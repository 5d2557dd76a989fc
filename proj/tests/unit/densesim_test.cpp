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

#include "oracles.hpp"
#include "vqemit/densesim.hpp"
#include "vqemit/error.hpp"

namespace vqemit {
namespace {

using oracle::Mat;

DensityMatrix from_oracle(int n, const Mat& m) { return DensityMatrix(n, m); }

TEST(InitState, SingleQubitIsProjectorOnZero) {
  const auto rho = init_state(1);
  EXPECT_NEAR(std::abs(rho.data()(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(rho.data()(1, 1), cplx(0.0));
  EXPECT_EQ(rho.data()(0, 1), cplx(0.0));
}

TEST(InitState, TwoQubitsHaveSingleNonzeroEntry) {
  const auto rho = init_state(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(rho.data()(i, j), cplx(i == 0 && j == 0 ? 1.0 : 0.0));
}

TEST(InitState, ThreeQubitsPureAndNormalized) {
  const auto rho = init_state(3);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(InitState, RejectsOutOfRangeWidth) {
  EXPECT_THROW(init_state(0), Error);
  EXPECT_THROW(init_state(kMaxQubits + 1), Error);
}

TEST(ApplyUnitary, XFlipsZero) {
  const auto rho = apply_unitary(init_state(1), gates::x(0));
  EXPECT_NEAR(rho.data()(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.data()(0, 0)), 0.0, 1e-15);
}

TEST(ApplyUnitary, HadamardGivesUniformEntries) {
  const auto rho = apply_unitary(init_state(1), gates::h(0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(rho.data()(i, j) - 0.5), 0.0, 1e-15);
}

TEST(ApplyUnitary, PairGateColumns) {
  const double r = 1.0 / std::sqrt(2.0);
  const Mat b = gate_matrix(gates::b(0, 1));
  // |01> has qubit 0 set: local index 1.
  EXPECT_NEAR(std::abs(b(1, 1) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(2, 1) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 2) + r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(2, 2) - r), 0.0, 1e-15);
  EXPECT_NEAR((b - oracle::b_gate()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(ApplyUnitary, MatchesKroneckerOracleOnRandomCircuits) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const int n = 4;
  Mat rho = oracle::random_mixed(1 << n, rng);
  DensityMatrix sim(n, rho);
  const std::vector<Gate> seq = {gates::h(2),         gates::cnot(2, 0), gates::ry(1, angle(rng)),
                                 gates::rz(3, angle(rng)), gates::b(3, 1), gates::sdg(0),
                                 gates::swap(0, 3),   gates::cnot(1, 3), gates::s(2),
                                 gates::y(1),         gates::z(3),       gates::b(0, 2)};
  for (const Gate& g : seq) {
    const Mat u = oracle::embed(n, gate_matrix(g), g.targets);
    rho = u * rho * u.adjoint();
    sim = apply_unitary(sim, g);
  }
  EXPECT_LT((sim.data() - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyUnitary, SingleQubitGatesMatchClosedForms) {
  const Mat h = gate_matrix(gates::h(0));
  EXPECT_LT((h - oracle::hadamard()).cwiseAbs().maxCoeff(), 1e-15);
  const Mat ry = gate_matrix(gates::ry(0, 0.37));
  EXPECT_LT((ry - oracle::ry(0.37)).cwiseAbs().maxCoeff(), 1e-15);
  const Mat cx = gate_matrix(gates::cnot(0, 1));
  EXPECT_LT((cx - oracle::cnot_low_control()).cwiseAbs().maxCoeff(), 1e-15);
  const Mat s = gate_matrix(gates::s(0));
  EXPECT_LT(std::abs(s(1, 1) - oracle::kI), 1e-15);
}

TEST(ApplyUnitary, RejectsBadTargets) {
  auto rho = init_state(2);
  EXPECT_THROW(apply_unitary(rho, gates::x(2)), Error);
  EXPECT_THROW(apply_unitary(rho, gates::cnot(1, 1)), Error);
  Gate g = gates::x(0);
  g.targets = {0, 1};
  EXPECT_THROW(apply_unitary(rho, g), Error);
}

TEST(Probabilities, ZeroStateMarginal) {
  const std::vector<int> q = {1};
  const auto p = probabilities(init_state(2), q);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
}

TEST(Probabilities, BellState) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const std::vector<int> q = {0, 1};
  const auto p = probabilities(DensityMatrix::from_pure(2, psi), q);
  EXPECT_LT(oracle::max_abs_diff(p, {0.5, 0.0, 0.0, 0.5}), 1e-15);
}

TEST(Probabilities, MatchesPartialTraceOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = oracle::random_pure(8, rng);
    const Mat rho = psi * psi.adjoint();
    for (const std::vector<int>& keep : {std::vector<int>{2, 0}, std::vector<int>{1, 2}, std::vector<int>{0}}) {
      const auto p = probabilities(DensityMatrix(3, rho), keep);
      const auto ref = oracle::diagonal(oracle::partial_trace(rho, 3, keep));
      EXPECT_LT(oracle::max_abs_diff(p, ref), 1e-13);
    }
  }
}

TEST(SampleShots, DeterministicDistribution) {
  const auto h = sample_shots({1.0, 0.0}, 100, 3);
  EXPECT_EQ(h.to_map(), (std::map<std::string, std::uint64_t>{{"0", 100}}));
}

TEST(SampleShots, FairCoinWithinThreeSigma) {
  const auto h = sample_shots({0.5, 0.5}, 8192, 42);
  EXPECT_NEAR(static_cast<double>(h.counts[0]) / 8192.0, 0.5, 0.02);
  EXPECT_EQ(h.shots, 8192u);
}

TEST(SampleShots, SameSeedSameHistogram) {
  const ProbabilityVector p = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(sample_shots(p, 5000, 9).counts, sample_shots(p, 5000, 9).counts);
  EXPECT_NE(sample_shots(p, 5000, 9).counts, sample_shots(p, 5000, 10).counts);
}

TEST(SampleShots, ChiSquareAgainstSourceDistribution) {
  // 7 degrees of freedom; the 0.999 quantile is 24.32.
  const ProbabilityVector p = {0.05, 0.1, 0.2, 0.15, 0.02, 0.08, 0.3, 0.1};
  const std::uint64_t n = 200000;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto h = sample_shots(p, n, seed);
    double chi2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double e = p[k] * static_cast<double>(n);
      chi2 += std::pow(static_cast<double>(h.counts[k]) - e, 2) / e;
    }
    EXPECT_LT(chi2, 24.32) << "seed " << seed;
  }
}

TEST(SampleShots, RejectsUnnormalizedInput) {
  EXPECT_THROW(sample_shots({0.5, 0.6}, 10, 1), Error);
  EXPECT_THROW(sample_shots({0.5, 0.5, 0.0}, 10, 1), Error);
}

TEST(PauliExpectation, ZOnZeroIsOne) {
  EXPECT_NEAR(pauli_expectation(init_state(1), PauliString("Z")), 1.0, 1e-15);
}

TEST(PauliExpectation, MaximallyMixedGivesZero) {
  const DensityMatrix mixed(2, Mat::Identity(4, 4) / 4.0);
  for (const char* w : {"XI", "IY", "ZZ", "XY", "YZ"}) EXPECT_NEAR(pauli_expectation(mixed, PauliString(w)), 0.0, 1e-15);
  const DensityMatrix one(1, Mat::Identity(2, 2) / 2.0);
  EXPECT_NEAR(pauli_expectation(one, PauliString("X")), 0.0, 1e-15);
}

TEST(PauliExpectation, AnsatzXXFollowsSinTwoTheta) {
  for (double t : {std::numbers::pi / 4, 0.3, -1.1}) {
    const auto rho = DensityMatrix::from_pure(2, oracle::ansatz_state(t));
    EXPECT_NEAR(pauli_expectation(rho, PauliString("XX")), std::sin(2 * t), 1e-12);
  }
}

TEST(PauliExpectation, MatchesTraceOracleOnRandomStates) {
  std::mt19937_64 rng(5);
  const Mat rho = oracle::random_mixed(8, rng);
  for (const std::string w : {"XYZ", "ZIZ", "IYX", "YYY"}) {
    // PauliString text puts qubit 0 rightmost.
    const std::string q0_first(w.rbegin(), w.rend());
    const double ref = (oracle::pauli_word(q0_first) * rho).trace().real();
    EXPECT_NEAR(pauli_expectation(DensityMatrix(3, rho), PauliString(w)), ref, 1e-13) << w;
  }
}

TEST(PauliString, TextPutsQubitZeroRightmost) {
  const auto p = PauliString::on(4, {{0, 'Z'}, {1, 'X'}, {2, 'Y'}});
  EXPECT_EQ(p.text(), "IYXZ");
  EXPECT_EQ(p.at(0), 'Z');
  EXPECT_EQ(p.support(), (std::vector<int>{0, 1, 2}));
  EXPECT_THROW(PauliString("XQ"), Error);
}

TEST(Bitstrings, RoundTrip) {
  EXPECT_EQ(to_bitstring(5, 4), "0101");
  EXPECT_EQ(from_bitstring("001111"), 15u);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(from_bitstring(to_bitstring(k, 6)), k);
}

TEST(ShotHistogram, MapRoundTrip) {
  const std::map<std::string, std::uint64_t> m = {{"01", 3}, {"11", 7}};
  const auto h = ShotHistogram::from_map(m);
  EXPECT_EQ(h.shots, 10u);
  EXPECT_EQ(h.to_map(), m);
  EXPECT_THROW(ShotHistogram::from_map({{"01", 3}, {"1", 1}}), Error);
}

TEST(Simulate, BellCircuit) {
  Circuit c{2, {}, {0, 1}};
  c.add(gates::h(0)).add(gates::cnot(0, 1));
  const auto rho = simulate(c);
  EXPECT_NEAR(rho.data()(3, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
}

}  // namespace
}  // namespace vqemit
