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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "vqemit/chem.hpp"
#include "vqemit/io.hpp"

#ifdef VQEMIT_CLI_PATH

namespace vqemit {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vqemit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Exit status of the CLI; stderr lands in err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string(VQEMIT_CLI_PATH) + " " + args + " 2>" + path("err.txt").string() +
                            " --coefficients " + VQEMIT_TEST_DATA;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  int run_plain(const std::string& args) const {
    const std::string cmd = std::string(VQEMIT_CLI_PATH) + " " + args + " 2>" + path("err.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string err() const { return read(path("err.txt")); }

  fs::path dir_;
};

TEST_F(Cli, UnknownConfigKeyExitsWithConfigCode) {
  write("bad.ini", "nois.depolarizing = 0.1\n");
  EXPECT_EQ(run("run-vqe --config " + path("bad.ini").string() + " --out " + path("o.csv").string()), 2);
  EXPECT_NE(err().find("nois.depolarizing"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o.csv")));
}

TEST_F(Cli, MissingRequiredFlagIsUsageError) { EXPECT_EQ(run_plain("run-vqe"), 2); }

TEST_F(Cli, ExactCurveMatchesEigensolverAndIsStable) {
  ASSERT_EQ(run("exact-curve --out " + path("a.csv").string()), 0);
  ASSERT_EQ(run("exact-curve --out " + path("b.csv").string()), 0);
  const std::string a = read(path("a.csv"));
  EXPECT_EQ(a, read(path("b.csv")));
  const auto table = load_coefficients(VQEMIT_TEST_DATA);
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(row, table.rows.size());
    const double e = std::stod(line.substr(line.find(',') + 1));
    EXPECT_NEAR(e, exact_ground_energy(hamiltonian(table.rows[row].g)), 1e-10);
    ++row;
  }
  EXPECT_EQ(row, 78u);
}

TEST_F(Cli, SweepEmitsThirteenRowsPerVariant) {
  write("s.ini", "[scan]\ntheta_points = 33\n[sweep]\nrates = 0,0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.1,0.11,0.12\n");
  ASSERT_EQ(run("sweep --config " + path("s.ini").string() + " --out " + path("sw.csv").string()), 0);
  const std::string out = read(path("sw.csv"));
  std::size_t lines = 0, ideal = 0, two_q = 0;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    ++lines;
    ideal += line.find(",duplicate_ideal_b,") != std::string::npos;
    two_q += line.find(",duplicate_2q_noise_only,") != std::string::npos;
  }
  EXPECT_EQ(lines, 1 + 13 * 5u);
  EXPECT_EQ(ideal, 13u);
  EXPECT_EQ(two_q, 13u);
}

TEST_F(Cli, RunVqeWritesOneFilePerFamily) {
  write("r.ini", "[scan]\ntheta_points = 33\nr_list = 0.75, 1.5\n[noise]\nreadout_p01 = 0.04\nreadout_p10 = 0.04\n"
                 "[run]\nfamily = bare, encoded, duplicate\nmode = shots\nshots = 2048\n[mitigation]\nbrem = true\n");
  ASSERT_EQ(run("run-vqe --config " + path("r.ini").string() + " --out " + path("curve.csv").string()), 0) << err();
  for (const char* f : {"bare", "encoded", "duplicate"}) {
    const std::string part = read(path(std::string("curve_") + f + ".csv"));
    EXPECT_EQ(part.substr(0, part.find('\n')), kEnergyCurveHeader);
    EXPECT_EQ(std::count(part.begin(), part.end(), '\n'), 3) << f;
  }
}

TEST_F(Cli, UnfoldIdentityReturnsNormalizedInput) {
  write("h.csv", "bitstring,count\n00,30\n01,10\n10,0\n11,60\n");
  write("r.csv", "n_qubits=2\n1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
  ASSERT_EQ(run_plain("unfold --histogram " + path("h.csv").string() + " --response " + path("r.csv").string() +
                      " --out " + path("u.csv").string()),
            0)
      << err();
  EXPECT_EQ(read(path("u.csv")), "bitstring,probability\n00,0.3\n01,0.1\n10,0\n11,0.6\n");
}

TEST_F(Cli, UnfoldRecoversForwardNoisedHistogram) {
  // Truth (0.7, 0.1, 0.05, 0.15) through symmetric 5% flips on both bits.
  const double f = 0.05;
  const double truth[4] = {0.7, 0.1, 0.05, 0.15};
  double m[4] = {0, 0, 0, 0};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const int diff = std::popcount(static_cast<unsigned>(i ^ j));
      m[j] += truth[i] * std::pow(f, diff) * std::pow(1 - f, 2 - diff);
    }
  std::ostringstream h, r;
  h << "bitstring,count\n";
  const char* keys[] = {"00", "01", "10", "11"};
  for (int j = 0; j < 4; ++j) h << keys[j] << ',' << static_cast<long>(std::llround(m[j] * 1e8)) << '\n';
  r << "n_qubits=2\n";
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const int diff = std::popcount(static_cast<unsigned>(i ^ j));
      r << format_real(std::pow(f, diff) * std::pow(1 - f, 2 - diff)) << (i == 3 ? '\n' : ',');
    }
  write("h.csv", h.str());
  write("r.csv", r.str());
  ASSERT_EQ(run_plain("unfold --histogram " + path("h.csv").string() + " --response " + path("r.csv").string() +
                      " --out " + path("u.csv").string()),
            0)
      << err();
  std::istringstream in(read(path("u.csv")));
  std::string line;
  std::getline(in, line);
  double l1 = 0.0;
  for (int j = 0; j < 4 && std::getline(in, line); ++j) l1 += std::abs(std::stod(line.substr(3)) - truth[j]);
  EXPECT_LT(l1, 1e-3);
}

TEST_F(Cli, UnfoldEmptyHistogramFails) {
  write("h.csv", "bitstring,count\n");
  write("r.csv", "n_qubits=1\n1,0\n0,1\n");
  EXPECT_EQ(run_plain("unfold --histogram " + path("h.csv").string() + " --response " + path("r.csv").string() +
                      " --out " + path("u.csv").string()),
            3);
}

TEST_F(Cli, DuplicateDenominatorGuardExitsWithNumericalCode) {
  // Fully depolarized copies with a handful of shots push the denominator under 10/shots.
  write("g.ini", "[scan]\ntheta_points = 3\nr_list = 0.75\n[noise]\ndepolarizing_1q = 1\ndepolarizing_2q = 1\n"
                 "[run]\nfamily = duplicate\nmode = shots\nshots = 16\n");
  EXPECT_EQ(run("run-vqe --config " + path("g.ini").string() + " --out " + path("o.csv").string()), 4) << err();
}

}  // namespace
}  // namespace vqemit

#endif  // VQEMIT_CLI_PATH
