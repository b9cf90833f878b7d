// SPDX-License-Identifier: Apache-2.0
//
// rsmimo: statistics of the MIMO Rician shadowed fading channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rsmimo/cli.hpp"

namespace rsmimo::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string log;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rsmimo");
  std::ostringstream log;
  const int code = run(args, log);
  return {code, log.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rsmimo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const std::vector<std::string> kSetA = {"--n", "2", "--p", "4", "--m", "2", "--sigma2-sigma", "1",
                                        "--inv-sigma2-m", "8"};

std::vector<std::string> with(std::string cmd, std::vector<std::string> extra) {
  std::vector<std::string> args = {std::move(cmd)};
  args.insert(args.end(), kSetA.begin(), kSetA.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

TEST_F(CliTest, CdfCurveFullGrid) {
  const fs::path out = dir_ / "nested" / "cdf.csv";
  const CliResult r = run_cli(with("cdf", {"--output", out.string()}));
  ASSERT_EQ(r.code, 0) << r.log;
  EXPECT_NE(r.log.find("resolved:"), std::string::npos);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[0], "x,cdf");
  EXPECT_EQ(rows[1], "0,0");
  const double last = std::stod(rows.back().substr(rows.back().find(',') + 1));
  EXPECT_GE(last, 0.999);
}

TEST_F(CliTest, TwoPointGrid) {
  const fs::path out = dir_ / "two.csv";
  ASSERT_EQ(run_cli(with("cdf", {"--points", "2", "--output", out.string()})).code, 0);
  EXPECT_EQ(lines(slurp(out)).size(), 3u);
}

TEST_F(CliTest, InvalidShadowingIsValidationError) {
  const CliResult r = run_cli({"cdf", "--n", "3", "--p", "4", "--m", "2", "--sigma2-sigma", "1", "--sigma2-m", "0.125", "--output", (dir_ / "x.csv").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.log.find("m > n - 1"), std::string::npos) << r.log;
}

TEST_F(CliTest, BadGridAndCountAreValidationErrors) {
  EXPECT_EQ(run_cli(with("cdf", {"--points", "1", "--output", (dir_ / "a.csv").string()})).code, 2);
  EXPECT_EQ(run_cli(with("cdf", {"--xmin", "5", "--xmax", "1", "--output", (dir_ / "b.csv").string()})).code, 2);
  EXPECT_EQ(run_cli(with("sample", {"--N", "0", "--output", (dir_ / "c.csv").string()})).code, 2);
  EXPECT_EQ(run_cli({"cdf", "--bogus"}).code, 2);
}

TEST_F(CliTest, PdfCurveIntegratesToOne) {
  const fs::path out = dir_ / "pdf.csv";
  const CliResult r = run_cli({"pdf", "--n", "3", "--p", "4", "--m", "3", "--sigma2-sigma", "4", "--inv-sigma2-m", "8",
                         "--xmax", "400", "--points", "801", "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto rows = lines(slurp(out));
  EXPECT_EQ(rows[0], "x,pdf");
  double area = 0.0, px = 0.0, pf = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double x = std::stod(rows[k]);
    const double f = std::stod(rows[k].substr(rows[k].find(',') + 1));
    if (k > 1) area += 0.5 * (x - px) * (f + pf);
    px = x;
    pf = f;
  }
  EXPECT_GE(area, 0.999);
  EXPECT_LE(area, 1.001);
}

TEST_F(CliTest, SamplesAreReproducible) {
  const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv", c = dir_ / "c.csv";
  const CliResult ra = run_cli(with("sample", {"--N", "10", "--seed", "42", "--output", a.string()}));
  ASSERT_EQ(ra.code, 0) << ra.log;
  ASSERT_EQ(run_cli(with("sample", {"--N", "10", "--seed", "42", "--output", b.string()})).code, 0);
  ASSERT_EQ(run_cli(with("sample", {"--N", "10", "--seed", "42", "--workers", "3", "--output", c.string()})).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
  const auto rows = lines(slurp(a));
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], "max_eigenvalue");
  EXPECT_NE(ra.log.find("seed=42"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  fs::create_directories(dir_);
  const fs::path cfg = dir_ / "set.cfg";
  std::ofstream(cfg) << "# set A\nn = 2\np=4\nm=2\nsigma2_sigma=1\ninv_sigma2_m=8\npoints=5\n";
  const fs::path out = dir_ / "cfg.csv";
  const CliResult r = run_cli({"cdf", "--config", cfg.string(), "--points", "3", "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.log;
  EXPECT_EQ(lines(slurp(out)).size(), 4u);

  const fs::path ref = dir_ / "ref.csv";
  ASSERT_EQ(run_cli(with("cdf", {"--points", "3", "--output", ref.string()})).code, 0);
  EXPECT_EQ(slurp(out), slurp(ref));
}

TEST_F(CliTest, UnknownConfigKeyIsRejected) {
  fs::create_directories(dir_);
  const fs::path cfg = dir_ / "bad.cfg";
  std::ofstream(cfg) << "shadow=3\n";
  EXPECT_EQ(run_cli({"cdf", "--config", cfg.string(), "--output", (dir_ / "o.csv").string()}).code, 2);
  EXPECT_EQ(run_cli({"cdf", "--config", (dir_ / "missing.cfg").string()}).code, 2);
}

std::vector<std::pair<double, double>> read_curve(const fs::path& p) {
  std::vector<std::pair<double, double>> out;
  const auto rows = lines(slurp(p));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto comma = rows[k].find(',');
    out.emplace_back(std::stod(rows[k].substr(0, comma)), std::stod(rows[k].substr(comma + 1)));
  }
  return out;
}

TEST_F(CliTest, RicianLadderCurvesApproachLargestM) {
  std::vector<std::vector<std::pair<double, double>>> curves;
  for (const char* m : {"2", "4", "10", "50", "100"}) {
    const double inv = 40.0 / std::stod(m);
    const fs::path out = dir_ / ("pdf_m" + std::string(m) + ".csv");
    ASSERT_EQ(run_cli({"pdf", "--n", "2", "--p", "4", "--m", m, "--sigma2-sigma", "1", "--inv-sigma2-m",
                       std::to_string(inv), "--points", "121", "--output", out.string()})
                  .code,
              0);
    curves.push_back(read_curve(out));
  }
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c + 1 < curves.size(); ++c) {
    double sup = 0.0;
    for (std::size_t k = 0; k < curves[c].size(); ++k) {
      sup = std::max(sup, std::abs(curves[c][k].second - curves.back()[k].second));
    }
    EXPECT_LT(sup, previous);
    previous = sup;
  }
}

TEST_F(CliTest, SampleFileAgreesWithCdfFile) {
  const fs::path samples = dir_ / "samples.csv", curve = dir_ / "curve.csv";
  ASSERT_EQ(run_cli(with("sample", {"--N", "100000", "--seed", "7", "--output", samples.string()})).code, 0);
  ASSERT_EQ(run_cli(with("cdf", {"--xmax", "200", "--points", "4001", "--output", curve.string()})).code, 0);
  const auto grid = read_curve(curve);
  auto rows = lines(slurp(samples));
  std::vector<double> v;
  for (std::size_t k = 1; k < rows.size(); ++k) v.push_back(std::stod(rows[k]));
  std::sort(v.begin(), v.end());
  // Linear interpolation of the emitted curve.
  auto cdf = [&](double x) {
    const double step = grid[1].first - grid[0].first;
    const std::size_t k = std::min(grid.size() - 2, static_cast<std::size_t>(x / step));
    const double t = (x - grid[k].first) / step;
    return std::min(1.0, (1 - t) * grid[k].second + t * grid[k + 1].second);
  };
  double ks = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double f = cdf(v[k]);
    ks = std::max({ks, std::abs(f - double(k) / v.size()), std::abs(f - double(k + 1) / v.size())});
  }
  EXPECT_LT(ks, 0.01);
}

TEST_F(CliTest, VerifySpecialFunctionSuite) {
  const CliResult r = run_cli({"verify", "--suite", "special_functions"});
  EXPECT_EQ(r.code, 0) << r.log;
  EXPECT_NE(r.log.find("verify: PASS"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--suite", "nonsense"}).code, 2);
}

}  // namespace
}  // namespace rsmimo::cli
