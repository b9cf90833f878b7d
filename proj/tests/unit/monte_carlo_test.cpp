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
#include <numeric>

#include <gtest/gtest.h>

#include "rsmimo/closed_form.hpp"
#include "rsmimo/monte_carlo.hpp"

namespace rsmimo {
namespace {

const ScaledIdentityParams kSetA{2, 4, 2.0, 1.0, 1.0 / 8.0};

TEST(Empirical, CdfExamples) {
  const EmpiricalDistribution d({3.0, 1.0, 2.0});
  EXPECT_EQ(empirical_cdf(d, 0.5), 0.0);
  EXPECT_EQ(empirical_cdf(d, 9.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_cdf(d, 2.0), 2.0 / 3.0);
  EXPECT_EQ(d.sorted_samples().front(), 1.0);
  EXPECT_THROW(EmpiricalDistribution({}), DomainError);
  EXPECT_THROW(EmpiricalDistribution({1.0, std::nan("")}), DomainError);
}

TEST(Ks, Examples) {
  EXPECT_DOUBLE_EQ(ks_statistic(EmpiricalDistribution({1.0, 1.0, 1.0}), [](double) { return 0.5; }), 0.5);
  auto normal = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  EXPECT_DOUBLE_EQ(ks_statistic(EmpiricalDistribution({0.0}), normal), 0.5);
  EXPECT_DOUBLE_EQ(ks_two_sample(EmpiricalDistribution({1.0, 2.0}), EmpiricalDistribution({3.0, 4.0})), 1.0);
}

TEST(Ks, SelfConsistentSample) {
  const std::size_t n = 100000;
  auto exponential = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
  const std::vector<double> draws = draw_samples(
      [] {
        return [](Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); };
      },
      n, 99);
  EXPECT_LT(ks_statistic(EmpiricalDistribution(draws), exponential), 0.01);
}

TEST(Histogram, DensityIntegratesToOne) {
  Rng rng(3);
  std::vector<double> v(50000);
  std::gamma_distribution<double> g(2.0, 1.5);
  for (double& x : v) x = g(rng);
  const HistogramEstimate h = histogram(EmpiricalDistribution(v));
  EXPECT_LE(h.bins(), static_cast<std::size_t>(kMaxHistogramBins));
  EXPECT_EQ(h.bin_edges.size(), h.bins() + 1);
  double mass = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) {
    mass += h.densities[k] * h.width(k);
    EXPECT_GE(h.std_errors[k], 0.0);
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), v.size());
}

TEST(Histogram, ExplicitEdgesCountOutsideMass) {
  const HistogramEstimate h = histogram(EmpiricalDistribution({0.5, 1.5, 1.7, 5.0}), {0.0, 1.0, 2.0});
  EXPECT_EQ(h.total, 4u);
  EXPECT_EQ(h.counts[0], 1u);
  EXPECT_EQ(h.counts[1], 2u);
  EXPECT_DOUBLE_EQ(h.densities[1], 0.5);
}

TEST(TabulatedCdfTest, InterpolatesSmoothCdf) {
  auto cdf = [](double x) { return -std::expm1(-x); };
  auto pdf = [](double x) { return std::exp(-x); };
  const TabulatedCdf t(cdf, pdf, 0.0, 20.0, 401);
  for (double x = 0.013; x < 20.0; x += 0.37) EXPECT_NEAR(t(x), cdf(x), 1e-7);
  EXPECT_EQ(t(-1.0), 0.0);
  EXPECT_LE(t(50.0), 1.0);
}

TEST(Sampling, DeterministicAndWorkerInvariant) {
  const ModelParams p = kSetA.to_model();
  MonteCarloOptions one;
  one.chunk_size = 1000;
  MonteCarloOptions four = one;
  four.workers = 4;
  const auto a = estimate_max_eig_samples(p, 5500, 42, one).sorted_samples();
  const auto b = estimate_max_eig_samples(p, 5500, 42, one).sorted_samples();
  const auto c = estimate_max_eig_samples(p, 5500, 42, four).sorted_samples();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  const auto d = estimate_max_eig_samples(p, 5500, 43, one).sorted_samples();
  EXPECT_NE(a, d);
}

TEST(Sampling, DrawOrderIsWorkerInvariant) {
  auto factory = [] { return [](Rng& rng) { return std::uniform_real_distribution<double>()(rng); }; };
  MonteCarloOptions many;
  many.workers = 3;
  many.chunk_size = 64;
  MonteCarloOptions single = many;
  single.workers = 1;
  EXPECT_EQ(draw_samples(factory, 1000, 5, many), draw_samples(factory, 1000, 5, single));
}

TEST(Sampling, MaxEigenvalueMatchesClosedForm) {
  const EmpiricalDistribution d = estimate_max_eig_samples(kSetA.to_model(), 20000, 2024);
  const TabulatedCdf cdf([](double x) { return max_eig_cdf(x, kSetA); },
                         [](double x) { return max_eig_pdf(x, kSetA); }, 0.0, 1.05 * d.sorted_samples().back(),
                         401);
  EXPECT_LT(ks_statistic(d, [&](double x) { return cdf(x); }), 0.0122);  // 99% level
}

TEST(Mgf, ZeroArgumentIsExact) {
  const MgfEstimate e = estimate_mgf(kSetA.to_model(), HermitianMatrix<>::Zero(2, 2), 1000, 1);
  EXPECT_EQ(e.mean, 1.0);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(Mgf, MatchesClosedFormAndScalesAsRootN) {
  const ModelParams p = kSetA.to_model();
  const HermitianMatrix<> s = -0.1 * HermitianMatrix<>::Identity(2, 2);
  const MgfEstimate small = estimate_mgf(p, s, 50000, 8);
  const MgfEstimate large = estimate_mgf(p, s, 200000, 9);
  EXPECT_LE(std::abs(large.mean - mgf(s, p)), 3.0 * large.std_error);
  EXPECT_NEAR(small.std_error / large.std_error, 2.0, 0.2);
}

TEST(Mgf, SharedDrawsMatchSingleCalls) {
  const ModelParams p = kSetA.to_model();
  const std::vector<HermitianMatrix<>> s = {-0.05 * HermitianMatrix<>::Identity(2, 2),
                                            -0.5 * HermitianMatrix<>::Identity(2, 2)};
  const auto both = estimate_mgf(p, s, 3000, 17);
  EXPECT_DOUBLE_EQ(both[1].mean, estimate_mgf(p, s[1], 3000, 17).mean);
}

TEST(Wishart, NoncentralReferenceMean) {
  // E[phi_max] lies between E[tr Y]/n and E[tr Y] = n p + tr(los_gram).
  const EmpiricalDistribution d = estimate_wishart_max_eig_samples(
      4, HermitianMatrix<>::Identity(2, 2), 40.0 * HermitianMatrix<>::Identity(2, 2), 20000, 6);
  const auto& v = d.sorted_samples();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  EXPECT_GT(mean, 44.0);
  EXPECT_LT(mean, 88.0);
}

}  // namespace
}  // namespace rsmimo
