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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "rsmimo/quadrature.hpp"
#include "rsmimo/special_functions.hpp"
#include "rsmimo/types.hpp"

namespace rsmimo {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(LogGamma, Examples) {
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
  // mpmath, 40 digits.
  EXPECT_LT(rel(log_gamma(0.5), 0.5723649429247000870717136756765293558236), 1e-14);
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(LogGamma, RecurrenceOverRange) {
  for (double x = 0.05; x < 300.0; x *= 1.37) {
    EXPECT_LT(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)),
              1e-13 * std::max(1.0, std::abs(log_gamma(x + 1.0))))
        << "x=" << x;
  }
}

TEST(LogMultivariateGamma, Examples) {
  EXPECT_NEAR(log_multivariate_gamma(1, 3.7), std::lgamma(3.7), 1e-14);
  EXPECT_NEAR(log_multivariate_gamma(2, 2.0), std::log(kPi), 1e-14);
  EXPECT_NEAR(log_multivariate_gamma(3, 4.0), std::log(std::pow(kPi, 3) * 6.0 * 2.0 * 1.0), 1e-13);
  EXPECT_THROW(log_multivariate_gamma(3, 2.0), DomainError);
}

TEST(LogMultivariateGamma, ProductFormula) {
  for (int n = 1; n <= 6; ++n) {
    for (double a = n - 0.5; a <= 40.0; a += 2.3) {
      double direct = 0.5 * n * (n - 1) * std::log(kPi);
      for (int i = 1; i <= n; ++i) direct += std::lgamma(a - i + 1);
      EXPECT_NEAR(log_multivariate_gamma(n, a), direct, 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(pochhammer(2.5, 0), 1.0);
  EXPECT_DOUBLE_EQ(pochhammer(3.0, 4), 360.0);
  EXPECT_EQ(pochhammer(-2.0, 4), 0.0);
  EXPECT_TRUE(log_pochhammer(-2.0, 4).is_zero());
  EXPECT_DOUBLE_EQ(pochhammer(-2.5, 3), -2.5 * -1.5 * -0.5);
}

TEST(Pochhammer, LogFormSurvivesOverflow) {
  const SignedLog big = log_pochhammer(50.0, 400);
  EXPECT_EQ(big.sign, 1);
  EXPECT_NEAR(big.log_abs, std::lgamma(450.0) - std::lgamma(50.0), 1e-9);
}

TEST(Kummer1F1, Examples) {
  EXPECT_EQ(kummer_1f1(1.3, 2.7, 0.0), 1.0);
  EXPECT_LT(rel(kummer_1f1(2.0, 2.0, 1.0), std::numbers::e), 1e-15);
  EXPECT_LT(rel(kummer_1f1(1.0, 2.0, 1.0), std::numbers::e - 1.0), 1e-14);
}

TEST(Kummer1F1, AgainstHighPrecision) {
  // mpmath hyp1f1, 40 digits.
  EXPECT_LT(rel(kummer_1f1(2.5, 4.0, 60.0), 1067912846735924306226675.311306311731679), 1e-12);
  EXPECT_LT(rel(kummer_1f1(-3.5, 2.0, -45.0), 16174.45180795101618611210741804097794611), 1e-12);
  EXPECT_LT(rel(kummer_1f1(1.5, 3.0, -20.0), 0.02425253627689110374379099406606471171526), 1e-12);
}

TEST(Kummer1F1, EqualParametersGiveExp) {
  for (double a : {-3.5, 0.5, 2.0, 7.25}) {
    for (double x : {-30.0, -1.0, 0.3, 5.0, 45.0, 200.0}) {
      EXPECT_LT(rel(kummer_1f1(a, a, x), std::exp(x)), 1e-10) << a << " " << x;
    }
  }
}

TEST(Kummer1F1, RejectsPoleAndReportsNonConvergence) {
  EXPECT_THROW(kummer_1f1(1.0, -2.0, 0.5), DomainError);
  SeriesPolicy tight;
  tight.max_terms = 3;
  EXPECT_THROW(kummer_1f1(0.5, 1.5, 10.0, tight), ConvergenceError);
}

TEST(Hyp0F1, AgainstHighPrecision) {
  EXPECT_EQ(hyp_0f1(3.5, 0.0), 1.0);
  EXPECT_LT(rel(hyp_0f1(3.5, 40.0), 902.180053774606455976292075713231514732), 1e-13);
}

TEST(Gauss2F1, Examples) {
  EXPECT_EQ(gauss_2f1(0.7, 1.9, 2.2, 0.0), 1.0);
  EXPECT_LT(rel(gauss_2f1(1.0, 1.0, 2.0, 0.5), 2.0 * std::log(2.0)), 1e-12);
  EXPECT_LT(rel(gauss_2f1(2.0, 3.0, 3.0, 0.25), 16.0 / 9.0), 1e-12);
  EXPECT_LT(rel(gauss_2f1(1.5, 2.5, 4.5, 0.9), 4.067594280416325540516741794700515513246), 1e-12);
  EXPECT_THROW(gauss_2f1(1.0, 1.0, 2.0, 1.0), DomainError);
  EXPECT_THROW(gauss_2f1(1.0, 1.0, 0.0, 0.5), DomainError);
}

TEST(HumbertPhi1, Examples) {
  EXPECT_LT(rel(humbert_phi1(2.0, 1.0, 3.0, 0.4, 0.0), gauss_2f1(2.0, 1.0, 3.0, 0.4)), 1e-12);
  EXPECT_LT(rel(humbert_phi1(2.0, 1.0, 3.0, 0.0, 7.5), kummer_1f1(2.0, 3.0, 7.5)), 1e-12);
  // 200 x 200 truncation of the double series, mpmath.
  EXPECT_LT(rel(humbert_phi1(2.0, 1.0, 3.0, 0.5, 1.5), 4.69040201415113340183469429889250395196), 1e-12);
  EXPECT_LT(rel(humbert_phi1(1.5, 2.0, 4.5, 0.3, 12.0), 1807.115811580858981280260779751227144641),
            1e-10);
  EXPECT_THROW(humbert_phi1(1.0, 1.0, 2.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(humbert_phi1(1.0, 1.0, 2.0, 0.5, -1.0), DomainError);
}

TEST(HumbertPhi1, RandomReductions) {
  unsigned state = 12345u;
  auto uniform = [&] {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / 16777216.0;
  };
  for (int t = 0; t < 100; ++t) {
    const double a = 0.2 + 5.0 * uniform();
    const double b = 0.2 + 5.0 * uniform();
    const double c = a + 0.1 + 5.0 * uniform();
    const double x = 0.95 * uniform();
    const double y = 25.0 * uniform();
    EXPECT_LT(rel(humbert_phi1(a, b, c, x, 0.0), gauss_2f1(a, b, c, x)), 1e-10);
    EXPECT_LT(rel(humbert_phi1(a, b, c, 0.0, y), kummer_1f1(a, c, y)), 1e-10);
  }
}

TEST(HumbertPhi1, SeriesAndIntegralAgreeOnOverlap) {
  for (double x : {0.1, 0.35, 0.6, 0.9}) {
    for (double y : {1.0, 4.0, 12.0, 30.0}) {
      for (const auto& [a, b, c] : {std::array{1.0, 2.0, 3.5}, std::array{2.5, 0.5, 6.0}}) {
        const double s = log_humbert_phi1(a, b, c, x, y, Phi1Method::series).value();
        const double i = log_humbert_phi1(a, b, c, x, y, Phi1Method::integral).value();
        EXPECT_LT(rel(i, s), 1e-8) << x << " " << y;
      }
    }
  }
}

TEST(ExtendedSeries, MatchesDoubleVersions) {
  EXPECT_LT(rel(static_cast<double>(extended::kummer_1f1<long double>(1.5L, 3.0L, 12.0L)),
                kummer_1f1(1.5, 3.0, 12.0)),
            1e-14);
  EXPECT_LT(rel(static_cast<double>(extended::humbert_phi1<long double>(2.0L, 1.0L, 3.0L, 0.5L, 1.5L)),
                4.69040201415113340183469429889250395196),
            1e-15);
}

TEST(SeriesPolicy, Validation) {
  SeriesPolicy p;
  EXPECT_NO_THROW(p.validate());
  p.consecutive_small_terms = 1;
  EXPECT_THROW(p.validate(), DomainError);
  p = {};
  p.rel_tolerance = 0.0;
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi).value, 2.0, 1e-12);
  const QuadratureResult ts = integrate_tanh_sinh(
      [](double, double from_lo, double) { return 1.0 / std::sqrt(from_lo); }, 0.0, 1.0);
  EXPECT_NEAR(ts.value, 2.0, 1e-10);
  const QuadratureResult tail = integrate_decaying(
      [](double x) { return x * x * std::exp(-x); }, 0.0, std::numeric_limits<double>::infinity(), 2.0);
  EXPECT_NEAR(tail.value, 2.0, 1e-10);
}

}  // namespace
}  // namespace rsmimo
