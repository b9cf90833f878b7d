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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "rsmimo/channel_model.hpp"
#include "rsmimo/closed_form.hpp"
#include "rsmimo/quadrature.hpp"
#include "rsmimo/verify/reference_models.hpp"

namespace rsmimo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const ScaledIdentityParams kSetA{2, 4, 2.0, 1.0, 1.0 / 8.0};   // n=2, m=2, sigma_M^-2 = 8
const ScaledIdentityParams kSetB{3, 4, 3.0, 4.0, 1.0 / 8.0};   // n=3, m=3, sigma_Sigma^2 = 4
const ScaledIdentityParams kLadder100{2, 4, 100.0, 1.0, 2.5};  // m sigma_M^-2 = 40

ModelParams general_params() {
  ModelParams p;
  p.n = 2;
  p.p = 3;
  p.m = 1.6;
  p.sigma = HermitianMatrix<>::Identity(2, 2);
  p.sigma(0, 0) = 1.4;
  p.sigma(0, 1) = {0.2, 0.3};
  p.sigma(1, 0) = {0.2, -0.3};
  p.shadowing_rate = HermitianMatrix<>::Identity(2, 2) * 0.7;
  p.shadowing_rate(0, 1) = {-0.1, 0.2};
  p.shadowing_rate(1, 0) = {-0.1, -0.2};
  return p;
}

TEST(GammaWishart, SisoReduction) {
  for (const SisoKappaMuParams& siso :
       {SisoKappaMuParams{1.0, 2, 3.0, 1.0}, SisoKappaMuParams{0.2, 5, 0.7, 4.0},
        SisoKappaMuParams{9.0, 1, 12.0, 0.6}}) {
    const ModelParams p = map_siso(siso).to_model();
    for (double g : {0.01, 0.3, 1.0, 2.5, 8.0}) {
      const double lib = std::exp(gamma_wishart_logpdf(HermitianMatrix<>::Constant(1, 1, g), p));
      EXPECT_LT(rel(lib, reference::kappa_mu_shadowed_pdf(g, siso)), 1e-9);
    }
  }
}

TEST(GammaWishart, KummerCollapseAtMEqualsP) {
  const ScaledIdentityParams s{2, 4, 4.0, 1.0, 0.5};
  const ModelParams p = s.to_model();
  Rng rng(9);
  ChannelSampler sampler(p);
  const HermitianMatrix<> cov = HermitianMatrix<>::Identity(2, 2) * 3.0;
  for (int t = 0; t < 10; ++t) {
    const HermitianMatrix<> y = sampler.gram_matrix(rng);
    EXPECT_NEAR(gamma_wishart_logpdf(y, p), reference::central_wishart_logpdf(y, 4, cov), 1e-9);
  }
}

TEST(GammaWishart, ImportanceSamplingNormalization) {
  const ModelParams p = general_params();
  // Proposal W_2(p, 2 (Sigma + M^-1)): its tails are heavier than the target's.
  const HermitianMatrix<> psi = 2.0 * (p.sigma + HermitianMatrix<>(p.shadowing_rate.inverse()));
  const HermitianMatrix<> root = hermitian_sqrt(psi);
  Rng rng(77);
  const int count = 20000;
  double sum = 0.0, sq = 0.0;
  for (int t = 0; t < count; ++t) {
    const HermitianMatrix<> w = root * gram(standard_complex_normal_matrix(p.p, 2, rng)) * root;
    const HermitianMatrix<> y = 0.5 * (w + w.adjoint());
    const double ratio = std::exp(gamma_wishart_logpdf(y, p) - reference::central_wishart_logpdf(y, p.p, psi));
    sum += ratio;
    sq += ratio * ratio;
  }
  const double mean = sum / count;
  const double se = std::sqrt((sq / count - mean * mean) / count);
  EXPECT_LE(std::abs(mean - 1.0), 3.0 * se);
}

TEST(GammaWishart, RejectsNonPositiveArgument) {
  HermitianMatrix<> a = HermitianMatrix<>::Identity(2, 2);
  a(1, 1) = -0.5;
  EXPECT_THROW(gamma_wishart_logpdf(a, general_params()), DomainError);
}

TEST(Mgf, ZeroIsExactlyOne) {
  EXPECT_EQ(mgf(HermitianMatrix<>::Zero(2, 2), general_params()), 1.0);
  EXPECT_EQ(mgf(HermitianMatrix<>::Zero(3, 3), kSetB.to_model()), 1.0);
}

TEST(Mgf, SisoLaplaceTransform) {
  const SisoKappaMuParams siso{1.7, 3, 2.4, 2.0};
  const ModelParams p = map_siso(siso).to_model();
  for (double s : {0.01, 0.2, 1.0, 7.0}) {
    EXPECT_LT(rel(mgf(HermitianMatrix<>::Constant(1, 1, -s), p),
                  reference::kappa_mu_shadowed_laplace(s, siso)),
              1e-12);
  }
}

TEST(Mgf, GradientGivesMean) {
  const ModelParams p = general_params();
  const HermitianMatrix<> mean = p.p * p.sigma + p.m * HermitianMatrix<>(p.shadowing_rate.inverse());
  const double h = 1e-5;
  auto derivative = [&](const HermitianMatrix<>& dir) {
    return (mgf(h * dir, p) - mgf(-h * dir, p)) / (2.0 * h);
  };
  HermitianMatrix<> e = HermitianMatrix<>::Zero(2, 2);
  e(0, 0) = 1.0;
  EXPECT_LT(rel(derivative(e), mean(0, 0).real()), 1e-6);
  e.setZero();
  e(1, 1) = 1.0;
  EXPECT_LT(rel(derivative(e), mean(1, 1).real()), 1e-6);
  // tr(Y (E01 + E10)) = 2 Re Y01 and tr(Y (i E01 - i E10)) = 2 Im Y01.
  e.setZero();
  e(0, 1) = e(1, 0) = 1.0;
  EXPECT_LT(rel(derivative(e), 2.0 * mean(0, 1).real()), 1e-6);
  e(0, 1) = {0.0, 1.0};
  e(1, 0) = {0.0, -1.0};
  EXPECT_LT(rel(derivative(e), 2.0 * mean(0, 1).imag()), 1e-6);
}

TEST(Mgf, OutsideExistenceRegionThrows) {
  const ModelParams p = general_params();
  EXPECT_THROW(mgf(HermitianMatrix<>::Identity(2, 2) * 5.0, p), DomainError);
}

TEST(JointEigenvalues, ScalarCaseIsTheGramDensity) {
  const ScaledIdentityParams s{1, 3, 1.7, 0.8, 0.4};
  for (double x : {0.2, 1.0, 6.0}) {
    EXPECT_NEAR(joint_eigenvalue_logpdf(EigenSpectrum{x}, s),
                gamma_wishart_logpdf(HermitianMatrix<>::Constant(1, 1, x), s.to_model()), 1e-12);
  }
}

TEST(JointEigenvalues, TwoDimensionalNormalization) {
  auto inner = [&](double phi2) {
    return integrate_adaptive(
               [&](double phi1) {
                 if (!(phi1 > 0.0 && phi1 < phi2)) return 0.0;
                 RealVector v(2);
                 v << phi1, phi2;
                 return std::exp(joint_eigenvalue_logpdf(v, kSetA));
               },
               0.0, phi2, {0.0, 1e-9, 4000})
        .value;
  };
  const double total = integrate_decaying(inner, 0.0, kInf, 10.0, {0.0, 1e-8, 4000}).value;
  EXPECT_NEAR(total, 1.0, 1e-4);
}

TEST(JointEigenvalues, RejectsBadInput) {
  RealVector v(2);
  v << 2.0, 1.0;
  EXPECT_THROW(joint_eigenvalue_logpdf(v, kSetA), DomainError);
  v << -1.0, 1.0;
  EXPECT_THROW(joint_eigenvalue_logpdf(v, kSetA), DomainError);
}

TEST(Upsilon, ClosedFormMatchesQuadrature) {
  for (double x : {0.5, 1.0, 10.0, 50.0, 150.0, 1e4}) {
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        const double c = upsilon_entry(i, j, x, kSetA, UpsilonMethod::closed_form);
        const double q = upsilon_entry(i, j, x, kSetA, UpsilonMethod::quadrature);
        EXPECT_LT(rel(c, q), 1e-8) << "x=" << x << " (" << i << "," << j << ")";
      }
    }
  }
}

TEST(Upsilon, VanishesAtZero) {
  EXPECT_EQ(upsilon_entry(1, 1, 0.0, kSetA, UpsilonMethod::quadrature), 0.0);
  EXPECT_NEAR(upsilon_entry(1, 1, 0.0, kSetA, UpsilonMethod::closed_form), 0.0, 1e-300);
}

TEST(Upsilon, ClosedFormNeedsMBelowP) {
  EXPECT_THROW(upsilon_entry(1, 1, 3.0, ScaledIdentityParams{2, 4, 4.0, 1.0, 0.5}, UpsilonMethod::closed_form),
               DomainError);
  EXPECT_NO_THROW(upsilon_entry(1, 1, 3.0, ScaledIdentityParams{2, 4, 4.0, 1.0, 0.5}));
}

TEST(Upsilon, DerivativeMatrixIsEntryDerivative) {
  const double x = 12.0, h = 1e-3;
  const RealMatrix j = upsilon_derivative_matrix(x, kSetB);
  const RealMatrix fd = (upsilon_matrix(x + h, kSetB).entries - upsilon_matrix(x - h, kSetB).entries) / (2 * h);
  EXPECT_LT((j - fd).cwiseAbs().maxCoeff() / j.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(MaxEigCdf, HighPrecisionValues) {
  // Independent mpmath evaluation of the same determinant.
  EXPECT_LT(rel(max_eig_cdf(1.0, kSetA), 2.58076254694e-8), 1e-10);
  EXPECT_LT(rel(max_eig_cdf(10.0, kSetA), 0.0213982076686446), 1e-12);
  EXPECT_LT(rel(max_eig_cdf(50.0, kSetA), 0.851790064194585), 1e-12);
  EXPECT_LT(rel(max_eig_cdf(90.0, kLadder100), 0.998953930265421852), 1e-12);
  EXPECT_LT(rel(max_eig_pdf(90.0, kLadder100), 0.000261540566755703), 1e-10);
}

TEST(MaxEigCdf, Limits) {
  EXPECT_EQ(max_eig_cdf(0.0, kSetA), 0.0);
  EXPECT_NEAR(max_eig_cdf(1e6, kSetA), 1.0, 1e-6);
  EXPECT_NEAR(max_eig_cdf(1e6, kSetB), 1.0, 1e-6);
  EXPECT_EQ(max_eig_cdf(-1.0, kSetA), 0.0);
  EXPECT_THROW(max_eig_cdf(std::nan(""), kSetA), DomainError);
}

TEST(MaxEigCdf, MonotoneOnGrid) {
  for (const ScaledIdentityParams& s : {kSetA, kSetB, ScaledIdentityParams{2, 4, 4.0, 1.0, 0.5}}) {
    double previous = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double f = max_eig_cdf(180.0 * k / 199.0, s);
      EXPECT_GE(f, previous - 1e-12);
      EXPECT_LE(f, 1.0);
      previous = f;
    }
  }
}

TEST(MaxEigCdf, QuantileInvertsCdf) {
  for (double prob : {0.05, 0.5, 0.99}) {
    EXPECT_NEAR(max_eig_cdf(max_eig_quantile(prob, kSetB), kSetB), prob, 1e-9);
  }
}

TEST(MaxEigPdf, Normalization) {
  const double total =
      integrate_decaying([](double x) { return max_eig_pdf(x, kSetB); }, 0.0, kInf, 20.0).value;
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(MaxEigPdf, MatchesDifferenceQuotient) {
  for (double x : {20.0, 60.0, 120.0}) {
    const double h = 1e-3 * x;
    auto central = [&](double step) {
      return (max_eig_cdf(x + step, kSetB) - max_eig_cdf(x - step, kSetB)) / (2 * step);
    };
    const double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    EXPECT_LT(rel(max_eig_pdf(x, kSetB), fd), 1e-6) << "x=" << x;
  }
}

TEST(MaxEigPdf, NonNegativeAndZeroBelowOrigin) {
  EXPECT_EQ(max_eig_pdf(0.0, kSetA), 0.0);
  EXPECT_EQ(max_eig_pdf(-3.0, kSetA), 0.0);
  for (double x = 0.25; x < 200.0; x *= 1.5) EXPECT_GE(max_eig_pdf(x, kSetA), 0.0);
}

TEST(Reductions, LimitingLaws) {
  const LimitingLaw rayleigh = reduction_params(ReductionKind::rayleigh_limit, ScaledIdentityParams{2, 4, 2.0, 1.0, 1.0});
  EXPECT_EQ(rayleigh.p, 4);
  EXPECT_TRUE(rayleigh.covariance.isIdentity());
  EXPECT_TRUE(rayleigh.noncentrality.isZero());

  const LimitingLaw mp = reduction_params(ReductionKind::rayleigh_mp, ScaledIdentityParams{2, 4, 4.0, 1.0, 0.5});
  EXPECT_TRUE(mp.covariance.isApprox(HermitianMatrix<>::Identity(2, 2) * 3.0));

  const LimitingLaw rician = reduction_params(ReductionKind::rician_limit, ScaledIdentityParams{2, 4, 2.0, 1.0, 1.0 / 20.0}, 40.0);
  EXPECT_TRUE(rician.los_gram.isApprox(HermitianMatrix<>::Identity(2, 2) * 40.0));
  EXPECT_TRUE(rician.covariance.isIdentity());
  EXPECT_FALSE(rician.description().empty());
}

TEST(Reductions, RicianLadderKeepsLosPower) {
  const ScaledIdentityParams base{2, 4, 2.0, 1.0, 1.0};
  for (double m : {2.0, 10.0, 100.0}) {
    const ScaledIdentityParams s = rician_ladder_params(base, m, 40.0);
    EXPECT_DOUBLE_EQ(s.m / s.sigma2_m, 40.0);
    EXPECT_EQ(s.sigma2_sigma, 1.0);
  }
}

}  // namespace
}  // namespace rsmimo
