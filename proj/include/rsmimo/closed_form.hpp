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

#pragma once

#include <string>

#include "rsmimo/matrix_hypergeometric.hpp"
#include "rsmimo/types.hpp"

namespace rsmimo {

/// ln of the gamma-Wishart density of Y at A (Hermitian PD).
double gamma_wishart_logpdf(const HermitianMatrix<>& a, const ModelParams& params);

/// E[etr(Y S)] through determinants. Requires Sigma^{-1} - S positive definite.
double mgf(const HermitianMatrix<>& s, const ModelParams& params);
double log_mgf(const HermitianMatrix<>& s, const ModelParams& params);

/// ln of the joint density of the ordered eigenvalues 0 < phi_1 < ... < phi_n
/// of Y for scalar Sigma and M.
double joint_eigenvalue_logpdf(const EigenSpectrum& spectrum, const ScaledIdentityParams& params);
/// Same, but `ordered` must already be strictly ascending.
double joint_eigenvalue_logpdf(const RealVector& ordered, const ScaledIdentityParams& params);

enum class UpsilonMethod {
  automatic,    ///< closed form for m < p unless its bracket cancels, quadrature otherwise
  closed_form,  ///< finite Phi1 sum; m < p only
  quadrature,   ///< integral over [0, x]; any m > n - 1
};

/// Entry (i, j) of Upsilon(x), 1-based.
double upsilon_entry(int i, int j, double x, const ScaledIdentityParams& params,
                     UpsilonMethod method = UpsilonMethod::automatic);
SignedLog log_upsilon_entry(int i, int j, double x, const ScaledIdentityParams& params,
                            UpsilonMethod method = UpsilonMethod::automatic);

/// Derivative of entry (i, j) with respect to x (the integrand at y = x).
SignedLog log_upsilon_derivative(int i, int j, double x, const ScaledIdentityParams& params);

struct UpsilonMatrix {
  RealMatrix entries;
  double x = 0.0;
};

UpsilonMatrix upsilon_matrix(double x, const ScaledIdentityParams& params,
                             UpsilonMethod method = UpsilonMethod::automatic);
RealMatrix upsilon_derivative_matrix(double x, const ScaledIdentityParams& params);

/// ln of the normalizing constant C in F(x) = C |Upsilon(x)|.
double log_cdf_constant(const ScaledIdentityParams& params);

/// Admissible overshoot of a computed CDF outside [0, 1] before a
/// NumericalConsistencyError is raised.
inline constexpr double kCdfSlack = 1e-9;

/// P(phi_max <= x), clamped to [0, 1] within kCdfSlack.
double max_eig_cdf(double x, const ScaledIdentityParams& params,
                   UpsilonMethod method = UpsilonMethod::automatic);

/// Density of phi_max; 0 for x <= 0. Falls back to a central difference of
/// max_eig_cdf when Upsilon(x) is numerically singular.
double max_eig_pdf(double x, const ScaledIdentityParams& params);

/// x with max_eig_cdf(x) = prob for 0 < prob < 1, by bisection to `rel_tol`.
double max_eig_quantile(double prob, const ScaledIdentityParams& params, double rel_tol = 1e-10);

/// Reciprocal condition number below which max_eig_pdf uses the difference quotient.
inline constexpr double kPdfMinRcond = 1e-10;

enum class ReductionKind { rayleigh_limit, rayleigh_mp, rician_limit };

/// Limiting (noncentral) Wishart law W_n(p, covariance, noncentrality) with
/// noncentrality = covariance^{-1} los_gram.
struct LimitingLaw {
  ReductionKind kind = ReductionKind::rayleigh_limit;
  int n = 1;
  int p = 1;
  HermitianMatrix<> covariance;
  HermitianMatrix<> los_gram;
  HermitianMatrix<> noncentrality;

  std::string description() const;
};

/// `limit_scale` is the preserved LOS power m sigma_M^{-2} for rician_limit;
/// a nonpositive value takes it from `params`. Ignored for the other kinds.
LimitingLaw reduction_params(ReductionKind kind, const ScaledIdentityParams& params,
                             double limit_scale = 0.0);

/// Member of the rician ladder: same n, p, sigma2_sigma, with sigma_M^2 set so
/// that m sigma_M^{-2} = limit_scale.
ScaledIdentityParams rician_ladder_params(const ScaledIdentityParams& base, double m,
                                          double limit_scale);

}  // namespace rsmimo
