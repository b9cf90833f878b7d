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

#include "rsmimo/verify/reference_models.hpp"

#include <cmath>
#include <numbers>

#include "rsmimo/special_functions.hpp"

namespace rsmimo::reference {

double kappa_mu_shadowed_pdf(double gamma, const SisoKappaMuParams& params) {
  params.validate();
  if (!(gamma > 0.0)) return 0.0;
  const double k = params.kappa;
  const double mu = params.mu;
  const double m = params.m;
  const double t = gamma / params.gamma_bar;
  // Plain positive-term summation in extended precision, independent of the
  // transformed/asymptotic routes used by the library.
  const long double f11 = extended::kummer_1f1<long double>(
      m, mu, mu * mu * k * (1.0 + k) * t / (mu * k + m));
  const double log_pdf = mu * std::log(mu) + m * std::log(m) + mu * std::log1p(k) -
                         std::lgamma(mu) - std::log(params.gamma_bar) -
                         m * std::log(mu * k + m) + (mu - 1.0) * std::log(t) -
                         mu * (1.0 + k) * t + std::log(static_cast<double>(f11));
  return std::exp(log_pdf);
}

double kappa_mu_shadowed_laplace(double s, const SisoKappaMuParams& params) {
  params.validate();
  const double c = params.mu * (1.0 + params.kappa) / params.gamma_bar;
  const double d = params.mu * params.kappa + params.m;
  return std::pow(c, params.mu) * std::pow(params.m / d, params.m) *
         std::pow(s + c, params.m - params.mu) / std::pow(s + c * params.m / d, params.m);
}

double central_wishart_logpdf(const HermitianMatrix<>& w, int p, const HermitianMatrix<>& sigma) {
  const int n = static_cast<int>(w.rows());
  Eigen::LLT<HermitianMatrix<>> lw(w);
  Eigen::LLT<HermitianMatrix<>> ls(sigma);
  if (lw.info() != Eigen::Success || ls.info() != Eigen::Success) {
    throw DomainError("central_wishart_logpdf: W and Sigma must be positive definite");
  }
  const double log_det_w = 2.0 * lw.matrixLLT().diagonal().real().array().log().sum();
  const double log_det_s = 2.0 * ls.matrixLLT().diagonal().real().array().log().sum();
  double log_gamma_n = 0.5 * n * (n - 1) * std::log(std::numbers::pi);
  for (int i = 0; i < n; ++i) log_gamma_n += std::lgamma(p - i);
  return -ls.solve(w).trace().real() + (p - n) * log_det_w - log_gamma_n - p * log_det_s;
}

}  // namespace rsmimo::reference
