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

#include "rsmimo/channel_model.hpp"

#include <string>

namespace rsmimo {
namespace {

void check_hermitian_pd(const HermitianMatrix<>& a, int n, const char* what) {
  if (a.rows() != n || a.cols() != n) {
    throw DomainError(std::string(what) + " must be n x n");
  }
  if (!is_hermitian_positive_definite(a)) {
    throw DomainError(std::string(what) + " must be Hermitian positive definite");
  }
}

}  // namespace

bool is_hermitian_positive_definite(const HermitianMatrix<>& a) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0] > 0.0;
}

void ModelParams::validate() const {
  if (n < 1) throw DomainError("invalid parameters: n >= 1 required");
  if (p < n) throw DomainError("invalid parameters: p >= n required");
  if (!(m > n - 1)) throw DomainError("invalid parameters: m > n - 1 required");
  check_hermitian_pd(sigma, n, "invalid parameters: Sigma");
  check_hermitian_pd(shadowing_rate, n, "invalid parameters: M");
}

void ScaledIdentityParams::validate() const {
  if (n < 1) throw DomainError("invalid parameters: n >= 1 required");
  if (p < n) throw DomainError("invalid parameters: p >= n required");
  if (!(m > n - 1)) throw DomainError("invalid parameters: m > n - 1 required");
  if (!(sigma2_sigma > 0.0) || !std::isfinite(sigma2_sigma)) {
    throw DomainError("invalid parameters: sigma2_sigma > 0 required");
  }
  if (!(sigma2_m > 0.0) || !std::isfinite(sigma2_m)) {
    throw DomainError("invalid parameters: sigma2_m > 0 required");
  }
}

ModelParams ScaledIdentityParams::to_model() const {
  validate();
  ModelParams out;
  out.n = n;
  out.p = p;
  out.m = m;
  out.sigma = sigma2_sigma * HermitianMatrix<>::Identity(n, n);
  out.shadowing_rate = sigma2_m * HermitianMatrix<>::Identity(n, n);
  return out;
}

void SisoKappaMuParams::validate() const {
  if (!(kappa > 0.0)) throw DomainError("invalid parameters: kappa > 0 required");
  if (mu < 1) throw DomainError("invalid parameters: mu >= 1 required");
  if (!(m > 0.0)) throw DomainError("invalid parameters: m > 0 required");
  if (!(gamma_bar > 0.0)) throw DomainError("invalid parameters: gamma_bar > 0 required");
}

ChannelSampler::ChannelSampler(const ModelParams& params) : params_(params) {
  params_.validate();
  const int n = params_.n;
  sigma_sqrt_ = hermitian_sqrt(params_.sigma);
  rate_inv_sqrt_ = hermitian_sqrt(HermitianMatrix<>(params_.shadowing_rate.inverse()));
  for (int i = 0; i < n; ++i) gamma_.emplace_back(params_.m - i, 1.0);
  g_.resize(params_.p, n);
  lower_.resize(n, n);
  solver_ = Eigen::SelfAdjointEigenSolver<HermitianMatrix<>>(n);
}

GaussianChannelSampler::GaussianChannelSampler(int p, const HermitianMatrix<>& sigma,
                                               const ComplexMatrix<>& mean)
    : sigma_sqrt_(hermitian_sqrt(sigma)), mean_(mean) {
  const Eigen::Index n = sigma.rows();
  if (!is_hermitian_positive_definite(sigma)) {
    throw DomainError("GaussianChannelSampler: Sigma must be Hermitian positive definite");
  }
  if (p < n) throw DomainError("GaussianChannelSampler: p >= n required");
  if (mean_.size() == 0) mean_ = ComplexMatrix<>::Zero(p, n);
  if (mean_.rows() != p || mean_.cols() != n) {
    throw DomainError("GaussianChannelSampler: mean must be p x n");
  }
  g_.resize(p, n);
  solver_ = Eigen::SelfAdjointEigenSolver<HermitianMatrix<>>(n);
}

GaussianChannelSampler GaussianChannelSampler::with_los_gram(int p, const HermitianMatrix<>& sigma,
                                                             const HermitianMatrix<>& los_gram) {
  const Eigen::Index n = sigma.rows();
  ComplexMatrix<> mean = ComplexMatrix<>::Zero(p, n);
  mean.topRows(n) = hermitian_sqrt(los_gram);
  return GaussianChannelSampler(p, sigma, mean);
}

ScaledIdentityParams map_siso(const SisoKappaMuParams& siso) {
  siso.validate();
  ScaledIdentityParams out;
  out.n = 1;
  out.p = siso.mu;
  out.m = siso.m;
  // sigma_Sigma^{-2} = mu (1 + kappa) / gamma_bar,
  // sigma_M^2 = m (1 + kappa) / (kappa gamma_bar).
  out.sigma2_sigma = siso.gamma_bar / (siso.mu * (1.0 + siso.kappa));
  out.sigma2_m = siso.m * (1.0 + siso.kappa) / (siso.kappa * siso.gamma_bar);
  return out;
}

double siso_kappa(const ScaledIdentityParams& params) {
  return params.m / params.sigma2_m / (params.p * params.sigma2_sigma);
}

double siso_mean(const ScaledIdentityParams& params) {
  return params.p * params.sigma2_sigma + params.m / params.sigma2_m;
}

}  // namespace rsmimo
