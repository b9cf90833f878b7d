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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rsmimo/types.hpp"

namespace rsmimo {

/// Default generator. Every sampler takes the engine by reference so callers
/// own seeding and stream splitting.
using Rng = std::mt19937_64;

/// Hermitian square root through an eigendecomposition; eigenvalues below
/// 1e-12 * max|lambda| (including round-off negatives) are clamped to zero.
template <typename Derived>
typename Derived::PlainObject hermitian_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(a);
  auto lambda = es.eigenvalues();
  const auto tol = 1e-12 * lambda.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda[i] = lambda[i] > tol ? std::sqrt(lambda[i]) : 0;
  return es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().adjoint();
}

/// Y = H^H H, symmetrized so the result is exactly Hermitian.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(
    const Eigen::MatrixBase<Derived>& h) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> y = h.adjoint() * h;
  return (0.5 * (y + y.adjoint())).eval();
}

/// Largest eigenvalue of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar max_eigenvalue(const Eigen::MatrixBase<Derived>& y) {
  if (!y.allFinite()) throw DomainError("max_eigenvalue: non-finite input");
  if (y.rows() != y.cols()) throw DomainError("max_eigenvalue: square matrix required");
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> es(y, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[y.rows() - 1];
}

template <typename Scalar, typename Engine>
std::complex<Scalar> standard_complex_normal(Engine& rng) {
  std::normal_distribution<Scalar> normal;
  const Scalar s = static_cast<Scalar>(M_SQRT1_2);
  const Scalar re = normal(rng);
  const Scalar im = normal(rng);
  return {s * re, s * im};
}

template <typename Engine>
ComplexMatrix<> standard_complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng) {
  ComplexMatrix<> g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = standard_complex_normal<double>(rng);
  }
  return g;
}

/// Draws of the channel H = Hs + Xi with all factorizations of
/// Sigma and M cached. Xi is realized as [B^{1/2}; 0] with B ~ Gamma_n(m, M).
class ChannelSampler {
 public:
  explicit ChannelSampler(const ModelParams& params);

  const ModelParams& params() const { return params_; }

  template <typename Engine>
  const ComplexMatrix<>& scattering(Engine& rng) {
    fill_normal(g_, rng);
    scattering_.noalias() = g_ * sigma_sqrt_;
    return scattering_;
  }

  /// B ~ Gamma_n(m, M) by the complex Bartlett construction.
  template <typename Engine>
  const HermitianMatrix<>& gamma_variate(Engine& rng) {
    const int n = params_.n;
    lower_.setZero();
    for (int i = 0; i < n; ++i) {
      lower_(i, i) = std::sqrt(gamma_[i](rng));
      for (int j = 0; j < i; ++j) lower_(i, j) = standard_complex_normal<double>(rng);
    }
    factor_.noalias() = rate_inv_sqrt_ * lower_;
    b_.noalias() = factor_ * factor_.adjoint();
    return b_;
  }

  template <typename Engine>
  const ComplexMatrix<>& channel(Engine& rng) {
    const HermitianMatrix<>& b = gamma_variate(rng);
    solver_.compute(b);
    auto lambda = solver_.eigenvalues();
    const double tol = 1e-12 * lambda.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda[i] = lambda[i] > tol ? std::sqrt(lambda[i]) : 0.0;
    b_sqrt_.noalias() = solver_.eigenvectors() * lambda.asDiagonal() * solver_.eigenvectors().adjoint();
    channel_ = scattering(rng);
    channel_.topRows(params_.n) += b_sqrt_;
    return channel_;
  }

  template <typename Engine>
  const HermitianMatrix<>& gram_matrix(Engine& rng) {
    const ComplexMatrix<>& h = channel(rng);
    y_.noalias() = h.adjoint() * h;
    y_ = 0.5 * (y_ + y_.adjoint()).eval();
    return y_;
  }

  template <typename Engine>
  double max_eigenvalue(Engine& rng) {
    solver_.compute(gram_matrix(rng), Eigen::EigenvaluesOnly);
    return solver_.eigenvalues()[params_.n - 1];
  }

 private:
  template <typename Engine>
  static void fill_normal(ComplexMatrix<>& m, Engine& rng) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = standard_complex_normal<double>(rng);
    }
  }

  ModelParams params_;
  HermitianMatrix<> sigma_sqrt_;
  HermitianMatrix<> rate_inv_sqrt_;
  std::vector<std::gamma_distribution<double>> gamma_;
  ComplexMatrix<> g_, scattering_, channel_, lower_, factor_;
  HermitianMatrix<> b_, b_sqrt_, y_;
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> solver_;
};

/// Gaussian channel H = G Sigma^{1/2} + mean: the central (mean = 0) and
/// noncentral Wishart laws used as limiting references.
class GaussianChannelSampler {
 public:
  GaussianChannelSampler(int p, const HermitianMatrix<>& sigma, const ComplexMatrix<>& mean);
  /// mean = [los_gram^{1/2}; 0], so that mean^H mean = los_gram.
  static GaussianChannelSampler with_los_gram(int p, const HermitianMatrix<>& sigma,
                                              const HermitianMatrix<>& los_gram);

  template <typename Engine>
  double max_eigenvalue(Engine& rng) {
    for (Eigen::Index j = 0; j < g_.cols(); ++j) {
      for (Eigen::Index i = 0; i < g_.rows(); ++i) g_(i, j) = standard_complex_normal<double>(rng);
    }
    h_.noalias() = g_ * sigma_sqrt_;
    h_ += mean_;
    y_.noalias() = h_.adjoint() * h_;
    y_ = 0.5 * (y_ + y_.adjoint()).eval();
    solver_.compute(y_, Eigen::EigenvaluesOnly);
    return solver_.eigenvalues()[y_.rows() - 1];
  }

 private:
  HermitianMatrix<> sigma_sqrt_;
  ComplexMatrix<> mean_, g_, h_;
  HermitianMatrix<> y_;
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> solver_;
};

/// Rows i.i.d. CN(0, Sigma): G Sigma^{1/2}.
template <typename Engine>
ComplexMatrix<> sample_scattering(const ModelParams& params, Engine& rng) {
  params.validate();
  return ChannelSampler(params).scattering(rng);
}

/// B ~ Gamma_n(beta, Omega) (mean beta Omega^{-1}); beta may be non-integer.
template <typename Engine>
HermitianMatrix<> sample_gamma_variate(int n, double beta, const HermitianMatrix<>& omega,
                                       Engine& rng) {
  if (!(beta > n - 1)) throw DomainError("sample_gamma_variate: beta > n - 1 required");
  ModelParams params;
  params.n = n;
  params.p = n;
  params.m = beta;
  params.sigma = HermitianMatrix<>::Identity(n, n);
  params.shadowing_rate = omega;
  params.validate();
  return ChannelSampler(params).gamma_variate(rng);
}

template <typename Engine>
ComplexMatrix<> sample_channel(const ModelParams& params, Engine& rng) {
  params.validate();
  return ChannelSampler(params).channel(rng);
}

/// n = 1 parameters reproducing a kappa-mu shadowed SNR with mean gamma_bar.
ScaledIdentityParams map_siso(const SisoKappaMuParams& siso);

/// kappa recovered from a scalar model: m sigma_M^{-2} / (p sigma_Sigma^2).
double siso_kappa(const ScaledIdentityParams& params);

/// E[y] = p sigma_Sigma^2 + m sigma_M^{-2} for n = 1.
double siso_mean(const ScaledIdentityParams& params);

}  // namespace rsmimo
