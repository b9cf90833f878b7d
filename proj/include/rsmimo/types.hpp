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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rsmimo {

template <typename Scalar = double>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// Same storage as ComplexMatrix; the name documents the Hermitian contract.
template <typename Scalar = double>
using HermitianMatrix = ComplexMatrix<Scalar>;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature ran out of budget before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectrum too clustered for the determinant-ratio formula.
class DegenerateSpectrumError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computed probability left its admissible range by more than the slack.
class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of H = Hs + Xi with Hs ~ CN(0, I_p (x) Sigma) and
/// Xi^H Xi ~ Gamma_n(m, M). Sigma is a covariance (power units), M a rate
/// matrix (inverse power units), so E[Xi^H Xi] = m M^-1.
struct ModelParams {
  int n = 1;
  int p = 1;
  double m = 1.0;
  HermitianMatrix<> sigma;
  HermitianMatrix<> shadowing_rate;

  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

/// Sigma = sigma2_sigma I_n and M = sigma2_m I_n.
struct ScaledIdentityParams {
  int n = 1;
  int p = 1;
  double m = 1.0;
  double sigma2_sigma = 1.0;
  double sigma2_m = 1.0;

  void validate() const;
  int tau() const { return p + n; }
  ModelParams to_model() const;
};

/// SISO kappa-mu shadowed parameters. mu is restricted to integers because it
/// maps onto the transmit dimension p.
struct SisoKappaMuParams {
  double kappa = 1.0;
  int mu = 1;
  double m = 1.0;
  double gamma_bar = 1.0;

  void validate() const;
};

bool is_hermitian_positive_definite(const HermitianMatrix<>& a);

}  // namespace rsmimo
