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

#include "rsmimo/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rsmimo/channel_model.hpp"
#include "rsmimo/quadrature.hpp"
#include "rsmimo/special_functions.hpp"

namespace rsmimo {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this |bracket| / 2F1 ratio the finite Phi1 sum has lost too many
// digits to cancellation and the automatic route switches to quadrature.
constexpr double kBracketCancellation = 1e-9;

double log_det_hpd(const HermitianMatrix<>& a, const char* what) {
  Eigen::LLT<HermitianMatrix<>> llt(a);
  if (llt.info() != Eigen::Success) {
    throw DomainError(std::string(what) + " must be Hermitian positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

HermitianMatrix<> hermitian_part(const HermitianMatrix<>& a) { return 0.5 * (a + a.adjoint()); }

void require_square(const HermitianMatrix<>& a, int n, const char* what) {
  if (a.rows() != n || a.cols() != n) throw DomainError(std::string(what) + " must be n x n");
}

// Sigma^{-1} (Sigma^{-1} + M)^{-1} Sigma^{-1}
HermitianMatrix<> shadowing_kernel(const HermitianMatrix<>& sigma_inv, const HermitianMatrix<>& m) {
  const HermitianMatrix<> k = sigma_inv + m;
  return hermitian_part(sigma_inv * k.llt().solve(sigma_inv));
}

struct Geometry {
  int n;
  int p;
  int tau;
  double m;
  double s;  // sigma_Sigma^2
  double q;  // 1 + sigma_Sigma^2 sigma_M^2
  double sm;  // sigma_M^2
};

Geometry geometry(const ScaledIdentityParams& params) {
  params.validate();
  return {params.n, params.p, params.tau(), params.m, params.sigma2_sigma,
          1.0 + params.sigma2_sigma * params.sigma2_m, params.sigma2_m};
}

void require_index(int i, int j, int n) {
  if (i < 1 || i > n || j < 1 || j > n) throw DomainError("upsilon: index out of range");
}

struct ClosedFormEntry {
  SignedLog value;
  double cancellation;  // |bracket| / 2F1
};

ClosedFormEntry closed_form_entry(int i, int j, double x, const Geometry& g) {
  if (!(g.m < g.p)) throw DomainError("upsilon closed form requires m < p");
  const int big_n = g.tau - i - j;
  const double a = g.m - i + 1;
  const double c = g.p - i + 1;
  const double z = 1.0 / g.q;
  const double scaled_x = x / g.s;
  const double y = scaled_x / g.q;
  double f21 = 0.0;
  double bracket = 0.0;
  if (y <= kPhi1IntegralThreshold) {
    // Small x: the bracket is a near-cancelling difference, so every piece is
    // summed in extended precision from the raw parameters.
    using Ext = long double;
    const Ext qe = 1 + static_cast<Ext>(g.s) * g.sm;
    const Ext ze = 1 / qe;
    const Ext xe = static_cast<Ext>(x) / g.s;
    const Ext ye = xe / qe;
    const Ext f21e = extended::gauss_2f1<Ext>(big_n + 1, a, c, ze);
    Ext weight = std::exp(-xe);
    Ext sum = 0;
    for (int k = 0; k <= big_n; ++k) {
      sum += weight * extended::humbert_phi1<Ext>(a, big_n - k + 1, c, ze, ye);
      weight *= xe / (k + 1);
    }
    f21 = static_cast<double>(f21e);
    bracket = static_cast<double>(f21e - sum);
  } else {
    SeriesPolicy tight;
    tight.rel_tolerance = 1e-17;
    tight.max_terms = 100000;
    f21 = gauss_2f1(big_n + 1, a, c, z, tight);
    double sum = 0.0;
    for (int k = 0; k <= big_n; ++k) {
      const SignedLog phi = log_humbert_phi1(a, big_n - k + 1, c, z, y, tight);
      const double log_weight =
          -scaled_x + (k == 0 ? 0.0 : k * std::log(scaled_x)) - log_gamma(k + 1.0);
      sum += phi.sign * std::exp(log_weight + phi.log_abs);
    }
    bracket = f21 - sum;
  }
  const double log_prefactor =
      (g.p - j + 1) * std::log(g.s) + (i - g.n) * std::log(g.q) + log_gamma(big_n + 1.0);
  SignedLog out = SignedLog::from_value(bracket);
  if (!out.is_zero()) out.log_abs += log_prefactor;
  return {out, std::abs(bracket) / f21};
}

// ln of the Upsilon integrand y^N e^{-y/s} 1F1(m-i+1; p-i+1; y/(s q)) without
// the row factor.
double log_kernel(int i, int j, double y, const Geometry& g) {
  const int big_n = g.tau - i - j;
  if (y <= 0.0) return big_n == 0 ? 0.0 : kNegInf;
  const SignedLog k = log_kummer_1f1(g.m - i + 1, g.p - i + 1, y / (g.s * g.q));
  return big_n * std::log(y) - y / g.s + k.log_abs;
}

double log_row_factor(int i, const Geometry& g) { return (i - g.n) * std::log(g.s * g.q); }

SignedLog quadrature_entry(int i, int j, double x, const Geometry& g) {
  if (x <= 0.0) return SignedLog::zero();
  // Reference level so the integrand stays O(1) near its maximum. The probes
  // do not depend on x beyond clipping, so nearby x share the same scaling.
  const int big_n = g.tau - i - j;
  const double unit = g.s * (big_n + 1.0);
  double shift = log_kernel(i, j, x, g);
  for (int t = -16; t <= 40; ++t) {
    const double y = unit * std::ldexp(1.0, t);
    if (y >= x) break;
    shift = std::max(shift, log_kernel(i, j, y, g));
  }
  const double scale = std::min(x, unit);
  QuadratureTolerance tol;
  tol.abs = 0.0;
  tol.rel = 1e-13;
  const QuadratureResult r = integrate_decaying(
      [&](double y) { return std::exp(log_kernel(i, j, y, g) - shift); }, 0.0, x, scale, tol);
  if (!(r.value > 0.0)) return SignedLog::zero();
  return {log_row_factor(i, g) + shift + std::log(r.value), 1};
}

SignedLog entry(int i, int j, double x, const Geometry& g, UpsilonMethod method) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("upsilon: x >= 0 required");
  switch (method) {
    case UpsilonMethod::closed_form:
      return closed_form_entry(i, j, x, g).value;
    case UpsilonMethod::quadrature:
      return quadrature_entry(i, j, x, g);
    case UpsilonMethod::automatic:
      break;
  }
  if (g.m < g.p && x > 0.0) {
    const ClosedFormEntry cf = closed_form_entry(i, j, x, g);
    if (cf.cancellation > kBracketCancellation) return cf.value;
  }
  return quadrature_entry(i, j, x, g);
}

// Upsilon = D_r U D_c with U equilibrated; log_scale = ln det(D_r D_c).
struct ScaledMatrix {
  RealMatrix u;
  RealVector row_log;
  RealVector col_log;
  double log_scale = 0.0;
};

ScaledMatrix equilibrate(const std::vector<SignedLog>& e, int n) {
  ScaledMatrix out;
  out.u.resize(n, n);
  out.row_log = RealVector::Zero(n);
  out.col_log = RealVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    double r = kNegInf;
    for (int j = 0; j < n; ++j) r = std::max(r, e[i * n + j].log_abs);
    out.row_log[i] = std::isfinite(r) ? r : 0.0;
  }
  for (int j = 0; j < n; ++j) {
    double c = kNegInf;
    for (int i = 0; i < n; ++i) c = std::max(c, e[i * n + j].log_abs - out.row_log[i]);
    out.col_log[j] = std::isfinite(c) ? c : 0.0;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const SignedLog& v = e[i * n + j];
      out.u(i, j) = v.is_zero() ? 0.0 : v.sign * std::exp(v.log_abs - out.row_log[i] - out.col_log[j]);
    }
  }
  out.log_scale = out.row_log.sum() + out.col_log.sum();
  return out;
}

ScaledMatrix scaled_upsilon(double x, const Geometry& g, UpsilonMethod method) {
  std::vector<SignedLog> e(static_cast<std::size_t>(g.n * g.n));
  for (int i = 1; i <= g.n; ++i) {
    for (int j = 1; j <= g.n; ++j) e[(i - 1) * g.n + (j - 1)] = entry(i, j, x, g, method);
  }
  return equilibrate(e, g.n);
}

double log_constant(const Geometry& g) {
  const double n = g.n;
  return n * (n - 1) * std::log(std::numbers::pi) + 0.5 * n * (n - 1) * std::log(g.s * g.q) -
         g.p * n * std::log(g.s) - log_multivariate_gamma(g.n, g.n) -
         log_multivariate_gamma(g.n, g.p) - n * g.m * std::log(g.q / (g.q - 1.0));
}

// C |Upsilon(x)| without the range check.
double raw_cdf(double x, const Geometry& g, UpsilonMethod method) {
  if (x <= 0.0) return 0.0;
  const ScaledMatrix s = scaled_upsilon(x, g, method);
  const double det = s.u.partialPivLu().determinant();
  if (det == 0.0) return 0.0;
  const double sign = det > 0 ? 1.0 : -1.0;
  return sign * std::exp(log_constant(g) + s.log_scale + std::log(std::abs(det)));
}

double checked_cdf(double value, double x) {
  if (!std::isfinite(value) || value < -kCdfSlack || value > 1.0 + kCdfSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "max_eig_cdf(" << x << ") = " << value << " lies outside [0, 1]";
    throw NumericalConsistencyError(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

double difference_pdf(double x, const Geometry& g) {
  const double h = std::max(1e-6 * x, 1e-9);
  const double lo = std::max(x - h, 0.0);
  return (raw_cdf(x + h, g, UpsilonMethod::automatic) - raw_cdf(lo, g, UpsilonMethod::automatic)) /
         (x + h - lo);
}

}  // namespace

double gamma_wishart_logpdf(const HermitianMatrix<>& a, const ModelParams& params) {
  params.validate();
  const int n = params.n;
  require_square(a, n, "gamma_wishart_logpdf: A");
  if (!is_hermitian_positive_definite(a)) {
    throw DomainError("gamma_wishart_logpdf: A must be Hermitian positive definite");
  }
  const HermitianMatrix<> sigma_inv = hermitian_part(params.sigma.inverse());
  const HermitianMatrix<> kernel = shadowing_kernel(sigma_inv, params.shadowing_rate);
  const HermitianMatrix<> a_half = hermitian_sqrt(a);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> es(hermitian_part(a_half * kernel * a_half),
                                                      Eigen::EigenvaluesOnly);
  const RealVector arg = es.eigenvalues().cwiseMax(0.0);
  const SignedLog f11 = log_hyp_1f1_matrix(params.m, params.p, EigenSpectrum(arg));
  return -(sigma_inv * a).trace().real() + (params.p - n) * log_det_hpd(a, "A") +
         params.m * log_det_hpd(params.shadowing_rate, "M") - log_multivariate_gamma(n, params.p) -
         params.p * log_det_hpd(params.sigma, "Sigma") -
         params.m * log_det_hpd(sigma_inv + params.shadowing_rate, "Sigma^-1 + M") + f11.log_abs;
}

double log_mgf(const HermitianMatrix<>& s, const ModelParams& params) {
  params.validate();
  const int n = params.n;
  require_square(s, n, "mgf: S");
  if (s.isZero(0.0)) return 0.0;
  const HermitianMatrix<> sigma_inv = hermitian_part(params.sigma.inverse());
  const HermitianMatrix<> t = hermitian_part(sigma_inv - s);
  Eigen::LLT<HermitianMatrix<>> llt(t);
  if (llt.info() != Eigen::Success) {
    throw DomainError("mgf: Sigma^-1 - S must be Hermitian positive definite");
  }
  const double log_det_t = 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
  // |I - Z T^{-1}| = |I - L^{-1} Z L^{-H}| with T = L L^H.
  HermitianMatrix<> w = shadowing_kernel(sigma_inv, params.shadowing_rate);
  llt.matrixL().solveInPlace(w);
  w.adjointInPlace();
  llt.matrixL().solveInPlace(w);
  const HermitianMatrix<> r =
      hermitian_part(HermitianMatrix<>::Identity(n, n) - w);
  const double log_det_r = log_det_hpd(r, "mgf: I - Z (Sigma^-1 - S)^-1");
  return -params.p * log_det_t + params.m * log_det_hpd(params.shadowing_rate, "M") -
         params.p * log_det_hpd(params.sigma, "Sigma") -
         params.m * log_det_hpd(sigma_inv + params.shadowing_rate, "Sigma^-1 + M") -
         params.m * log_det_r;
}

double mgf(const HermitianMatrix<>& s, const ModelParams& params) {
  return std::exp(log_mgf(s, params));
}

double joint_eigenvalue_logpdf(const EigenSpectrum& spectrum, const ScaledIdentityParams& params) {
  const Geometry g = geometry(params);
  if (spectrum.size() != g.n) throw DomainError("joint_eigenvalue_logpdf: need n eigenvalues");
  const RealVector& phi = spectrum.values();
  if (!(phi[0] > 0.0)) throw DomainError("joint_eigenvalue_logpdf: eigenvalues must be positive");
  double log_vandermonde = 0.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (!(phi[j] > phi[i])) {
        throw DomainError("joint_eigenvalue_logpdf: eigenvalues must be distinct");
      }
      log_vandermonde += 2.0 * std::log(phi[j] - phi[i]);
    }
  }
  const double n = g.n;
  const SignedLog f11 = log_hyp_1f1_matrix(g.m, g.p, spectrum.scaled(1.0 / (g.s * g.q)));
  return n * (n - 1) * std::log(std::numbers::pi) + log_vandermonde - g.p * n * std::log(g.s) -
         log_multivariate_gamma(g.n, g.n) - log_multivariate_gamma(g.n, g.p) -
         n * g.m * std::log(g.q / (g.q - 1.0)) + (g.p - g.n) * phi.array().log().sum() -
         phi.sum() / g.s + f11.log_abs;
}

double joint_eigenvalue_logpdf(const RealVector& ordered, const ScaledIdentityParams& params) {
  return joint_eigenvalue_logpdf(EigenSpectrum::from_sorted(ordered), params);
}

SignedLog log_upsilon_entry(int i, int j, double x, const ScaledIdentityParams& params,
                            UpsilonMethod method) {
  const Geometry g = geometry(params);
  require_index(i, j, g.n);
  return entry(i, j, x, g, method);
}

double upsilon_entry(int i, int j, double x, const ScaledIdentityParams& params,
                     UpsilonMethod method) {
  return log_upsilon_entry(i, j, x, params, method).value();
}

SignedLog log_upsilon_derivative(int i, int j, double x, const ScaledIdentityParams& params) {
  const Geometry g = geometry(params);
  require_index(i, j, g.n);
  if (!(x >= 0.0)) throw DomainError("upsilon: x >= 0 required");
  const double lk = log_kernel(i, j, x, g);
  if (!std::isfinite(lk)) return SignedLog::zero();
  return {log_row_factor(i, g) + lk, 1};
}

UpsilonMatrix upsilon_matrix(double x, const ScaledIdentityParams& params, UpsilonMethod method) {
  const Geometry g = geometry(params);
  UpsilonMatrix out;
  out.x = x;
  out.entries.resize(g.n, g.n);
  for (int i = 1; i <= g.n; ++i) {
    for (int j = 1; j <= g.n; ++j) out.entries(i - 1, j - 1) = entry(i, j, x, g, method).value();
  }
  return out;
}

RealMatrix upsilon_derivative_matrix(double x, const ScaledIdentityParams& params) {
  const int n = params.n;
  RealMatrix out(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) out(i - 1, j - 1) = log_upsilon_derivative(i, j, x, params).value();
  }
  return out;
}

double log_cdf_constant(const ScaledIdentityParams& params) { return log_constant(geometry(params)); }

double max_eig_cdf(double x, const ScaledIdentityParams& params, UpsilonMethod method) {
  if (std::isnan(x)) throw DomainError("max_eig_cdf: x is NaN");
  const Geometry g = geometry(params);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return checked_cdf(raw_cdf(x, g, method), x);
}

double max_eig_pdf(double x, const ScaledIdentityParams& params) {
  if (std::isnan(x)) throw DomainError("max_eig_pdf: x is NaN");
  const Geometry g = geometry(params);
  if (x <= 0.0 || std::isinf(x)) return 0.0;
  const ScaledMatrix s = scaled_upsilon(x, g, UpsilonMethod::automatic);
  const Eigen::PartialPivLU<RealMatrix> lu(s.u);
  const double det = lu.determinant();
  double value = std::numeric_limits<double>::quiet_NaN();
  if (det != 0.0 && lu.rcond() >= kPdfMinRcond) {
    RealMatrix jm(g.n, g.n);
    for (int i = 1; i <= g.n; ++i) {
      for (int j = 1; j <= g.n; ++j) {
        const double lk = log_kernel(i, j, x, g);
        jm(i - 1, j - 1) = std::isfinite(lk) ? std::exp(log_row_factor(i, g) + lk -
                                                        s.row_log[i - 1] - s.col_log[j - 1])
                                              : 0.0;
      }
    }
    const double trace = lu.solve(jm).trace();
    const double cdf = (det > 0 ? 1.0 : -1.0) *
                       std::exp(log_constant(g) + s.log_scale + std::log(std::abs(det)));
    value = cdf * trace;
  }
  if (!std::isfinite(value) || value < 0.0) value = difference_pdf(x, g);
  return std::max(value, 0.0);
}

double max_eig_quantile(double prob, const ScaledIdentityParams& params, double rel_tol) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("max_eig_quantile: 0 < prob < 1 required");
  const Geometry g = geometry(params);
  double lo = 0.0;
  double hi = g.s * g.p * g.n + g.m / g.sm;  // about E[tr Y]
  while (max_eig_cdf(hi, params) < prob) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (max_eig_cdf(mid, params) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string LimitingLaw::description() const {
  std::ostringstream out;
  out.precision(17);
  const bool central = los_gram.size() == 0 || los_gram.isZero(0.0);
  out << (central ? "central" : "noncentral") << " complex Wishart W_" << n << "(" << p
      << ", Sigma = " << covariance(0, 0).real() << " I";
  if (!central) out << ", Theta = " << noncentrality(0, 0).real() << " I";
  out << ")";
  return out.str();
}

LimitingLaw reduction_params(ReductionKind kind, const ScaledIdentityParams& params,
                             double limit_scale) {
  params.validate();
  const int n = params.n;
  const HermitianMatrix<> eye = HermitianMatrix<>::Identity(n, n);
  LimitingLaw law;
  law.kind = kind;
  law.n = n;
  law.p = params.p;
  law.los_gram = HermitianMatrix<>::Zero(n, n);
  law.noncentrality = HermitianMatrix<>::Zero(n, n);
  switch (kind) {
    case ReductionKind::rayleigh_limit:
      law.covariance = params.sigma2_sigma * eye;
      break;
    case ReductionKind::rayleigh_mp:
      law.covariance = (params.sigma2_sigma + 1.0 / params.sigma2_m) * eye;
      break;
    case ReductionKind::rician_limit: {
      const double power = limit_scale > 0.0 ? limit_scale : params.m / params.sigma2_m;
      law.covariance = params.sigma2_sigma * eye;
      law.los_gram = power * eye;
      law.noncentrality = (power / params.sigma2_sigma) * eye;
      break;
    }
  }
  return law;
}

ScaledIdentityParams rician_ladder_params(const ScaledIdentityParams& base, double m,
                                          double limit_scale) {
  if (!(limit_scale > 0.0)) throw DomainError("rician_ladder_params: limit_scale > 0 required");
  ScaledIdentityParams out = base;
  out.m = m;
  out.sigma2_m = m / limit_scale;
  out.validate();
  return out;
}

}  // namespace rsmimo
