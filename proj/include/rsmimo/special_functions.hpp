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

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsmimo {

/// Stopping rule shared by every scalar series: the sum stops once
/// `consecutive_small_terms` successive terms are each below
/// `rel_tolerance` times the running sum, where a term is measured together
/// with a geometric bound on the remainder it starts.
struct SeriesPolicy {
  double rel_tolerance = 1e-12;
  int max_terms = 10000;
  int consecutive_small_terms = 3;

  void validate() const;
};

/// A real number held as sign * exp(log_abs). Zero is {-inf, 0}.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog from_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
  }
  static SignedLog zero() { return {}; }
  static SignedLog one() { return {0.0, 1}; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  bool is_zero() const { return sign == 0; }

  SignedLog operator*(const SignedLog& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {log_abs + o.log_abs, sign * o.sign};
  }
  SignedLog operator/(const SignedLog& o) const;
};

SignedLog operator+(const SignedLog& a, const SignedLog& b);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln of the complex multivariate gamma function
/// pi^{n(n-1)/2} prod_{i=1..n} Gamma(a - i + 1); requires a > n - 1.
double log_multivariate_gamma(int n, double a);

/// Rising factorial (a)_k in log-magnitude + sign form.
SignedLog log_pochhammer(double a, long k);
double pochhammer(double a, long k);

/// Kummer confluent hypergeometric 1F1(a; b; x).
double kummer_1f1(double a, double b, double x, const SeriesPolicy& policy = {});
SignedLog log_kummer_1f1(double a, double b, double x, const SeriesPolicy& policy = {});

/// Confluent limit function 0F1(; b; x).
double hyp_0f1(double b, double x, const SeriesPolicy& policy = {});
SignedLog log_hyp_0f1(double b, double x, const SeriesPolicy& policy = {});

/// Gauss hypergeometric 2F1(a, b; c; x) for |x| < 1.
double gauss_2f1(double a, double b, double c, double x, const SeriesPolicy& policy = {});

/// Humbert confluent function of two variables,
///   Phi1(a, b, c; x, y) = sum_{r,s} (a)_{r+s} (b)_s / ((c)_{r+s} r! s!) y^r x^s,
/// so that Phi1(a,b,c;x,0) = 2F1(a,b;c;x) and Phi1(a,b,c;0,y) = 1F1(a;c;y).
/// Requires 0 <= x < 1 and y >= 0.
double humbert_phi1(double a, double b, double c, double x, double y,
                    const SeriesPolicy& policy = {});
SignedLog log_humbert_phi1(double a, double b, double c, double x, double y,
                           const SeriesPolicy& policy = {});

/// Evaluation routes for Phi1, exposed so the two can be cross-checked.
enum class Phi1Method { automatic, series, integral };
SignedLog log_humbert_phi1(double a, double b, double c, double x, double y,
                           Phi1Method method, const SeriesPolicy& policy = {});

/// y above which Phi1 switches from the double series to the Euler integral.
inline constexpr double kPhi1IntegralThreshold = 30.0;

bool is_nonpositive_integer(double x);

[[noreturn]] void throw_convergence(const char* name);

/// Plain summation of the positive-term series in a caller-chosen floating
/// type, for differences of hypergeometric values that cancel in double.
/// All three require a, b, c > 0 and nonnegative arguments (x < 1 for 2F1 and
/// Phi1); values must stay inside the range of Real.
namespace extended {

template <typename Real, typename Ratio>
Real sum_positive_series(Ratio&& ratio, int max_terms, const char* name) {
  const Real tol = std::numeric_limits<Real>::epsilon() / 16;
  Real term = 1;
  Real sum = 1;
  for (int k = 0; k < max_terms; ++k) {
    term *= ratio(k);
    sum += term;
    const Real r = ratio(k + 1);
    if (r < 1 && term * std::max(Real(1), r / (1 - r)) < tol * sum) return sum;
  }
  throw_convergence(name);
}

template <typename Real>
Real kummer_1f1(Real a, Real b, Real x, int max_terms = 100000) {
  return sum_positive_series<Real>([&](int k) { return (a + k) / (b + k) * x / (k + 1); },
                                   max_terms, "extended::kummer_1f1");
}

template <typename Real>
Real gauss_2f1(Real a, Real b, Real c, Real x, int max_terms = 100000) {
  return sum_positive_series<Real>(
      [&](int k) { return (a + k) * (b + k) / ((c + k) * (k + 1)) * x; }, max_terms,
      "extended::gauss_2f1");
}

/// sum_s (a)_s (b)_s / ((c)_s s!) x^s 1F1(a+s; c+s; y)
template <typename Real>
Real humbert_phi1(Real a, Real b, Real c, Real x, Real y, int max_terms = 100000) {
  const Real tol = std::numeric_limits<Real>::epsilon() / 16;
  Real coef = 1;
  Real sum = 0;
  Real previous = 0;
  for (int s = 0; s < max_terms; ++s) {
    if (s > 0) coef *= (a + s - 1) * (b + s - 1) / ((c + s - 1) * s) * x;
    const Real term = coef * kummer_1f1<Real>(a + s, c + s, y, max_terms);
    sum += term;
    if (s > 0) {
      const Real r = term / previous;
      if (r < 1 && term * std::max(Real(1), r / (1 - r)) < tol * sum) return sum;
    }
    previous = term;
  }
  throw_convergence("extended::humbert_phi1");
}

}  // namespace extended

}  // namespace rsmimo
