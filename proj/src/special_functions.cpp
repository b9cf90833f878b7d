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

#include "rsmimo/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rsmimo/quadrature.hpp"
#include "rsmimo/types.hpp"

namespace rsmimo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRescaleAbove = 1e250;
constexpr double kLogTermOverflow = 575.6;  // ln(1e250)

double lgamma_signed(double x, int* sign) {
#if defined(__GLIBC__)
  return ::lgamma_r(x, sign);
#else
  const double v = std::lgamma(x);
  *sign = (x > 0 || std::fmod(std::floor(x), 2.0) != 0.0) ? 1 : -1;
  return v;
#endif
}

// Running sum of terms given in log form, kept relative to the largest
// magnitude seen so far.
class LogSum {
 public:
  void add(const SignedLog& t) {
    if (t.sign == 0) return;
    if (t.log_abs > scale_) {
      acc_ = (scale_ == -kInf) ? 0.0 : acc_ * std::exp(scale_ - t.log_abs);
      scale_ = t.log_abs;
    }
    acc_ += t.sign * std::exp(t.log_abs - scale_);
  }
  SignedLog total() const {
    if (acc_ == 0.0) return {};
    return {scale_ + std::log(std::abs(acc_)), acc_ > 0 ? 1 : -1};
  }
  // Magnitude of the running sum relative to a term, both in logs.
  double log_abs() const { return acc_ == 0.0 ? -kInf : scale_ + std::log(std::abs(acc_)); }

 private:
  double scale_ = -kInf;
  double acc_ = 0.0;
};

// sum_{k>=0} t_k with t_0 = 1 and t_{k+1} = t_k * ratio(k), summed under the
// policy with periodic rescaling so intermediate terms may exceed DBL_MAX.
template <typename Ratio>
SignedLog sum_hypergeometric_series(Ratio&& ratio, const SeriesPolicy& policy, const char* name) {
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  int small = 0;
  bool converged = false;
  for (int k = 0; k < policy.max_terms; ++k) {
    term *= ratio(k);
    if (term == 0.0) {  // terminating series
      converged = true;
      break;
    }
    sum += term;
    // Geometric bound on the remainder, so slowly decaying series (ratio
    // near 1) are not cut short.
    const double r = std::abs(ratio(k + 1));
    const double tail = r < 1.0 ? std::abs(term) * std::max(1.0, r / (1.0 - r)) : kInf;
    if (tail < policy.rel_tolerance * std::abs(sum)) {
      if (++small >= policy.consecutive_small_terms) {
        converged = true;
        break;
      }
    } else {
      small = 0;
    }
    const double big = std::max(std::abs(term), std::abs(sum));
    if (big > kRescaleAbove) {
      term /= big;
      sum /= big;
      log_scale += std::log(big);
    }
  }
  if (!converged) {
    throw ConvergenceError(std::string(name) + ": series did not converge within " +
                           std::to_string(policy.max_terms) + " terms");
  }
  if (sum == 0.0) return {};
  return {log_scale + std::log(std::abs(sum)), sum > 0 ? 1 : -1};
}

SignedLog kummer_series(double a, double b, double x, const SeriesPolicy& policy) {
  return sum_hypergeometric_series(
      [&](int k) { return (a + k) / (b + k) * x / (k + 1.0); }, policy, "kummer_1f1");
}

// Leading asymptotic expansion for large positive x, returned only when the
// expansion converges below double precision and the exponentially small
// companion term is negligible.
bool kummer_asymptotic(double a, double b, double x, SignedLog* out) {
  if (!(a > 0.0 && b > 0.0)) return false;
  int sign_ba = 1;
  const double log_companion =
      std::lgamma(a) - lgamma_signed(b - a, &sign_ba) - x + (b - 2.0 * a) * std::log(x);
  if (!is_nonpositive_integer(b - a) && log_companion > -40.0) return false;
  double term = 1.0;
  double sum = 1.0;
  for (int s = 0; s < 200; ++s) {
    const double next = term * (b - a + s) * (1.0 - a + s) / ((s + 1.0) * x);
    if (next == 0.0) break;
    if (std::abs(next) > std::abs(term)) return false;
    sum += next;
    term = next;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    if (s == 199) return false;
  }
  if (!(sum > 0.0)) return false;
  out->log_abs = std::lgamma(b) - std::lgamma(a) + x + (a - b) * std::log(x) + std::log(sum);
  out->sign = 1;
  return true;
}

void require_valid_denominator(double c, const char* name) {
  if (is_nonpositive_integer(c)) {
    throw DomainError(std::string(name) + ": denominator parameter is a nonpositive integer");
  }
}

}  // namespace

void throw_convergence(const char* name) {
  throw ConvergenceError(std::string(name) + ": series did not converge");
}

void SeriesPolicy::validate() const {
  if (!(rel_tolerance > 0.0)) throw DomainError("SeriesPolicy: rel_tolerance > 0 required");
  if (max_terms < 1) throw DomainError("SeriesPolicy: max_terms >= 1 required");
  if (consecutive_small_terms < 2) {
    throw DomainError("SeriesPolicy: consecutive_small_terms >= 2 required");
  }
}

SignedLog SignedLog::operator/(const SignedLog& o) const {
  if (o.sign == 0) throw DomainError("SignedLog: division by zero");
  if (sign == 0) return {};
  return {log_abs - o.log_abs, sign * o.sign};
}

SignedLog operator+(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const SignedLog& big = a.log_abs >= b.log_abs ? a : b;
  const SignedLog& small = a.log_abs >= b.log_abs ? b : a;
  const double r = big.sign + small.sign * std::exp(small.log_abs - big.log_abs);
  if (r == 0.0) return {};
  return {big.log_abs + std::log(std::abs(r)), r > 0 ? 1 : -1};
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x > 0 required");
  int sign = 1;
  return lgamma_signed(x, &sign);
}

double log_multivariate_gamma(int n, double a) {
  if (n < 1) throw DomainError("log_multivariate_gamma: n >= 1 required");
  if (!(a > n - 1)) throw DomainError("log_multivariate_gamma: a > n - 1 required");
  double r = 0.5 * n * (n - 1) * std::log(std::numbers::pi);
  for (int i = 1; i <= n; ++i) r += log_gamma(a - i + 1);
  return r;
}

SignedLog log_pochhammer(double a, long k) {
  if (k < 0) throw DomainError("pochhammer: k >= 0 required");
  SignedLog r = SignedLog::one();
  long i = 0;
  for (; i < k && a + i <= 0.0; ++i) {
    const double f = a + i;
    if (f == 0.0) return SignedLog::zero();
    r.log_abs += std::log(-f);
    r.sign = -r.sign;
  }
  if (i == k) return r;
  const double start = a + i;
  if (k - i <= 24) {
    double prod = 1.0;
    for (long j = i; j < k; ++j) prod *= a + j;
    if (std::isfinite(prod) && prod > 0.0) {
      r.log_abs += std::log(prod);
      return r;
    }
  }
  r.log_abs += log_gamma(a + k) - log_gamma(start);
  return r;
}

double pochhammer(double a, long k) { return log_pochhammer(a, k).value(); }

SignedLog log_kummer_1f1(double a, double b, double x, const SeriesPolicy& policy) {
  policy.validate();
  require_valid_denominator(b, "kummer_1f1");
  if (x == 0.0) return SignedLog::one();
  if (a == b) return {x, 1};
  if (is_nonpositive_integer(a)) return kummer_series(a, b, x, policy);
  // Kummer transform 1F1(a;b;x) = e^x 1F1(b-a;b;-x), taken in whichever
  // direction leaves a series of nonnegative terms.
  const bool transform =
      (x > 0.0 && is_nonpositive_integer(b - a)) || (x < 0.0 && b > 0.0 && b - a > 0.0);
  if (transform) {
    SignedLog r = kummer_series(b - a, b, -x, policy);
    r.log_abs += x;
    return r;
  }
  if (x > 50.0) {
    SignedLog r;
    if (kummer_asymptotic(a, b, x, &r)) return r;
  }
  return kummer_series(a, b, x, policy);
}

double kummer_1f1(double a, double b, double x, const SeriesPolicy& policy) {
  return log_kummer_1f1(a, b, x, policy).value();
}

SignedLog log_hyp_0f1(double b, double x, const SeriesPolicy& policy) {
  policy.validate();
  require_valid_denominator(b, "hyp_0f1");
  if (x == 0.0) return SignedLog::one();
  return sum_hypergeometric_series([&](int k) { return x / ((b + k) * (k + 1.0)); }, policy,
                                   "hyp_0f1");
}

double hyp_0f1(double b, double x, const SeriesPolicy& policy) {
  return log_hyp_0f1(b, x, policy).value();
}

double gauss_2f1(double a, double b, double c, double x, const SeriesPolicy& policy) {
  policy.validate();
  if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1: |x| < 1 required");
  require_valid_denominator(c, "gauss_2f1");
  if (x == 0.0) return 1.0;
  return sum_hypergeometric_series(
             [&](int k) { return (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x; }, policy,
             "gauss_2f1")
      .value();
}

namespace {

// sum_s (a)_s (b)_s / ((c)_s s!) x^s 1F1(a+s; c+s; y). Returns false when a
// term magnitude crosses the overflow guard, signalling a switch to the
// integral route.
bool phi1_series(double a, double b, double c, double x, double y, const SeriesPolicy& policy,
                 bool allow_bail_out, SignedLog* out) {
  LogSum sum;
  SignedLog coef = SignedLog::one();
  double previous_log = 0.0;
  int small = 0;
  for (int s = 0; s < policy.max_terms; ++s) {
    if (s > 0) {
      const double r = (a + s - 1) * (b + s - 1) / ((c + s - 1) * s) * x;
      if (r == 0.0) {  // terminating in s
        *out = sum.total();
        return true;
      }
      coef = coef * SignedLog::from_value(r);
    }
    const SignedLog term = coef * log_kummer_1f1(a + s, c + s, y, policy);
    if (allow_bail_out && term.log_abs > kLogTermOverflow) return false;
    sum.add(term);
    // Observed term ratio gives a geometric bound on the remainder.
    const double r = s > 0 ? std::exp(term.log_abs - previous_log) : kInf;
    previous_log = term.log_abs;
    const double log_tail = r < 1.0 ? term.log_abs + std::max(0.0, std::log(r / (1.0 - r))) : kInf;
    if (term.sign == 0 || log_tail < std::log(policy.rel_tolerance) + sum.log_abs()) {
      if (++small >= policy.consecutive_small_terms) {
        *out = sum.total();
        return true;
      }
    } else {
      small = 0;
    }
  }
  if (x == 0.0 || coef.sign == 0) {
    *out = sum.total();
    return true;
  }
  throw ConvergenceError("humbert_phi1: series did not converge within " +
                         std::to_string(policy.max_terms) + " terms");
}

// Euler-type representation with t = 1 - u:
//   Phi1 = G e^y int_0^1 (1-u)^{a-1} u^{c-a-1} (1-x+xu)^{-b} e^{-yu} du,
//   G = Gamma(c) / (Gamma(a) Gamma(c-a)).
SignedLog phi1_integral(double a, double b, double c, double x, double y, double rel_tol) {
  if (!(a > 0.0 && c > a)) {
    throw DomainError("humbert_phi1: integral representation requires c > a > 0");
  }
  const double one_minus_x = 1.0 - x;
  // Integrand scaled by e^{-y u}; u and 1-u are passed without cancellation.
  auto integrand = [&](double u, double one_minus_u) {
    if (u <= 0.0 || one_minus_u <= 0.0) {
      // Endpoint values only matter when the exponents vanish.
      if ((u <= 0.0 && c - a - 1.0 < 0.0) || (one_minus_u <= 0.0 && a - 1.0 < 0.0)) return 0.0;
    }
    const double log_v = (a - 1.0) * std::log(one_minus_u) + (c - a - 1.0) * std::log(u) -
                         b * std::log(one_minus_x + x * u) - y * u;
    return std::exp(log_v);
  };
  double total = 0.0;
  double lo = 0.0;
  double width = (y > 1.0) ? 1.0 / y : 1.0;
  double previous = kInf;
  int negligible = 0;
  while (lo < 1.0) {
    const double hi = std::min(1.0, lo + width);
    const double seg_lo = lo;
    const QuadratureResult r = integrate_tanh_sinh(
        [&](double, double dl, double dr) { return integrand(seg_lo + dl, (1.0 - hi) + dr); }, lo,
        hi, rel_tol);
    total += r.value;
    if (r.value <= previous && r.value <= 1e-18 * total && total > 0.0) {
      if (++negligible >= 2) break;
    } else {
      negligible = 0;
    }
    previous = r.value;
    lo = hi;
    if (lo > width * 1.5) width *= 2.0;
  }
  if (!(total > 0.0)) throw ConvergenceError("humbert_phi1: integral evaluated to zero");
  const double log_g = std::lgamma(c) - std::lgamma(a) - std::lgamma(c - a);
  return {log_g + y + std::log(total), 1};
}

}  // namespace

SignedLog log_humbert_phi1(double a, double b, double c, double x, double y, Phi1Method method,
                           const SeriesPolicy& policy) {
  policy.validate();
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("humbert_phi1: 0 <= x < 1 required");
  if (!(y >= 0.0)) throw DomainError("humbert_phi1: y >= 0 required");
  require_valid_denominator(c, "humbert_phi1");
  if (method == Phi1Method::automatic) {
    if (y == 0.0) return SignedLog::from_value(gauss_2f1(a, b, c, x, policy));
    if (x == 0.0) return log_kummer_1f1(a, c, y, policy);
  }
  const bool integral_ok = a > 0.0 && c > a;
  switch (method) {
    case Phi1Method::series: {
      SignedLog out;
      phi1_series(a, b, c, x, y, policy, false, &out);
      return out;
    }
    case Phi1Method::integral:
      return phi1_integral(a, b, c, x, y, std::max(policy.rel_tolerance, 1e-14));
    case Phi1Method::automatic:
      break;
  }
  if (y > kPhi1IntegralThreshold && integral_ok) {
    return phi1_integral(a, b, c, x, y, std::max(policy.rel_tolerance, 1e-14));
  }
  SignedLog out;
  if (phi1_series(a, b, c, x, y, policy, integral_ok, &out)) return out;
  return phi1_integral(a, b, c, x, y, std::max(policy.rel_tolerance, 1e-14));
}

SignedLog log_humbert_phi1(double a, double b, double c, double x, double y,
                           const SeriesPolicy& policy) {
  return log_humbert_phi1(a, b, c, x, y, Phi1Method::automatic, policy);
}

double humbert_phi1(double a, double b, double c, double x, double y, const SeriesPolicy& policy) {
  return log_humbert_phi1(a, b, c, x, y, policy).value();
}

}  // namespace rsmimo
