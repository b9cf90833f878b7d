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

#include "rsmimo/matrix_hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rsmimo {
namespace {

constexpr double kBialternantMinGap = 1e-3;

void append_partitions(int remaining, int max_part, int parts_left, std::vector<int>& prefix,
                       std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{prefix});
    return;
  }
  if (parts_left == 0) return;
  for (int first = std::min(remaining, max_part); first >= 1; --first) {
    // The remaining parts_left - 1 parts cannot exceed `first` each.
    if (static_cast<long>(first) * parts_left < remaining) break;
    prefix.push_back(first);
    append_partitions(remaining - first, first, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

double determinant(const RealMatrix& m) {
  if (m.rows() == 0) return 1.0;
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.partialPivLu().determinant();
}

// Schur polynomials at a fixed spectrum. Jacobi-Trudi uses complete
// homogeneous symmetric polynomials h_0..h_R computed once.
class SchurEvaluator {
 public:
  SchurEvaluator(const EigenSpectrum& x, int max_weight, SchurMethod method)
      : x_(x), n_(x.size()) {
    method_ = method;
    if (method_ == SchurMethod::automatic) {
      method_ = (x.min_relative_gap() > kBialternantMinGap) ? SchurMethod::bialternant
                                                             : SchurMethod::jacobi_trudi;
    }
    if (method_ == SchurMethod::jacobi_trudi) {
      const int r_max = max_weight + n_ + 1;
      h_.assign(r_max + 1, 0.0);
      h_[0] = 1.0;
      // h_r(x_1..x_j) = h_r(x_1..x_{j-1}) + x_j h_{r-1}(x_1..x_j)
      for (int j = 0; j < n_; ++j) {
        for (int r = 1; r <= r_max; ++r) h_[r] += x_[j] * h_[r - 1];
      }
    } else {
      vandermonde_ = 1.0;
      for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) vandermonde_ *= x_[i] - x_[j];
      }
    }
  }

  double operator()(const Partition& kappa) const {
    const int len = kappa.length();
    if (len > n_) return 0.0;
    if (len == 0) return 1.0;
    if (method_ == SchurMethod::jacobi_trudi) {
      RealMatrix m(len, len);
      for (int i = 0; i < len; ++i) {
        for (int j = 0; j < len; ++j) {
          const int r = kappa.parts[i] - i + j;
          m(i, j) = (r < 0) ? 0.0 : h(r);
        }
      }
      return determinant(m);
    }
    RealMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i) {
      const int part = i < len ? kappa.parts[i] : 0;
      const int power = part + n_ - 1 - i;
      for (int j = 0; j < n_; ++j) m(i, j) = std::pow(x_[j], power);
    }
    return determinant(m) / vandermonde_;
  }

 private:
  double h(int r) const {
    if (r >= static_cast<int>(h_.size())) {
      throw DomainError("schur_polynomial: partition exceeds precomputed weight");
    }
    return h_[r];
  }

  const EigenSpectrum& x_;
  int n_;
  SchurMethod method_;
  std::vector<double> h_;
  double vandermonde_ = 1.0;
};

// ln|prod of hook lengths|.
double log_hook_product(const Partition& kappa) {
  if (kappa.parts.empty()) return 0.0;
  std::vector<int> conj(kappa.parts[0], 0);
  for (int part : kappa.parts) {
    for (int j = 0; j < part; ++j) ++conj[j];
  }
  double r = 0.0;
  for (int i = 0; i < kappa.length(); ++i) {
    for (int j = 0; j < kappa.parts[i]; ++j) {
      r += std::log(static_cast<double>(kappa.parts[i] - j + conj[j] - i - 1));
    }
  }
  return r;
}

// [a]_kappa / [b]_kappa factor by factor, so equal factors cancel exactly.
// Pass `has_numerator = false` for 1 / [b]_kappa.
SignedLog pochhammer_ratio(bool has_numerator, double a, double b, const Partition& kappa) {
  SignedLog r = SignedLog::one();
  for (int i = 0; i < kappa.length(); ++i) {
    for (int j = 0; j < kappa.parts[i]; ++j) {
      const double num = has_numerator ? a - i + j : 1.0;
      const double den = b - i + j;
      if (num == den) continue;
      if (den == 0.0) {
        throw DomainError("hyp_matrix: denominator Pochhammer symbol vanishes");
      }
      if (num == 0.0) return SignedLog::zero();
      r.log_abs += std::log(std::abs(num)) - std::log(std::abs(den));
      if ((num < 0) != (den < 0)) r.sign = -r.sign;
    }
  }
  return r;
}

}  // namespace

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::is_valid() const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

EigenSpectrum::EigenSpectrum(RealVector values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw DomainError("EigenSpectrum: values must be finite");
  std::sort(values_.data(), values_.data() + values_.size());
}

EigenSpectrum::EigenSpectrum(std::initializer_list<double> values)
    : EigenSpectrum(RealVector(Eigen::Map<const RealVector>(values.begin(),
                                                            static_cast<Eigen::Index>(values.size())))) {}

EigenSpectrum EigenSpectrum::from_sorted(const RealVector& values) {
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) throw DomainError("EigenSpectrum: values must be ascending");
  }
  return EigenSpectrum(values);
}

double EigenSpectrum::min_relative_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      const double scale = std::max(std::abs(values_[i]), std::abs(values_[j]));
      const double g = (scale == 0.0) ? 0.0 : std::abs(values_[i] - values_[j]) / scale;
      gap = std::min(gap, g);
    }
  }
  return gap;
}

EigenSpectrum EigenSpectrum::scaled(double c) const {
  return EigenSpectrum(RealVector(values_ * c));
}

std::vector<Partition> enumerate_partitions(int k, int max_parts) {
  if (k < 0) throw DomainError("enumerate_partitions: k >= 0 required");
  if (max_parts < 1) throw DomainError("enumerate_partitions: max_parts >= 1 required");
  std::vector<Partition> out;
  std::vector<int> prefix;
  append_partitions(k, k, max_parts, prefix, out);
  return out;
}

SignedLog complex_pochhammer(double a, const Partition& kappa) {
  SignedLog r = SignedLog::one();
  for (int i = 0; i < kappa.length(); ++i) {
    r = r * log_pochhammer(a - i, kappa.parts[i]);
    if (r.is_zero()) break;
  }
  return r;
}

double log_standard_tableaux_count(const Partition& kappa) {
  return std::lgamma(kappa.weight() + 1.0) - log_hook_product(kappa);
}

double schur_polynomial(const Partition& kappa, const EigenSpectrum& x, SchurMethod method) {
  if (!kappa.is_valid()) throw DomainError("schur_polynomial: invalid partition");
  return SchurEvaluator(x, kappa.weight(), method)(kappa);
}

double zonal_polynomial(const Partition& kappa, const EigenSpectrum& x) {
  if (!kappa.is_valid()) throw DomainError("zonal_polynomial: invalid partition");
  const double s = schur_polynomial(kappa, x);
  return std::exp(log_standard_tableaux_count(kappa)) * s;
}

SignedLog log_hyp_matrix(HypKind kind, double a, double b, const EigenSpectrum& x,
                         const SeriesPolicy& policy, int max_weight) {
  policy.validate();
  const int n = x.size();
  if (n == 0) throw DomainError("hyp_matrix: empty spectrum");
  if (kind == HypKind::F10) {
    SignedLog r = SignedLog::one();
    for (int i = 0; i < n; ++i) {
      if (!(x[i] < 1.0)) throw DomainError("hyp_matrix: 1F0 requires all eigenvalues < 1");
      r.log_abs += -a * std::log1p(-x[i]);
    }
    return r;
  }
  if (n == 1 && kind == HypKind::F11) return log_kummer_1f1(a, b, x[0], policy);
  if ((x.values().array() == 0.0).all()) return SignedLog::one();

  const SchurEvaluator schur(x, max_weight, SchurMethod::automatic);
  const bool has_numerator = (kind == HypKind::F11);
  double total = 1.0;
  int small_groups = 0;
  for (int k = 1; k <= max_weight; ++k) {
    double group = 0.0;
    for (const Partition& kappa : enumerate_partitions(k, n)) {
      SignedLog coef = pochhammer_ratio(has_numerator, a, b, kappa);
      if (coef.is_zero()) continue;
      coef.log_abs -= log_hook_product(kappa);
      group += coef.value() * schur(kappa);
    }
    total += group;
    if (!std::isfinite(total)) throw ConvergenceError("hyp_matrix: series overflow");
    if (std::abs(group) < policy.rel_tolerance * std::abs(total)) {
      if (++small_groups >= 2) return SignedLog::from_value(total);
    } else {
      small_groups = 0;
    }
  }
  throw ConvergenceError("hyp_matrix: zonal series did not converge by weight " +
                         std::to_string(max_weight));
}

double hyp_matrix(HypKind kind, double a, double b, const EigenSpectrum& x,
                  const SeriesPolicy& policy, int max_weight) {
  return log_hyp_matrix(kind, a, b, x, policy, max_weight).value();
}

namespace {

template <class Entry>
SignedLog log_detratio(const EigenSpectrum& x, const char* name, Entry&& entry) {
  const int n = x.size();
  if (n == 0) throw DomainError(std::string(name) + ": empty spectrum");
  if (n > 1 && !(x.min_relative_gap() > kDegenerateRelativeGap)) {
    throw DegenerateSpectrumError(std::string(name) + ": eigenvalues not separated");
  }
  // Entries in log form; each column is rescaled by its largest magnitude.
  std::vector<SignedLog> entries(static_cast<std::size_t>(n) * n);
  RealMatrix scaled(n, n);
  double log_scale = 0.0;
  for (int j = 0; j < n; ++j) {
    double col_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const int power = n - 1 - i;
      SignedLog e = entry(i, x[j]);
      if (power > 0) e = e * SignedLog{power * std::log(std::abs(x[j])),
                                       (x[j] < 0 && power % 2 == 1) ? -1 : 1};
      if (power > 0 && x[j] == 0.0) e = SignedLog::zero();
      entries[j * n + i] = e;
      if (e.sign != 0) col_max = std::max(col_max, e.log_abs);
    }
    if (!std::isfinite(col_max)) col_max = 0.0;
    log_scale += col_max;
    for (int i = 0; i < n; ++i) {
      const SignedLog& e = entries[j * n + i];
      scaled(i, j) = e.sign == 0 ? 0.0 : e.sign * std::exp(e.log_abs - col_max);
    }
  }
  SignedLog det = SignedLog::from_value(determinant(scaled));
  det.log_abs += log_scale;
  SignedLog vandermonde = SignedLog::one();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) vandermonde = vandermonde * SignedLog::from_value(x[i] - x[j]);
  }
  return det / vandermonde;
}

}  // namespace

SignedLog log_hyp_1f1_matrix_detratio(double a, double b, const EigenSpectrum& x,
                                      const SeriesPolicy& policy) {
  return log_detratio(x, "hyp_1f1_matrix_detratio", [&](int i, double xj) {
    return log_kummer_1f1(a - i, b - i, xj, policy);
  });
}

SignedLog log_hyp_0f1_matrix_detratio(double b, const EigenSpectrum& x, const SeriesPolicy& policy) {
  return log_detratio(x, "hyp_0f1_matrix_detratio",
                      [&](int i, double xj) { return log_hyp_0f1(b - i, xj, policy); });
}

double hyp_1f1_matrix_detratio(double a, double b, const EigenSpectrum& x,
                               const SeriesPolicy& policy) {
  return log_hyp_1f1_matrix_detratio(a, b, x, policy).value();
}

SignedLog log_hyp_1f1_matrix(double a, double b, const EigenSpectrum& x,
                             const SeriesPolicy& policy) {
  if (x.size() == 1) return log_kummer_1f1(a, b, x[0], policy);
  if (x.min_relative_gap() > kDegenerateRelativeGap) {
    return log_hyp_1f1_matrix_detratio(a, b, x, policy);
  }
  return log_hyp_matrix(HypKind::F11, a, b, x, policy);
}

}  // namespace rsmimo
