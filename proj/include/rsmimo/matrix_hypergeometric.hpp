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

#include <vector>

#include "rsmimo/special_functions.hpp"
#include "rsmimo/types.hpp"

namespace rsmimo {

/// Integer partition k_1 >= k_2 >= ... > 0 indexing zonal-polynomial terms.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool is_valid() const;
  bool operator==(const Partition&) const = default;
};

/// Real eigenvalues sorted ascending.
class EigenSpectrum {
 public:
  EigenSpectrum() = default;
  /// Sorts the input; throws DomainError on non-finite values.
  explicit EigenSpectrum(RealVector values);
  EigenSpectrum(std::initializer_list<double> values);
  /// Throws DomainError unless the input is already ascending and finite.
  static EigenSpectrum from_sorted(const RealVector& values);

  const RealVector& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  double trace() const { return values_.sum(); }
  /// min over pairs of |x_i - x_j| / max(|x_i|, |x_j|); +inf for n = 1.
  double min_relative_gap() const;
  EigenSpectrum scaled(double c) const;

 private:
  RealVector values_;
};

/// Partitions of k into at most max_parts parts, in decreasing
/// lexicographic order ({4}, {3,1}, {2,2}, ...).
std::vector<Partition> enumerate_partitions(int k, int max_parts);

/// Complex generalized Pochhammer symbol [a]_kappa = prod_i (a - i + 1)_{k_i}.
SignedLog complex_pochhammer(double a, const Partition& kappa);

/// ln of the number of standard Young tableaux of shape kappa (hook lengths).
double log_standard_tableaux_count(const Partition& kappa);

enum class SchurMethod { automatic, bialternant, jacobi_trudi };

/// Schur polynomial s_kappa evaluated at the spectrum.
double schur_polynomial(const Partition& kappa, const EigenSpectrum& x,
                        SchurMethod method = SchurMethod::automatic);

/// Complex zonal polynomial normalized so that sum_{|kappa| = k} C_kappa(X) = (tr X)^k.
double zonal_polynomial(const Partition& kappa, const EigenSpectrum& x);

enum class HypKind { F01, F11, F10 };

inline constexpr int kDefaultMaxWeight = 120;
inline constexpr double kDegenerateRelativeGap = 1e-6;

/// pFq of one Hermitian matrix argument through its eigenvalues:
///   F01 uses (b), F11 uses (a, b), F10 uses (a) and the closed form |I - X|^{-a}.
/// The zonal series is truncated by whole weight groups.
SignedLog log_hyp_matrix(HypKind kind, double a, double b, const EigenSpectrum& x,
                         const SeriesPolicy& policy = {}, int max_weight = kDefaultMaxWeight);
double hyp_matrix(HypKind kind, double a, double b, const EigenSpectrum& x,
                  const SeriesPolicy& policy = {}, int max_weight = kDefaultMaxWeight);

/// 1F1(a; b; X) = det[x_j^{n-i} 1F1(a-i+1; b-i+1; x_j)] / prod_{i<j}(x_i - x_j).
/// Throws DegenerateSpectrumError when two eigenvalues are closer than
/// kDegenerateRelativeGap (relative).
SignedLog log_hyp_1f1_matrix_detratio(double a, double b, const EigenSpectrum& x,
                                      const SeriesPolicy& policy = {});
double hyp_1f1_matrix_detratio(double a, double b, const EigenSpectrum& x,
                               const SeriesPolicy& policy = {});

/// 0F1(b; X) = det[x_j^{n-i} 0F1(b-i+1; x_j)] / prod_{i<j}(x_i - x_j), the
/// a -> inf limit of the 1F1 ratio at X/a. Same separation requirement.
SignedLog log_hyp_0f1_matrix_detratio(double b, const EigenSpectrum& x,
                                      const SeriesPolicy& policy = {});

/// Determinant ratio for separated spectra, zonal series otherwise.
SignedLog log_hyp_1f1_matrix(double a, double b, const EigenSpectrum& x,
                             const SeriesPolicy& policy = {});

}  // namespace rsmimo
