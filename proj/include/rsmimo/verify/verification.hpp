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

#include <cstdint>
#include <string>
#include <vector>

#include "rsmimo/types.hpp"

namespace rsmimo::verify {

/// One scalar claim: `metric` compared against `threshold`.
struct CheckResult {
  enum class Kind { below, at_most, at_least, exact };

  std::string name;
  double metric = 0.0;
  double threshold = 0.0;
  Kind kind = Kind::below;
  bool pass = false;
};

CheckResult below(std::string name, double metric, double threshold);
CheckResult at_most(std::string name, double metric, double threshold);
CheckResult at_least(std::string name, double metric, double threshold);
/// Boolean property reported as metric 1 (holds) or 0.
CheckResult holds(std::string name, bool value);

/// Machine-readable line: name, metric, comparison, threshold, PASS/FAIL.
std::string format_check(const CheckResult& check);

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool pass() const;
};

std::string format_summary(const CriterionReport& report);

struct VerifyOptions {
  std::uint64_t seed = 2016;
  unsigned workers = 1;
};

/// Validation scenarios: four CDF sets, one pdf set and the Rician ladder.
std::vector<ScaledIdentityParams> cdf_scenarios();
ScaledIdentityParams pdf_scenario();
/// n = 2, p = 4, sigma2_sigma = 1 with m sigma_M^{-2} = 40.
ScaledIdentityParams rician_ladder(double m);
inline constexpr double kLadderLosPower = 40.0;
std::vector<double> rician_ladder_m();
/// Bin cap of the Rician reference histogram.
inline constexpr int kLadderBins = 100;

CriterionReport cdf_agreement(const VerifyOptions& options);          // 1
CriterionReport pdf_agreement(const VerifyOptions& options);          // 2
CriterionReport rician_convergence(const VerifyOptions& options);     // 3
CriterionReport mgf_consistency(const VerifyOptions& options);        // 4
CriterionReport siso_reduction(const VerifyOptions& options);         // 5
CriterionReport rayleigh_reductions(const VerifyOptions& options);    // 6
CriterionReport formula_cross_checks(const VerifyOptions& options);   // 7
CriterionReport special_function_suite(const VerifyOptions& options); // 8

/// Criterion 1..8.
CriterionReport run_criterion(int id, const VerifyOptions& options);

/// "special_functions" (8), "reductions" (4, 5, 6), "figures" (1, 2, 3, 7)
/// or "all". Throws DomainError for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);

}  // namespace rsmimo::verify
