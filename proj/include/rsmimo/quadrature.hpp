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

#include <functional>

namespace rsmimo {

struct QuadratureTolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureTolerance& tol = {});

/// Integrand for tanh-sinh: called as f(x, x - lo, hi - x) with both
/// endpoint distances computed without cancellation, so integrable endpoint
/// singularities can be evaluated accurately.
using EndpointAwareIntegrand = std::function<double(double, double, double)>;

/// Double-exponential (tanh-sinh) quadrature on [lo, hi].
QuadratureResult integrate_tanh_sinh(const EndpointAwareIntegrand& f, double lo, double hi,
                                     double rel_tol = 1e-13, int max_levels = 10);

/// Integral of a nonnegative integrand whose mass sits within a few `scale`
/// of `lo` and decays afterwards. [lo, hi] is cut into segments of width
/// scale, scale, 2 scale, 4 scale, ...; summation stops early once segment
/// contributions are decreasing and negligible. `hi` may be +inf.
QuadratureResult integrate_decaying(const std::function<double(double)>& f, double lo, double hi,
                                    double scale, const QuadratureTolerance& tol = {});

}  // namespace rsmimo
