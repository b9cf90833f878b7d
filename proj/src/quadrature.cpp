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

#include "rsmimo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "rsmimo/types.hpp"

namespace rsmimo {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureTolerance& tol) {
  QuadratureResult out;
  if (lo == hi) return out;
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod_15(f, lo, hi));
  out.evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;
  int subdivisions = 0;
  while (error > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (subdivisions++ >= tol.max_subdivisions) {
      throw ConvergenceError("integrate_adaptive: subdivision budget exhausted");
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval cannot be split further in double precision; freeze it.
      heap.push({worst.lo, worst.hi, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const Segment left = gauss_kronrod_15(f, worst.lo, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.hi);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  return out;
}

QuadratureResult integrate_tanh_sinh(const EndpointAwareIntegrand& f, double lo, double hi,
                                     double rel_tol, int max_levels) {
  QuadratureResult out;
  if (lo == hi) return out;
  const double width = hi - lo;
  const double half = 0.5 * width;
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  constexpr double kMaxT = 6.0;

  // Sum of w(t) f(x(t)) over t = j h for the given set of j.
  auto node_sum = [&](double h, int first, int step) {
    double sum = 0.0;
    for (int j = first;; j += step) {
      const double t = j * h;
      if (t > kMaxT) break;
      const double s = kHalfPi * std::sinh(t);
      const double c = kHalfPi * std::cosh(t);
      const double q = std::exp(-2.0 * s);
      const double dist = width * q / (1.0 + q);  // distance to the nearer end
      if (dist <= std::numeric_limits<double>::min()) break;
      const double w = half * c * 4.0 * q / ((1.0 + q) * (1.0 + q));
      double contribution;
      if (j == 0) {
        contribution = w * f(lo + half, half, half);
      } else {
        contribution = w * (f(hi - dist, width - dist, dist) + f(lo + dist, dist, width - dist));
      }
      out.evaluations += (j == 0) ? 1 : 2;
      sum += contribution;
      if (t > 1.0 && std::abs(contribution) <= 1e-20 * std::abs(sum)) break;
    }
    return sum;
  };

  double h = 1.0;
  double raw = node_sum(h, 0, 1);
  double estimate = h * raw;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    raw += node_sum(h, 1, 2);
    const double next = h * raw;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= rel_tol * std::abs(estimate)) {
      out.value = estimate;
      out.error = diff;
      return out;
    }
  }
  throw ConvergenceError("integrate_tanh_sinh: level budget exhausted");
}

QuadratureResult integrate_decaying(const std::function<double(double)>& f, double lo, double hi,
                                    double scale, const QuadratureTolerance& tol) {
  QuadratureResult out;
  if (!(hi > lo)) return out;
  if (!(scale > 0.0)) throw DomainError("integrate_decaying: scale must be positive");
  double a = lo;
  double width = scale;
  double previous = std::numeric_limits<double>::infinity();
  int negligible_run = 0;
  // Tolerances are applied per segment; the absolute part is shared out.
  while (a < hi) {
    const double b = std::min(hi, a + width);
    QuadratureTolerance seg_tol = tol;
    seg_tol.abs = tol.abs / 64.0;
    const QuadratureResult seg = integrate_adaptive(f, a, b, seg_tol);
    out.value += seg.value;
    out.error += seg.error;
    out.evaluations += seg.evaluations;
    const double contribution = std::abs(seg.value);
    if (out.value != 0.0 && contribution <= previous &&
        contribution <= 1e-17 * std::abs(out.value)) {
      if (++negligible_run >= 2) break;
    } else {
      negligible_run = 0;
    }
    previous = contribution;
    a = b;
    if (a > lo + scale) width *= 2.0;
    if (!std::isfinite(width)) break;
  }
  return out;
}

}  // namespace rsmimo
