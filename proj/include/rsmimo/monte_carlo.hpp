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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rsmimo/channel_model.hpp"
#include "rsmimo/types.hpp"

namespace rsmimo {

/// Samples held in ascending order.
class EmpiricalDistribution {
 public:
  /// Throws DomainError when empty or when a sample is not finite.
  explicit EmpiricalDistribution(std::vector<double> samples);

  const std::vector<double>& sorted_samples() const { return samples_; }
  std::size_t count() const { return samples_.size(); }
  double quantile(double prob) const;

 private:
  std::vector<double> samples_;
};

/// Fraction of samples <= x.
double empirical_cdf(const EmpiricalDistribution& samples, double x);

/// sup_x |F_N(x) - F(x)| evaluated on both sides of every jump.
double ks_statistic(const EmpiricalDistribution& samples, const std::function<double(double)>& cdf);

/// sup_x |F_N(x) - G_M(x)| for two empirical distributions.
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct HistogramEstimate {
  std::vector<double> bin_edges;
  std::vector<double> densities;
  std::vector<double> std_errors;
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  std::size_t bins() const { return densities.size(); }
  double width(std::size_t bin) const { return bin_edges[bin + 1] - bin_edges[bin]; }
};

inline constexpr int kMaxHistogramBins = 100;

/// Equal-width density histogram over [min, max] with Freedman-Diaconis bin
/// width, capped at `max_bins` bins. Standard errors are binomial.
HistogramEstimate histogram(const EmpiricalDistribution& samples, int max_bins = kMaxHistogramBins);

/// Histogram on caller-supplied ascending edges; samples outside are counted
/// in `total` but not binned.
HistogramEstimate histogram(const EmpiricalDistribution& samples, std::vector<double> edges);

/// Piecewise cubic Hermite interpolant of a CDF from its values and
/// derivative on a uniform grid; 0 below the grid, clamped to [0, 1].
class TabulatedCdf {
 public:
  TabulatedCdf(const std::function<double(double)>& cdf, const std::function<double(double)>& pdf,
               double lo, double hi, int points);

  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_, step_;
  std::vector<double> values_, slopes_;
};

struct MonteCarloOptions {
  unsigned workers = 1;
  /// Draws per independently seeded stream; fixing it fixes the sample set.
  std::size_t chunk_size = 8192;
};

/// Engine for chunk `chunk` of the stream rooted at `seed`.
Rng chunk_engine(std::uint64_t seed, std::uint64_t chunk);

/// A scalar sampler; the factory is called once per chunk, so samplers may
/// keep scratch buffers and distribution state.
using ScalarSampler = std::function<double(Rng&)>;
using ScalarSamplerFactory = std::function<ScalarSampler()>;

/// N draws, chunk c generated by chunk_engine(seed, c). The result does not
/// depend on `options.workers`.
std::vector<double> draw_samples(const ScalarSamplerFactory& factory, std::size_t n,
                                 std::uint64_t seed, const MonteCarloOptions& options = {});

/// Largest eigenvalue of Y = H^H H for N channel draws.
EmpiricalDistribution estimate_max_eig_samples(const ModelParams& params, std::size_t n,
                                               std::uint64_t seed,
                                               const MonteCarloOptions& options = {});

/// Largest eigenvalue of a (non)central Wishart reference with mean
/// [los_gram^{1/2}; 0].
EmpiricalDistribution estimate_wishart_max_eig_samples(int p, const HermitianMatrix<>& sigma,
                                                       const HermitianMatrix<>& los_gram,
                                                       std::size_t n, std::uint64_t seed,
                                                       const MonteCarloOptions& options = {});

struct MgfEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error of etr(Y S).
MgfEstimate estimate_mgf(const ModelParams& params, const HermitianMatrix<>& s, std::size_t n,
                         std::uint64_t seed, const MonteCarloOptions& options = {});

/// Same draws of Y shared across every S.
std::vector<MgfEstimate> estimate_mgf(const ModelParams& params,
                                      const std::vector<HermitianMatrix<>>& s, std::size_t n,
                                      std::uint64_t seed, const MonteCarloOptions& options = {});

}  // namespace rsmimo
