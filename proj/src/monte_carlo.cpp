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

#include "rsmimo/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <thread>

namespace rsmimo {
namespace {

// Runs body(worker, chunk, begin, end) over all chunks, chunk c on worker
// c % workers. Each body writes only to its own [begin, end) slice.
template <typename Body>
void for_each_chunk(std::size_t n, const MonteCarloOptions& options, Body&& body) {
  if (options.chunk_size == 0) throw DomainError("MonteCarloOptions: chunk_size >= 1 required");
  const std::size_t chunks = (n + options.chunk_size - 1) / options.chunk_size;
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(chunks, 1)));
  auto run = [&](unsigned worker) {
    for (std::size_t c = worker; c < chunks; c += workers) {
      const std::size_t begin = c * options.chunk_size;
      body(worker, c, begin, std::min(n, begin + options.chunk_size));
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
}

MgfEstimate summarize(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("EmpiricalDistribution: at least one sample required");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw DomainError("EmpiricalDistribution: non-finite sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::quantile(double prob) const {
  const double pos = std::clamp(prob, 0.0, 1.0) * static_cast<double>(samples_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples_.size() - 1);
  return samples_[lo] + (pos - static_cast<double>(lo)) * (samples_[hi] - samples_[lo]);
}

double empirical_cdf(const EmpiricalDistribution& samples, double x) {
  const auto& s = samples.sorted_samples();
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

double ks_statistic(const EmpiricalDistribution& samples,
                    const std::function<double(double)>& cdf) {
  const auto& s = samples.sorted_samples();
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, (i + 1.0) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const auto& x = a.sorted_samples();
  const auto& y = b.sorted_samples();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  return d;
}

HistogramEstimate histogram(const EmpiricalDistribution& samples, std::vector<double> edges) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DomainError("histogram: at least two strictly ascending edges required");
  }
  HistogramEstimate h;
  h.bin_edges = std::move(edges);
  const std::size_t bins = h.bin_edges.size() - 1;
  h.counts.assign(bins, 0);
  const auto& s = samples.sorted_samples();
  h.total = s.size();
  for (double v : s) {
    if (v < h.bin_edges.front() || v > h.bin_edges.back()) continue;
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
    std::size_t bin = static_cast<std::size_t>(it - h.bin_edges.begin());
    bin = std::min(bin == 0 ? 0 : bin - 1, bins - 1);
    ++h.counts[bin];
  }
  const double n = static_cast<double>(h.total);
  for (std::size_t k = 0; k < bins; ++k) {
    const double w = h.width(k);
    const double phat = static_cast<double>(h.counts[k]) / n;
    h.densities.push_back(phat / w);
    h.std_errors.push_back(std::sqrt(phat * (1.0 - phat) / n) / w);
  }
  return h;
}

HistogramEstimate histogram(const EmpiricalDistribution& samples, int max_bins) {
  if (max_bins < 1) throw DomainError("histogram: max_bins >= 1 required");
  const auto& s = samples.sorted_samples();
  const double lo = s.front();
  const double hi = s.back();
  int bins = 1;
  if (hi > lo) {
    const double iqr = samples.quantile(0.75) - samples.quantile(0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
    bins = width > 0.0 ? static_cast<int>(std::ceil((hi - lo) / width)) : max_bins;
    bins = std::clamp(bins, 1, max_bins);
  }
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  const double span = hi > lo ? hi - lo : 1.0;
  for (int k = 0; k <= bins; ++k) edges[k] = lo + span * k / bins;
  edges.back() = hi > lo ? hi : lo + 1.0;
  return histogram(samples, std::move(edges));
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& cdf,
                           const std::function<double(double)>& pdf, double lo, double hi,
                           int points)
    : lo_(lo), hi_(hi) {
  if (!(hi > lo) || points < 2) throw DomainError("TabulatedCdf: lo < hi and points >= 2 required");
  step_ = (hi - lo) / (points - 1);
  for (int k = 0; k < points; ++k) {
    const double x = lo + k * step_;
    values_.push_back(cdf(x));
    slopes_.push_back(pdf(x));
  }
}

double TabulatedCdf::operator()(double x) const {
  if (x <= lo_) return values_.front();
  if (x >= hi_) return values_.back();
  const double u = (x - lo_) / step_;
  const std::size_t k = std::min(static_cast<std::size_t>(u), values_.size() - 2);
  const double t = u - static_cast<double>(k);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double v = (2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * step_ * slopes_[k] +
                   (-2 * t3 + 3 * t2) * values_[k + 1] + (t3 - t2) * step_ * slopes_[k + 1];
  return std::clamp(v, 0.0, 1.0);
}

Rng chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

std::vector<double> draw_samples(const ScalarSamplerFactory& factory, std::size_t n,
                                 std::uint64_t seed, const MonteCarloOptions& options) {
  if (n == 0) throw DomainError("draw_samples: N >= 1 required");
  std::vector<double> out(n);
  // A fresh sampler per chunk: distributions that cache variates (normal,
  // gamma) must not carry state from one chunk into the next.
  for_each_chunk(n, options, [&](unsigned, std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = chunk_engine(seed, chunk);
    ScalarSampler sampler = factory();
    for (std::size_t k = begin; k < end; ++k) out[k] = sampler(rng);
  });
  return out;
}

EmpiricalDistribution estimate_max_eig_samples(const ModelParams& params, std::size_t n,
                                               std::uint64_t seed,
                                               const MonteCarloOptions& options) {
  params.validate();
  auto factory = [&]() -> ScalarSampler {
    auto sampler = std::make_shared<ChannelSampler>(params);
    return [sampler](Rng& rng) { return sampler->max_eigenvalue(rng); };
  };
  return EmpiricalDistribution(draw_samples(factory, n, seed, options));
}

EmpiricalDistribution estimate_wishart_max_eig_samples(int p, const HermitianMatrix<>& sigma,
                                                       const HermitianMatrix<>& los_gram,
                                                       std::size_t n, std::uint64_t seed,
                                                       const MonteCarloOptions& options) {
  auto factory = [&]() -> ScalarSampler {
    auto sampler = std::make_shared<GaussianChannelSampler>(
        GaussianChannelSampler::with_los_gram(p, sigma, los_gram));
    return [sampler](Rng& rng) { return sampler->max_eigenvalue(rng); };
  };
  return EmpiricalDistribution(draw_samples(factory, n, seed, options));
}

std::vector<MgfEstimate> estimate_mgf(const ModelParams& params,
                                      const std::vector<HermitianMatrix<>>& s, std::size_t n,
                                      std::uint64_t seed, const MonteCarloOptions& options) {
  params.validate();
  if (n == 0) throw DomainError("estimate_mgf: N >= 1 required");
  for (const auto& m : s) {
    if (m.rows() != params.n || m.cols() != params.n) throw DomainError("estimate_mgf: S must be n x n");
  }
  std::vector<std::vector<double>> values(s.size(), std::vector<double>(n));
  const ChannelSampler prototype(params);
  for_each_chunk(n, options, [&](unsigned, std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = chunk_engine(seed, chunk);
    ChannelSampler sampler = prototype;
    for (std::size_t k = begin; k < end; ++k) {
      const HermitianMatrix<>& y = sampler.gram_matrix(rng);
      for (std::size_t t = 0; t < s.size(); ++t) {
        values[t][k] = std::exp(y.cwiseProduct(s[t].transpose()).sum().real());
      }
    }
  });
  std::vector<MgfEstimate> out;
  for (const auto& v : values) out.push_back(summarize(v));
  return out;
}

MgfEstimate estimate_mgf(const ModelParams& params, const HermitianMatrix<>& s, std::size_t n,
                         std::uint64_t seed, const MonteCarloOptions& options) {
  return estimate_mgf(params, std::vector<HermitianMatrix<>>{s}, n, seed, options).front();
}

}  // namespace rsmimo
