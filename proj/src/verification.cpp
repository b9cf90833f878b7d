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

#include "rsmimo/verify/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "rsmimo/channel_model.hpp"
#include "rsmimo/closed_form.hpp"
#include "rsmimo/matrix_hypergeometric.hpp"
#include "rsmimo/monte_carlo.hpp"
#include "rsmimo/quadrature.hpp"
#include "rsmimo/special_functions.hpp"
#include "rsmimo/verify/reference_models.hpp"

namespace rsmimo::verify {
namespace {

using Clock = std::chrono::steady_clock;
using cd = std::complex<double>;

// Plateau values near 1 carry about 1e-13 of determinant round-off.
constexpr double kMonotoneRoundoff = 1e-12;

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string label(const ScaledIdentityParams& p) {
  std::ostringstream s;
  s << "n=" << p.n << ",p=" << p.p << ",m=" << p.m << ",s2S=" << p.sigma2_sigma
    << ",inv_s2M=" << 1.0 / p.sigma2_m;
  return s.str();
}

CheckResult make(std::string name, double metric, double threshold, CheckResult::Kind kind) {
  CheckResult c;
  c.name = std::move(name);
  c.metric = metric;
  c.threshold = threshold;
  c.kind = kind;
  switch (kind) {
    case CheckResult::Kind::below: c.pass = metric < threshold; break;
    case CheckResult::Kind::at_most: c.pass = metric <= threshold; break;
    case CheckResult::Kind::at_least: c.pass = metric >= threshold; break;
    case CheckResult::Kind::exact: c.pass = metric == threshold; break;
  }
  return c;
}

template <typename Fn>
CriterionReport timed(int id, std::string title, Fn&& fn) {
  CriterionReport r;
  r.id = id;
  r.title = std::move(title);
  const auto t0 = Clock::now();
  fn(r.checks);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

MonteCarloOptions mc(const VerifyOptions& o) {
  MonteCarloOptions m;
  m.workers = o.workers;
  return m;
}

// Distinct stream per use so criteria never share draws.
std::uint64_t stream(const VerifyOptions& o, std::uint64_t tag) { return o.seed * 1000003ULL + tag; }

// Exact CDF on a fine grid with Hermite interpolation, for KS over 1e5 samples.
TabulatedCdf tabulate(const ScaledIdentityParams& p, double hi) {
  return TabulatedCdf([&](double x) { return max_eig_cdf(x, p); },
                      [&](double x) { return max_eig_pdf(x, p); }, 0.0, hi, 801);
}

double tabulation_error(const TabulatedCdf& t, const ScaledIdentityParams& p) {
  double worst = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double x = t.hi() * (k - 0.37) / 40.0;
    worst = std::max(worst, std::abs(t(x) - max_eig_cdf(x, p)));
  }
  return worst;
}

// Bin-averaged analytic density (CDF difference over the width).
std::vector<double> bin_densities(const std::vector<double>& edges,
                                  const std::function<double(double)>& cdf) {
  std::vector<double> f;
  f.reserve(edges.size());
  for (double e : edges) f.push_back(cdf(e));
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    out.push_back((f[k + 1] - f[k]) / (edges[k + 1] - edges[k]));
  }
  return out;
}

HermitianMatrix<> hermitian(std::initializer_list<std::initializer_list<cd>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  HermitianMatrix<> a(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const cd& v : row) a(i, j++) = v;
    ++i;
  }
  return 0.5 * (a + a.adjoint());
}

ModelParams mgf_case(int n) {
  ModelParams p;
  p.n = n;
  switch (n) {
    case 1:
      p.p = 2;
      p.m = 1.5;
      p.sigma = hermitian({{0.8}});
      p.shadowing_rate = hermitian({{2.0}});
      break;
    case 2:
      p.p = 3;
      p.m = 2.5;
      p.sigma = hermitian({{cd(1.0), cd(0.3, 0.2)}, {cd(0.3, -0.2), cd(0.8)}});
      p.shadowing_rate = hermitian({{cd(1.5), cd(-0.2, 0.1)}, {cd(-0.2, -0.1), cd(2.0)}});
      break;
    default:
      p.n = 3;
      p.p = 4;
      p.m = 3.2;
      p.sigma = hermitian({{cd(1.2), cd(0.2, 0.1), cd(0.0, -0.1)},
                           {cd(0.2, -0.1), cd(0.9), cd(0.15)},
                           {cd(0.0, 0.1), cd(0.15), cd(0.7)}});
      p.shadowing_rate = hermitian({{cd(1.0), cd(0.1, 0.05), cd(0.0)},
                                    {cd(0.1, -0.05), cd(1.4), cd(-0.2, 0.1)},
                                    {cd(0.0), cd(-0.2, -0.1), cd(2.5)}});
      break;
  }
  return p;
}

EigenSpectrum random_spectrum(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RealVector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return EigenSpectrum(v);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] < v[k - 1])) return false;
  }
  return true;
}

std::string ladder_text(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(3);
  for (std::size_t k = 0; k < v.size(); ++k) s << (k ? "," : "") << v[k];
  return s.str();
}

}  // namespace

CheckResult below(std::string name, double metric, double threshold) {
  return make(std::move(name), metric, threshold, CheckResult::Kind::below);
}
CheckResult at_most(std::string name, double metric, double threshold) {
  return make(std::move(name), metric, threshold, CheckResult::Kind::at_most);
}
CheckResult at_least(std::string name, double metric, double threshold) {
  return make(std::move(name), metric, threshold, CheckResult::Kind::at_least);
}
CheckResult holds(std::string name, bool value) {
  return make(std::move(name), value ? 1.0 : 0.0, 1.0, CheckResult::Kind::exact);
}

std::string format_check(const CheckResult& c) {
  static const char* ops[] = {"<", "<=", ">=", "=="};
  std::ostringstream s;
  s.precision(6);
  s << c.name << " metric=" << c.metric << " " << ops[static_cast<int>(c.kind)] << " "
    << c.threshold << " " << (c.pass ? "PASS" : "FAIL");
  return s.str();
}

bool CriterionReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string format_summary(const CriterionReport& r) {
  std::ostringstream s;
  s.precision(3);
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
  s << "criterion " << r.id << " [" << r.title << "] " << (r.pass() ? "PASS" : "FAIL") << " ("
    << passed << "/" << r.checks.size() << " checks, " << std::fixed << r.seconds << " s)";
  return s.str();
}

std::vector<ScaledIdentityParams> cdf_scenarios() {
  return {{2, 4, 2.0, 1.0, 1.0 / 8.0},
          {3, 4, 3.0, 1.0, 1.0 / 8.0},
          {2, 4, 2.0, 1.0, 1.0 / 40.0},
          {3, 4, 3.0, 4.0, 1.0 / 8.0}};
}

ScaledIdentityParams pdf_scenario() { return {3, 4, 3.0, 4.0, 1.0 / 8.0}; }

ScaledIdentityParams rician_ladder(double m) {
  return rician_ladder_params({2, 4, 2.0, 1.0, 1.0}, m, kLadderLosPower);
}

std::vector<double> rician_ladder_m() { return {2.0, 4.0, 10.0, 50.0, 100.0}; }

CriterionReport cdf_agreement(const VerifyOptions& o) {
  return timed(1, "max-eigenvalue CDF vs Monte Carlo", [&](std::vector<CheckResult>& out) {
    std::uint64_t tag = 100;
    for (const ScaledIdentityParams& p : cdf_scenarios()) {
      const EmpiricalDistribution s =
          estimate_max_eig_samples(p.to_model(), 100000, stream(o, tag++), mc(o));
      const TabulatedCdf cdf = tabulate(p, 1.05 * s.sorted_samples().back());
      out.push_back(below("cdf tabulation error " + label(p), tabulation_error(cdf, p), 1e-5));
      out.push_back(below("cdf KS N=1e5 " + label(p), ks_statistic(s, std::cref(cdf)), 0.01));
    }
  });
}

CriterionReport pdf_agreement(const VerifyOptions& o) {
  return timed(2, "max-eigenvalue pdf normalization and histogram", [&](std::vector<CheckResult>& out) {
    const ScaledIdentityParams p = pdf_scenario();
    QuadratureTolerance tol;
    tol.abs = 1e-12;
    tol.rel = 1e-10;
    const double mass =
        integrate_decaying([&](double x) { return max_eig_pdf(x, p); }, 0.0,
                           std::numeric_limits<double>::infinity(), 20.0, tol)
            .value;
    out.push_back(below("pdf |integral pdf - 1|", std::abs(mass - 1.0), 1e-6));

    const std::size_t n = 1000000;
    const EmpiricalDistribution s = estimate_max_eig_samples(p.to_model(), n, stream(o, 200), mc(o));
    const HistogramEstimate h = histogram(s);
    const std::vector<double> f =
        bin_densities(h.bin_edges, [&](double x) { return max_eig_cdf(x, p); });
    std::size_t within = 0;
    for (std::size_t k = 0; k < h.bins(); ++k) {
      const double mass_k = f[k] * h.width(k);
      const double se = std::sqrt(mass_k * (1.0 - mass_k) / static_cast<double>(n)) / h.width(k);
      if (std::abs(h.densities[k] - f[k]) <= 3.0 * se) ++within;
    }
    out.push_back(at_least("pdf fraction of bins within 3 s.e. (" +
                               std::to_string(h.bins()) + " bins, N=1e6)",
                           static_cast<double>(within) / static_cast<double>(h.bins()), 0.95));
  });
}

CriterionReport rician_convergence(const VerifyOptions& o) {
  return timed(3, "convergence to MIMO Rician as m grows", [&](std::vector<CheckResult>& out) {
    const ScaledIdentityParams base = rician_ladder(2.0);
    const LimitingLaw law = reduction_params(ReductionKind::rician_limit, base, kLadderLosPower);
    const std::size_t n = 4000000;
    const EmpiricalDistribution ref = estimate_wishart_max_eig_samples(
        law.p, law.covariance, law.los_gram, n, stream(o, 300), mc(o));
    const HistogramEstimate h = histogram(ref, kLadderBins);
    std::vector<double> distance;
    for (double m : rician_ladder_m()) {
      const ScaledIdentityParams p = rician_ladder(m);
      const std::vector<double> f =
          bin_densities(h.bin_edges, [&](double x) { return max_eig_cdf(x, p); });
      double d = 0.0;
      for (std::size_t k = 0; k < h.bins(); ++k) d = std::max(d, std::abs(f[k] - h.densities[k]));
      distance.push_back(d);
    }
    out.push_back(holds("ladder sup-distance strictly decreasing in m {" + ladder_text(distance) + "}",
                        strictly_decreasing(distance)));
    out.push_back(below("ladder sup-distance at m=100", distance.back(), 0.003));
    // The same distance with the reference replaced by the closed form far up
    // the ladder: the part of the m=100 distance that sampling cannot remove.
    const std::vector<double> near =
        bin_densities(h.bin_edges, [&](double x) { return max_eig_cdf(x, rician_ladder(100.0)); });
    const std::vector<double> far =
        bin_densities(h.bin_edges, [&](double x) { return max_eig_cdf(x, rician_ladder(1e5)); });
    double bias = 0.0;
    for (std::size_t k = 0; k < h.bins(); ++k) bias = std::max(bias, std::abs(near[k] - far[k]));
    out.push_back(below("closed-form sup-distance m=100 vs m=1e5", bias, 0.003));
  });
}

CriterionReport mgf_consistency(const VerifyOptions& o) {
  return timed(4, "MGF closed form vs Monte Carlo", [&](std::vector<CheckResult>& out) {
    for (int n = 1; n <= 3; ++n) {
      const ModelParams p = mgf_case(n);
      const HermitianMatrix<> zero = HermitianMatrix<>::Zero(n, n);
      out.push_back(holds("mgf(0) == 1 exactly, n=" + std::to_string(n), mgf(zero, p) == 1.0));
      std::vector<HermitianMatrix<>> s;
      const std::vector<double> ladder = {0.05, 0.1, 0.5};
      for (double v : ladder) s.push_back(-v * HermitianMatrix<>::Identity(n, n));
      const std::vector<MgfEstimate> est = estimate_mgf(p, s, 1000000, stream(o, 400 + n), mc(o));
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        const double z = std::abs(est[k].mean - mgf(s[k], p)) / est[k].std_error;
        std::ostringstream name;
        name << "mgf |MC - closed| / s.e., n=" << n << ", s=" << ladder[k] << ", N=1e6";
        out.push_back(at_most(name.str(), z, 3.0));
      }
    }
  });
}

CriterionReport siso_reduction(const VerifyOptions& o) {
  return timed(5, "SISO kappa-mu shadowed reduction", [&](std::vector<CheckResult>& out) {
    Rng rng = chunk_engine(stream(o, 500), 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> mu_draw(1, 8);
    double pdf_err = 0.0;
    double mgf_err = 0.0;
    for (int t = 0; t < 20; ++t) {
      SisoKappaMuParams siso;
      siso.kappa = std::pow(10.0, -1.0 + 2.0 * u(rng));
      siso.mu = mu_draw(rng);
      siso.m = 0.3 + 14.7 * u(rng);
      siso.gamma_bar = 0.5 + 4.5 * u(rng);
      const ModelParams p = map_siso(siso).to_model();
      for (double r : {0.02, 0.1, 0.3, 0.6, 1.0, 1.5, 2.0, 3.0, 5.0}) {
        const double g = r * siso.gamma_bar;
        const double lib = std::exp(gamma_wishart_logpdf(HermitianMatrix<>::Constant(1, 1, g), p));
        pdf_err = std::max(pdf_err, rel_err(lib, reference::kappa_mu_shadowed_pdf(g, siso)));
      }
      for (double r : {0.01, 0.1, 0.5, 1.0, 5.0, 20.0}) {
        const double s = r / siso.gamma_bar;
        const double lib = mgf(HermitianMatrix<>::Constant(1, 1, -s), p);
        mgf_err = std::max(mgf_err, rel_err(lib, reference::kappa_mu_shadowed_laplace(s, siso)));
      }
    }
    out.push_back(below("siso pdf max rel. error (20 tuples)", pdf_err, 1e-9));
    out.push_back(below("siso mgf max rel. error (20 tuples)", mgf_err, 1e-9));
  });
}

CriterionReport rayleigh_reductions(const VerifyOptions& o) {
  return timed(6, "Rayleigh reductions", [&](std::vector<CheckResult>& out) {
    const std::size_t n = 10000;
    {
      const ScaledIdentityParams p{2, 4, 2.0, 1.0, 1e8};
      const LimitingLaw law = reduction_params(ReductionKind::rayleigh_limit, p);
      const EmpiricalDistribution model = estimate_max_eig_samples(p.to_model(), n, stream(o, 600), mc(o));
      const EmpiricalDistribution ref = estimate_wishart_max_eig_samples(
          law.p, law.covariance, law.los_gram, n, stream(o, 601), mc(o));
      out.push_back(below("rayleigh limit sigma2_M=1e8 two-sample KS (1e4 each)",
                          ks_two_sample(model, ref), 0.015));
    }
    {
      const ScaledIdentityParams p{2, 4, 4.0, 1.0, 0.5};
      const LimitingLaw law = reduction_params(ReductionKind::rayleigh_mp, p);
      const EmpiricalDistribution model = estimate_max_eig_samples(p.to_model(), n, stream(o, 602), mc(o));
      const EmpiricalDistribution ref = estimate_wishart_max_eig_samples(
          law.p, law.covariance, law.los_gram, n, stream(o, 603), mc(o));
      out.push_back(below("m=p central Wishart (Sigma + M^-1) two-sample KS (1e4 each)",
                          ks_two_sample(model, ref), 0.015));
      // The density itself collapses to the central Wishart one.
      Rng rng = chunk_engine(stream(o, 604), 0);
      ChannelSampler sampler(p.to_model());
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const HermitianMatrix<> y = sampler.gram_matrix(rng);
        worst = std::max(worst, std::abs(gamma_wishart_logpdf(y, p.to_model()) -
                                         reference::central_wishart_logpdf(y, law.p, law.covariance)));
      }
      out.push_back(below("m=p logpdf vs central Wishart logpdf (abs)", worst, 1e-9));
    }
  });
}

CriterionReport formula_cross_checks(const VerifyOptions&) {
  return timed(7, "closed form vs quadrature, pdf vs CDF derivative, monotone CDF",
               [&](std::vector<CheckResult>& out) {
    std::vector<ScaledIdentityParams> closed_sets = cdf_scenarios();
    closed_sets.push_back(rician_ladder(2.0));
    double entry_err = 0.0;
    for (const ScaledIdentityParams& p : closed_sets) {
      for (double x : {1.0, 10.0, 50.0, 150.0, 1e4}) {
        for (int i = 1; i <= p.n; ++i) {
          for (int j = 1; j <= p.n; ++j) {
            entry_err = std::max(
                entry_err, rel_err(upsilon_entry(i, j, x, p, UpsilonMethod::closed_form),
                                   upsilon_entry(i, j, x, p, UpsilonMethod::quadrature)));
          }
        }
      }
    }
    out.push_back(below("Upsilon closed form vs quadrature max rel. error (m<p sets)", entry_err, 1e-8));

    // Richardson-extrapolated central difference, so the comparison measures
    // the pdf formula rather than the O(h^2) difference error.
    double deriv_err = 0.0;
    auto fd_check = [&](const ScaledIdentityParams& p, double x) {
      auto central = [&](double h) {
        return (max_eig_cdf(x + h, p) - max_eig_cdf(x - h, p)) / (2.0 * h);
      };
      const double h = 2e-3 * x;
      const double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;
      deriv_err = std::max(deriv_err, rel_err(max_eig_pdf(x, p), fd));
    };
    for (double x : {20.0, 60.0, 120.0}) fd_check(pdf_scenario(), x);
    std::vector<ScaledIdentityParams> bodies = cdf_scenarios();
    for (double m : rician_ladder_m()) bodies.push_back(rician_ladder(m));
    for (const ScaledIdentityParams& p : bodies) {
      for (double prob : {0.1, 0.5, 0.9}) fd_check(p, max_eig_quantile(prob, p, 1e-6));
    }
    out.push_back(below("pdf vs central difference of CDF max rel. error (deciles 1, 5, 9)",
                        deriv_err, 1e-6));

    std::vector<ScaledIdentityParams> all = cdf_scenarios();
    for (double m : rician_ladder_m()) all.push_back(rician_ladder(m));
    bool monotone = true;
    bool nonnegative = true;
    double worst_end = 0.0;
    for (const ScaledIdentityParams& p : all) {
      double previous = max_eig_cdf(0.0, p);
      monotone = monotone && previous == 0.0;
      for (int k = 1; k < 200; ++k) {
        const double x = 180.0 * k / 199.0;
        const double f = max_eig_cdf(x, p);
        monotone = monotone && f >= previous - kMonotoneRoundoff;
        nonnegative = nonnegative && max_eig_pdf(x, p) >= 0.0;
        previous = f;
      }
      worst_end = std::max(worst_end, std::abs(1.0 - max_eig_cdf(1e6, p)));
    }
    out.push_back(holds("CDF(0) = 0 and nondecreasing (to 1e-12) on 200-point grids over [0, 180]",
                        monotone));
    out.push_back(holds("pdf >= 0 on the same grids", nonnegative));
    out.push_back(below("|1 - CDF(1e6)| worst case", worst_end, 1e-6));
  });
}

CriterionReport special_function_suite(const VerifyOptions& o) {
  return timed(8, "special functions", [&](std::vector<CheckResult>& out) {
    Rng rng = chunk_engine(stream(o, 800), 0);

    double zonal_err = 0.0;
    for (int n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        EigenSpectrum x = random_spectrum(rng, n, 0.1, 2.0);
        if (trial == 2) x = EigenSpectrum(RealVector::Constant(n, 0.7) + RealVector::LinSpaced(n, 0.0, 1e-5));
        for (int k = 0; k <= 10; ++k) {
          double sum = 0.0;
          for (const Partition& kappa : enumerate_partitions(k, n)) sum += zonal_polynomial(kappa, x);
          zonal_err = std::max(zonal_err, rel_err(sum, std::pow(x.trace(), k)));
        }
      }
    }
    out.push_back(below("zonal sum identity k<=10, n<=5 max rel. error", zonal_err, 1e-9));

    double kummer_err = 0.0;
    double detratio_err = 0.0;
    for (int n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        const EigenSpectrum x = random_spectrum(rng, n, 0.05, 1.5);
        const double a = 0.5 + 3.0 * trial;
        const double b = n + 0.75 + trial;
        const double lhs = hyp_matrix(HypKind::F11, a, b, x);
        const double rhs = std::exp(x.trace()) * hyp_matrix(HypKind::F11, b - a, b, x.scaled(-1.0));
        kummer_err = std::max(kummer_err, rel_err(lhs, rhs));
        kummer_err = std::max(kummer_err, rel_err(hyp_matrix(HypKind::F11, b, b, x), std::exp(x.trace())));
        if (n > 1) {
          detratio_err = std::max(detratio_err, rel_err(hyp_1f1_matrix_detratio(a, b, x), lhs));
          detratio_err = std::max(detratio_err,
                                  rel_err(log_hyp_0f1_matrix_detratio(b, x).value(),
                                          hyp_matrix(HypKind::F01, 0.0, b, x)));
        }
      }
    }
    out.push_back(below("matrix Kummer relation max rel. error", kummer_err, 1e-8));
    out.push_back(below("1F1, 0F1 series vs determinant ratio max rel. error", detratio_err, 1e-6));

    double phi_err = 0.0;
    for (const auto& [a, b, c, x, y] : std::vector<std::array<double, 5>>{
             {1.0, 2.0, 3.0, 0.4, 2.5}, {2.0, 3.0, 5.0, 0.889, 10.0}, {0.5, 1.5, 2.5, 0.97, 0.7}}) {
      phi_err = std::max(phi_err, rel_err(humbert_phi1(a, b, c, x, 0.0), gauss_2f1(a, b, c, x)));
      phi_err = std::max(phi_err, rel_err(humbert_phi1(a, b, c, 0.0, y), kummer_1f1(a, c, y)));
      phi_err = std::max(phi_err, rel_err(humbert_phi1(a, 0.0, c, x, y), kummer_1f1(a, c, y)));
      phi_err = std::max(phi_err,
                         rel_err(log_humbert_phi1(a, b, c, x, y, Phi1Method::series).value(),
                                 log_humbert_phi1(a, b, c, x, y, Phi1Method::integral).value()));
    }
    out.push_back(below("Phi1 reductions and series/integral agreement max rel. error", phi_err, 1e-10));

    // Vanishing argument: pFq(cX) -> 1.
    {
      const EigenSpectrum x{0.4, 1.3, 2.2};
      std::vector<double> gap;
      for (double c : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        gap.push_back(std::max({std::abs(hyp_matrix(HypKind::F11, 2.5, 4.0, x.scaled(c)) - 1.0),
                                std::abs(hyp_matrix(HypKind::F01, 0.0, 4.0, x.scaled(c)) - 1.0),
                                std::abs(hyp_matrix(HypKind::F10, 2.5, 0.0, x.scaled(c)) - 1.0)}));
      }
      out.push_back(holds("pFq(cX) -> 1 ladder strictly decreasing {" + ladder_text(gap) + "}",
                          strictly_decreasing(gap)));
      out.push_back(below("|pFq(cX) - 1| at c=1e-8", gap.back(), 1e-6));
      // Same limit at the density level: M^-1 -> 0 gives the central Wishart.
      const ModelParams base = ScaledIdentityParams{2, 4, 2.0, 1.0, 1.0}.to_model();
      Rng r2 = chunk_engine(stream(o, 801), 0);
      const HermitianMatrix<> y = ChannelSampler(base).gram_matrix(r2);
      std::vector<double> dgap;
      for (double s2m : {1e1, 1e2, 1e3, 1e4}) {
        const ModelParams p = ScaledIdentityParams{2, 4, 2.0, 1.0, s2m}.to_model();
        dgap.push_back(std::abs(gamma_wishart_logpdf(y, p) -
                                reference::central_wishart_logpdf(y, 4, p.sigma)));
      }
      out.push_back(holds("gamma-Wishart -> central Wishart as M^-1 -> 0 {" + ladder_text(dgap) + "}",
                          strictly_decreasing(dgap)));
    }
    // 1F1(a; b; X/a) -> 0F1(b; X).
    {
      const EigenSpectrum x{0.3, 1.1, 2.0};
      const double target = hyp_matrix(HypKind::F01, 0.0, 4.0, x);
      std::vector<double> gap;
      for (double a : {10.0, 100.0, 1000.0, 10000.0}) {
        gap.push_back(rel_err(hyp_matrix(HypKind::F11, a, 4.0, x.scaled(1.0 / a)), target));
      }
      out.push_back(holds("1F1(a;b;X/a) -> 0F1(b;X) ladder strictly decreasing {" +
                              ladder_text(gap) + "}",
                          strictly_decreasing(gap)));
      out.push_back(below("1F1(a;b;X/a) vs 0F1(b;X) at a=1e4", gap.back(), 1e-3));
    }
    // |I + D/m|^{-m} -> etr(-D) with D = Sigma^{-1} M^{-1}.
    {
      const ModelParams p = mgf_case(3);
      const HermitianMatrix<> sigma_inv_half = hermitian_sqrt(HermitianMatrix<>(p.sigma.inverse()));
      const HermitianMatrix<> d = sigma_inv_half * p.shadowing_rate.inverse() * sigma_inv_half;
      Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> es(0.5 * (d + d.adjoint()));
      const RealVector lambda = es.eigenvalues();
      const double target = -lambda.sum();
      std::vector<double> gap;
      for (double m : {1.0, 10.0, 100.0, 1000.0}) {
        const double log_det = (lambda.array() / m).log1p().sum();
        gap.push_back(std::abs(-m * log_det - target));
      }
      out.push_back(holds("|I + D/m|^-m -> etr(-D) ladder strictly decreasing {" + ladder_text(gap) + "}",
                          strictly_decreasing(gap)));
      // Density level: gamma-Wishart -> noncentral Wishart as m grows with m M^-1 fixed.
      const ScaledIdentityParams base = rician_ladder(2.0);
      Rng r3 = chunk_engine(stream(o, 802), 0);
      const HermitianMatrix<> y = ChannelSampler(base.to_model()).gram_matrix(r3);
      const LimitingLaw law = reduction_params(ReductionKind::rician_limit, base, kLadderLosPower);
      const double s = base.sigma2_sigma;
      Eigen::SelfAdjointEigenSolver<HermitianMatrix<>> ey(y, Eigen::EigenvaluesOnly);
      const double theta = law.noncentrality(0, 0).real();
      const double noncentral =
          reference::central_wishart_logpdf(y, law.p, law.covariance) - 2.0 * theta +
          log_hyp_0f1_matrix_detratio(law.p, EigenSpectrum(RealVector(ey.eigenvalues() * (theta / s))))
              .log_abs;
      std::vector<double> dgap;
      for (double m : {5.0, 50.0, 500.0, 5000.0}) {
        dgap.push_back(std::abs(gamma_wishart_logpdf(y, rician_ladder(m).to_model()) - noncentral));
      }
      out.push_back(holds("gamma-Wishart -> noncentral Wishart as m -> inf {" + ladder_text(dgap) + "}",
                          strictly_decreasing(dgap)));
    }
    out.push_back(below("log multivariate gamma vs definition",
                        std::abs(log_multivariate_gamma(3, 4.5) -
                                 (3.0 * std::log(std::numbers::pi) + std::lgamma(4.5) +
                                  std::lgamma(3.5) + std::lgamma(2.5))),
                        1e-12));
  });
}

CriterionReport run_criterion(int id, const VerifyOptions& o) {
  switch (id) {
    case 1: return cdf_agreement(o);
    case 2: return pdf_agreement(o);
    case 3: return rician_convergence(o);
    case 4: return mgf_consistency(o);
    case 5: return siso_reduction(o);
    case 6: return rayleigh_reductions(o);
    case 7: return formula_cross_checks(o);
    case 8: return special_function_suite(o);
    default: throw DomainError("run_criterion: id must be 1..8");
  }
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "special_functions") return {8};
  if (suite == "reductions") return {4, 5, 6};
  if (suite == "figures") return {1, 2, 3, 7};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
  throw DomainError("unknown suite '" + suite +
                    "' (expected special_functions, reductions, figures or all)");
}

}  // namespace rsmimo::verify
