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

#include "rsmimo/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "rsmimo/channel_model.hpp"
#include "rsmimo/closed_form.hpp"
#include "rsmimo/monte_carlo.hpp"
#include "rsmimo/verify/verification.hpp"

namespace rsmimo::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::optional<int> n, p;
  std::optional<double> m, sigma2_sigma, sigma2_m, inv_sigma2_m;
  std::string config;
  double xmin = 0.0;
  double xmax = 180.0;
  int points = 200;
  std::string output;
  long long count = 100000;
  std::uint64_t seed = 2016;
  unsigned workers = 1;
  std::string suite = "all";
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& c : key) c = c == '_' ? '-' : c;
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  std::istringstream in(text);
  in >> value;
  if (!in || !(in >> std::ws).eof()) throw DomainError("config: invalid value for '" + key + "'");
  return value;
}

// Options given on the command line win over the config file.
void merge_config(CLI::App& cmd, Settings& s) {
  if (s.config.empty()) return;
  for (const auto& [key, text] : read_config(s.config)) {
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw DomainError("config: unknown key '" + key + "' for command " + cmd.get_name());
    }
    if (opt->count() > 0 || key == "config") continue;
    if (key == "n") s.n = parse_value<int>(key, text);
    else if (key == "p") s.p = parse_value<int>(key, text);
    else if (key == "m") s.m = parse_value<double>(key, text);
    else if (key == "sigma2-sigma") s.sigma2_sigma = parse_value<double>(key, text);
    else if (key == "sigma2-m") s.sigma2_m = parse_value<double>(key, text);
    else if (key == "inv-sigma2-m") s.inv_sigma2_m = parse_value<double>(key, text);
    else if (key == "xmin") s.xmin = parse_value<double>(key, text);
    else if (key == "xmax") s.xmax = parse_value<double>(key, text);
    else if (key == "points") s.points = parse_value<int>(key, text);
    else if (key == "output") s.output = text;
    else if (key == "N") s.count = parse_value<long long>(key, text);
    else if (key == "seed") s.seed = parse_value<std::uint64_t>(key, text);
    else if (key == "workers") s.workers = parse_value<unsigned>(key, text);
    else if (key == "suite") s.suite = text;
  }
}

void add_model_options(CLI::App& cmd, Settings& s) {
  cmd.add_option("--n", s.n, "receive dimension n");
  cmd.add_option("--p", s.p, "transmit dimension p (p >= n)");
  cmd.add_option("--m", s.m, "shadowing shape m (m > n - 1)");
  cmd.add_option("--sigma2-sigma", s.sigma2_sigma, "scattering power sigma_Sigma^2");
  cmd.add_option("--sigma2-m", s.sigma2_m, "shadowing rate sigma_M^2");
  cmd.add_option("--inv-sigma2-m", s.inv_sigma2_m, "LOS power per unit m, sigma_M^{-2}");
  cmd.add_option("--config", s.config, "key = value file; command-line flags override it");
}

ScaledIdentityParams resolve(const Settings& s) {
  auto need = [](const auto& v, const char* name) {
    if (!v) throw DomainError(std::string("missing parameter --") + name);
    return *v;
  };
  if (s.sigma2_m && s.inv_sigma2_m) {
    throw DomainError("give only one of --sigma2-m and --inv-sigma2-m");
  }
  if (!s.sigma2_m && !s.inv_sigma2_m) throw DomainError("missing parameter --sigma2-m or --inv-sigma2-m");
  ScaledIdentityParams p;
  p.n = need(s.n, "n");
  p.p = need(s.p, "p");
  p.m = need(s.m, "m");
  p.sigma2_sigma = need(s.sigma2_sigma, "sigma2-sigma");
  if (s.inv_sigma2_m) {
    if (!(*s.inv_sigma2_m > 0.0)) throw DomainError("invalid parameters: inv-sigma2-m > 0 required");
    p.sigma2_m = 1.0 / *s.inv_sigma2_m;
  } else {
    p.sigma2_m = *s.sigma2_m;
  }
  p.validate();
  return p;
}

void print_resolved(std::ostream& log, const ScaledIdentityParams& p, std::uint64_t seed) {
  log << "resolved: n=" << p.n << " p=" << p.p << " m=" << number(p.m)
      << " sigma2-sigma=" << number(p.sigma2_sigma) << " sigma2-m=" << number(p.sigma2_m)
      << " seed=" << seed << "\n";
}

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw DomainError("missing --output path");
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw IoError("cannot create directory for '" + path + "': " + ec.message());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_curve(const Settings& s, const char* header,
                 const std::function<double(double, const ScaledIdentityParams&)>& fn,
                 std::ostream& log) {
  const ScaledIdentityParams p = resolve(s);
  if (s.points < 2) throw DomainError("grid: --points >= 2 required");
  if (!(s.xmin < s.xmax)) throw DomainError("grid: --xmin < --xmax required");
  print_resolved(log, p, s.seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(s.points));
  for (int k = 0; k < s.points; ++k) {
    const double x = k + 1 == s.points ? s.xmax : s.xmin + (s.xmax - s.xmin) * k / (s.points - 1);
    values.push_back(fn(x, p));
  }
  std::ofstream out = open_output(s.output);
  out << header << "\n";
  for (int k = 0; k < s.points; ++k) {
    const double x = k + 1 == s.points ? s.xmax : s.xmin + (s.xmax - s.xmin) * k / (s.points - 1);
    out << number(x) << "," << number(values[k]) << "\n";
  }
  finish(out, s.output);
  log << "wrote " << s.points << " rows to " << s.output << "\n";
}

void write_samples(const Settings& s, std::ostream& log) {
  const ScaledIdentityParams p = resolve(s);
  if (s.count < 1) throw DomainError("invalid parameters: N >= 1 required");
  print_resolved(log, p, s.seed);
  const ModelParams model = p.to_model();
  MonteCarloOptions options;
  options.workers = std::max(1u, s.workers);
  const std::vector<double> draws = draw_samples(
      [&]() -> ScalarSampler {
        auto sampler = std::make_shared<ChannelSampler>(model);
        return [sampler](Rng& rng) { return sampler->max_eigenvalue(rng); };
      },
      static_cast<std::size_t>(s.count), s.seed, options);
  std::ofstream out = open_output(s.output);
  out << "max_eigenvalue\n";
  for (double v : draws) out << number(v) << "\n";
  finish(out, s.output);
  log << "wrote " << draws.size() << " samples to " << s.output << "\n";
}

int run_verify(const Settings& s, std::ostream& log) {
  const std::vector<int> ids = verify::suite_criteria(s.suite);
  verify::VerifyOptions options;
  options.seed = s.seed;
  options.workers = std::max(1u, s.workers);
  log << "resolved: suite=" << s.suite << " seed=" << s.seed << "\n";
  bool ok = true;
  for (int id : ids) {
    const verify::CriterionReport r = verify::run_criterion(id, options);
    for (const auto& c : r.checks) log << "check " << verify::format_check(c) << "\n";
    log << verify::format_summary(r) << "\n";
    ok = ok && r.pass();
  }
  log << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& log) {
  CLI::App app{"Statistics of the MIMO Rician shadowed fading channel", "rsmimo"};
  app.require_subcommand(1);
  Settings s;

  CLI::App* cdf = app.add_subcommand("cdf", "CDF of the largest eigenvalue on a grid (CSV x,cdf)");
  CLI::App* pdf = app.add_subcommand("pdf", "pdf of the largest eigenvalue on a grid (CSV x,pdf)");
  for (CLI::App* cmd : {cdf, pdf}) {
    add_model_options(*cmd, s);
    cmd->add_option("--xmin", s.xmin, "grid start")->capture_default_str();
    cmd->add_option("--xmax", s.xmax, "grid end")->capture_default_str();
    cmd->add_option("--points", s.points, "grid points (>= 2)")->capture_default_str();
    cmd->add_option("--output", s.output, "CSV path; missing directories are created");
  }
  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo largest-eigenvalue draws (CSV)");
  add_model_options(*sample, s);
  sample->add_option("--N", s.count, "number of draws (>= 1)")->capture_default_str();
  sample->add_option("--seed", s.seed, "master seed")->capture_default_str();
  sample->add_option("--workers", s.workers, "threads; output does not depend on it");
  sample->add_option("--output", s.output, "CSV path; missing directories are created");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", s.suite, "special_functions, reductions, figures or all")
      ->capture_default_str();
  verify_cmd->add_option("--seed", s.seed, "master seed")->capture_default_str();
  verify_cmd->add_option("--workers", s.workers, "Monte Carlo threads");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    log << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (cdf->parsed()) {
      merge_config(*cdf, s);
      write_curve(s, "x,cdf", [](double x, const ScaledIdentityParams& p) { return max_eig_cdf(x, p); }, log);
    } else if (pdf->parsed()) {
      merge_config(*pdf, s);
      write_curve(s, "x,pdf", [](double x, const ScaledIdentityParams& p) { return max_eig_pdf(x, p); }, log);
    } else if (sample->parsed()) {
      merge_config(*sample, s);
      write_samples(s, log);
    } else {
      return run_verify(s, log);
    }
  } catch (const NumericalConsistencyError& e) {
    log << "numerical consistency error: " << e.what() << "\n";
    return kNumericalConsistencyError;
  } catch (const DomainError& e) {
    log << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << "\n";
    return kValidationError;
  } catch (const ConvergenceError& e) {
    log << "numerical error: " << e.what() << "\n";
    return kNumericalConsistencyError;
  }
  return kSuccess;
}

}  // namespace rsmimo::cli
