// Copyright 2026 The flsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: `flsim simulate|verify-bounds|sweep`.
//
// Exit codes: 0 success, 1 bound failure, 2 config/usage error,
// 3 infeasible budget.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flsim/config.hpp"
#include "flsim/federation.hpp"
#include "flsim/report.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

// FNV-1a, enough to tie outputs to the exact config text.
std::string checksum_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  out << content;
}

/// The manifest goes to disk before any data file so a crashed run leaves a
/// parseable record flagged incomplete.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const std::string& config_path,
                    const std::string& config_checksum, std::uint64_t seed,
                    const std::vector<std::string>& outputs, bool complete) {
  json manifest;
  manifest["tool"] = "flsim";
  manifest["subcommand"] = subcommand;
  manifest["config"] = config_path;
  manifest["config_checksum"] = config_checksum;
  manifest["master_seed"] = seed;
  manifest["outputs"] = outputs;
  manifest["complete"] = complete;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

json constants_json(const flsim::ConstantsBlock& c) {
  json j;
  j["gap_constant"] = c.gap_constant;
  j["c1_t"] = c.c1_t;
  j["c2"] = c.c2;
  j["c3"] = c.c3;
  j["c4"] = c.c4;
  j["c5"] = c.c5;
  j["c5_estimable"] = c.c5_estimable;
  j["c6"] = c.c6;
  j["c_d"] = c.c_d;
  j["xi"] = c.xi;
  j["gamma"] = c.gamma;
  if (c.delta.has_value()) {
    j["delta"] = *c.delta;
  } else {
    j["delta"] = nullptr;
  }
  return j;
}

void write_summary(const fs::path& out_dir, const flsim::RunResult& result) {
  int failed = 0;
  int out_of_regime = 0;
  for (const flsim::BoundEntry& e : result.report.entries) {
    if (e.status == "fail") ++failed;
    if (e.status == "out-of-regime") ++out_of_regime;
  }
  json summary;
  summary["constants"] = constants_json(result.report.constants);
  summary["bound_entries"] = result.report.entries.size();
  summary["bound_failures"] = failed;
  summary["bounds_out_of_regime"] = out_of_regime;
  summary["final_pooled_loss"] = result.final_pooled_loss;
  summary["rounds_recorded"] = result.rows.size();
  write_file(out_dir / "summary.json", summary.dump(2) + "\n");
}

void print_failures(const flsim::BoundReport& report) {
  for (const flsim::BoundEntry& e : report.entries) {
    if (e.status != "fail") continue;
    std::cerr << "FAIL " << e.name << " t=" << e.round << " k=" << e.client
              << " lhs=" << flsim::format_double(e.lhs)
              << " rhs=" << flsim::format_double(e.rhs)
              << " stderr=" << flsim::format_double(e.std_err) << "\n";
  }
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
  flsim::ExperimentConfig cfg = flsim::load_config(config_path);
  if (seed.has_value()) cfg.master_seed = *seed;
  for (const std::string& w : cfg.warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string checksum = checksum_hex(slurp(config_path));
  write_manifest(dir, "simulate", config_path, checksum, cfg.master_seed,
                 {"rounds.csv", "summary.json"}, false);

  const flsim::RunResult result = flsim::run_experiment(cfg);

  std::ofstream rounds(dir / "rounds.csv", std::ios::trunc);
  flsim::write_rounds_csv(rounds, result.rows);
  rounds.close();
  write_summary(dir, result);
  write_manifest(dir, "simulate", config_path, checksum, cfg.master_seed,
                 {"rounds.csv", "summary.json"}, true);
  return kExitOk;
}

int run_verify_bounds(const std::string& config_path,
                      const std::string& out_dir) {
  flsim::ExperimentConfig cfg = flsim::load_config(config_path);
  for (const std::string& w : cfg.warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string checksum = checksum_hex(slurp(config_path));
  write_manifest(dir, "verify-bounds", config_path, checksum, cfg.master_seed,
                 {"rounds.csv", "bounds.csv", "summary.json"}, false);

  const flsim::RunResult result = flsim::run_experiment(cfg);

  std::ofstream rounds(dir / "rounds.csv", std::ios::trunc);
  flsim::write_rounds_csv(rounds, result.rows);
  rounds.close();
  std::ofstream bounds(dir / "bounds.csv", std::ios::trunc);
  flsim::write_bounds_csv(bounds, result.report);
  bounds.close();
  write_summary(dir, result);
  write_manifest(dir, "verify-bounds", config_path, checksum, cfg.master_seed,
                 {"rounds.csv", "bounds.csv", "summary.json"}, true);

  if (!result.report.all_pass()) {
    print_failures(result.report);
    return kExitBoundFailure;
  }
  return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& param,
              const std::string& grid_arg, const std::string& out_dir) {
  flsim::ExperimentConfig cfg = flsim::load_config(config_path);

  std::vector<double> grid;
  std::stringstream ss(grid_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      grid.push_back(v);
    } catch (const std::exception&) {
      throw flsim::ConfigError("invalid grid value: " + tok);
    }
  }
  if (grid.empty()) throw flsim::ConfigError("empty sweep grid");

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string checksum = checksum_hex(slurp(config_path));
  write_manifest(dir, "sweep", config_path, checksum, cfg.master_seed,
                 {"sweep.csv"}, false);

  std::ofstream out(dir / "sweep.csv", std::ios::trunc);
  out << "param,value,t,k,p,sigma_eps_sq,tv_est,tv_stderr,"
         "eps_u,eps_u_stderr,eps_p,c1t\n";

  bool any_fail = false;
  for (double value : grid) {
    flsim::ExperimentConfig point = cfg;
    if (param == "noise") {
      if (value < 0.0) throw flsim::ConfigError("noise grid values must be >= 0");
      point.forced_noise_variance = value;
    } else {
      if (value < 0.0) {
        throw flsim::ConfigError("budget grid values must be >= 0");
      }
      point.budget = value;
    }
    const flsim::RunResult result = flsim::run_experiment(point);
    if (!result.report.all_pass()) {
      any_fail = true;
      print_failures(result.report);
    }
    for (const flsim::RoundRow& r : result.rows) {
      out << param << ',' << flsim::format_double(value) << ',' << r.round
          << ',' << r.client << ',' << flsim::format_double(r.p) << ','
          << flsim::format_double(r.sigma_eps_sq) << ','
          << flsim::format_double(r.tv_est) << ','
          << flsim::format_double(r.tv_stderr) << ','
          << flsim::format_double(r.eps_u) << ','
          << flsim::format_double(r.eps_u_stderr) << ','
          << flsim::format_double(r.eps_p) << ','
          << flsim::format_double(r.c1_t) << '\n';
    }
  }
  out.close();
  write_manifest(dir, "sweep", config_path, checksum, cfg.master_seed,
                 {"sweep.csv"}, true);
  return any_fail ? kExitBoundFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator for privacy-protected federated "
               "linear regression"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string sweep_param;
  std::string sweep_grid;

  CLI::App* simulate = app.add_subcommand("simulate", "Run the federation");
  simulate->add_option("--config", config_path)->required();
  simulate->add_option("--out", out_dir)->required();
  simulate->add_option("--seed", seed, "Master seed override");

  CLI::App* verify =
      app.add_subcommand("verify-bounds", "Run and check every bound");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--out", out_dir)->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Grid over noise or budget");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--param", sweep_param)
      ->required()
      ->check(CLI::IsMember({"noise", "budget"}));
  sweep->add_option("--grid", sweep_grid, "Comma-separated values")->required();
  sweep->add_option("--out", out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (simulate->parsed()) return run_simulate(config_path, out_dir, seed);
    if (verify->parsed()) return run_verify_bounds(config_path, out_dir);
    return run_sweep(config_path, sweep_param, sweep_grid, out_dir);
  } catch (const flsim::InfeasibleBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const flsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
