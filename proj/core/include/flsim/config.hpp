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

#ifndef FLSIM_CONFIG_HPP_
#define FLSIM_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flsim {

/// Full experiment description. Loaded from a sectioned key-value file;
/// unknown keys are rejected and the sampling probability is always derived
/// from the budget, never configured.
struct ExperimentConfig {
  // [experiment]
  int clients = 1;
  int rounds = 1;
  int dim = 1;
  int shard_size = 4;
  double learning_rate = 0.1;
  std::uint64_t master_seed = 1;
  int replicas = 30;
  int sampling_rounds = 1;

  // [model]
  double gap_constant = 1.0;
  double label_noise = 0.0;

  // [privacy]
  double budget = 0.0;     // privacy cap tau, shared by clients and rounds
  double c1_prior = 0.0;   // pivot constant used before any measurement
  std::optional<double> c6_override;
  double c6_initial = 1.0;
  double gamma = 1.0;
  std::optional<double> delta;

  // [adversary]
  bool adversary_enabled = true;
  int candidate_count = 4;
  double likelihood_variance_floor = 1e-6;

  // Set programmatically (sweep grids); never a config-file key. When set,
  // the distortion variance is forced instead of calibrated.
  std::optional<double> forced_noise_variance;

  std::vector<std::string> warnings;  // non-fatal issues found at load time
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses and validates a config file. Throws ConfigError naming the field
/// on schema violations; infeasible budget combinations become warnings.
ExperimentConfig load_config(const std::string& path);

/// Parses config text (same grammar as load_config).
ExperimentConfig parse_config(const std::string& text);

/// Serializes a config so that parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& config);

}  // namespace flsim

#endif  // FLSIM_CONFIG_HPP_
