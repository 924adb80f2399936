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

#include "flsim/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flsim/report.hpp"

namespace flsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() ||
      errno == ERANGE || value[0] == '-') {
    throw ConfigError("invalid unsigned integer for '" + key + "': " + value);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + value);
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError("'" + key + "' must be positive");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header on line " +
                          std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "model" &&
          section != "privacy" && section != "adversary") {
        throw ConfigError("unknown section '" + section + "'");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' on line " +
                        std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "experiment.clients") {
      cfg.clients = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "experiment.rounds") {
      cfg.rounds = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "experiment.dim") {
      cfg.dim = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "experiment.shard_size") {
      cfg.shard_size = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "experiment.learning_rate") {
      cfg.learning_rate = parse_double(qualified, value);
    } else if (qualified == "experiment.master_seed") {
      cfg.master_seed = parse_u64(qualified, value);
    } else if (qualified == "experiment.replicas") {
      cfg.replicas = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "experiment.sampling_rounds") {
      cfg.sampling_rounds = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "model.gap_constant") {
      cfg.gap_constant = parse_double(qualified, value);
    } else if (qualified == "model.label_noise") {
      cfg.label_noise = parse_double(qualified, value);
    } else if (qualified == "privacy.budget") {
      cfg.budget = parse_double(qualified, value);
    } else if (qualified == "privacy.c1_prior") {
      cfg.c1_prior = parse_double(qualified, value);
    } else if (qualified == "privacy.c6_override") {
      if (!value.empty()) cfg.c6_override = parse_double(qualified, value);
    } else if (qualified == "privacy.c6_initial") {
      cfg.c6_initial = parse_double(qualified, value);
    } else if (qualified == "privacy.gamma") {
      cfg.gamma = parse_double(qualified, value);
    } else if (qualified == "privacy.delta") {
      if (!value.empty()) cfg.delta = parse_double(qualified, value);
    } else if (qualified == "adversary.enabled") {
      cfg.adversary_enabled = parse_bool(qualified, value);
    } else if (qualified == "adversary.candidates") {
      cfg.candidate_count = static_cast<int>(parse_int(qualified, value));
    } else if (qualified == "adversary.likelihood_variance") {
      cfg.likelihood_variance_floor = parse_double(qualified, value);
    } else if (qualified == "privacy.sample_prob" ||
               qualified == "privacy.p" || key == "sample_prob") {
      // The sampling probability is calibrated from the budget; configuring
      // it directly would silently bypass the privacy guarantee.
      throw ConfigError("'" + key + "' cannot be configured; it is derived "
                        "from the privacy budget");
    } else {
      throw ConfigError("unknown key '" + qualified + "'");
    }
  }

  if (cfg.clients < 1) throw ConfigError("'experiment.clients' must be >= 1");
  if (cfg.rounds < 0) throw ConfigError("'experiment.rounds' must be >= 0");
  if (cfg.dim < 1) throw ConfigError("'experiment.dim' must be >= 1");
  if (cfg.shard_size < 1) {
    throw ConfigError("'experiment.shard_size' must be >= 1");
  }
  if (cfg.replicas < 2) throw ConfigError("'experiment.replicas' must be >= 2");
  if (cfg.sampling_rounds < 1) {
    throw ConfigError("'experiment.sampling_rounds' must be >= 1");
  }
  require_positive("experiment.learning_rate", cfg.learning_rate);
  require_positive("model.gap_constant", cfg.gap_constant);
  if (cfg.label_noise < 0.0) {
    throw ConfigError("'model.label_noise' must be >= 0");
  }
  if (cfg.budget < 0.0) throw ConfigError("'privacy.budget' must be >= 0");
  if (cfg.c1_prior < 0.0) throw ConfigError("'privacy.c1_prior' must be >= 0");
  require_positive("privacy.c6_initial", cfg.c6_initial);
  require_positive("privacy.gamma", cfg.gamma);
  if (cfg.delta.has_value()) require_positive("privacy.delta", *cfg.delta);
  if (cfg.c6_override.has_value()) {
    require_positive("privacy.c6_override", *cfg.c6_override);
  }
  if (cfg.candidate_count < 2 || cfg.candidate_count > 16) {
    throw ConfigError("'adversary.candidates' must be in [2, 16]");
  }
  require_positive("adversary.likelihood_variance",
                   cfg.likelihood_variance_floor);

  const double gap0 = cfg.c1_prior - cfg.budget;
  if (gap0 >= 0.01) {
    cfg.warnings.push_back(
        "initial budget gap c1_prior - budget = " + format_double(gap0) +
        " is outside the calibration regime (0, 0.01)");
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "clients = " << cfg.clients << "\n";
  out << "rounds = " << cfg.rounds << "\n";
  out << "dim = " << cfg.dim << "\n";
  out << "shard_size = " << cfg.shard_size << "\n";
  out << "learning_rate = " << format_double(cfg.learning_rate) << "\n";
  out << "master_seed = " << cfg.master_seed << "\n";
  out << "replicas = " << cfg.replicas << "\n";
  out << "sampling_rounds = " << cfg.sampling_rounds << "\n";
  out << "\n[model]\n";
  out << "gap_constant = " << format_double(cfg.gap_constant) << "\n";
  out << "label_noise = " << format_double(cfg.label_noise) << "\n";
  out << "\n[privacy]\n";
  out << "budget = " << format_double(cfg.budget) << "\n";
  out << "c1_prior = " << format_double(cfg.c1_prior) << "\n";
  if (cfg.c6_override.has_value()) {
    out << "c6_override = " << format_double(*cfg.c6_override) << "\n";
  }
  out << "c6_initial = " << format_double(cfg.c6_initial) << "\n";
  out << "gamma = " << format_double(cfg.gamma) << "\n";
  if (cfg.delta.has_value()) {
    out << "delta = " << format_double(*cfg.delta) << "\n";
  }
  out << "\n[adversary]\n";
  out << "enabled = " << (cfg.adversary_enabled ? "true" : "false") << "\n";
  out << "candidates = " << cfg.candidate_count << "\n";
  out << "likelihood_variance = "
      << format_double(cfg.likelihood_variance_floor) << "\n";
  return out.str();
}

}  // namespace flsim
