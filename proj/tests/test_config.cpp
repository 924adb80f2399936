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

#include <string>

#include "doctest.h"
#include "flsim/config.hpp"

namespace {

using flsim::ConfigError;
using flsim::ExperimentConfig;

const char kFullConfig[] = R"(
# comment line
[experiment]
clients = 3
rounds = 7
dim = 2
shard_size = 16    # trailing comment
learning_rate = 0.05
master_seed = 18446744073709551615
replicas = 40
sampling_rounds = 2

[model]
gap_constant = 2.5
label_noise = 0.1

[privacy]
budget = 0.2
c1_prior = 0.205
c6_initial = 3.0
gamma = 1.5
delta = 0.75

[adversary]
enabled = false
candidates = 8
likelihood_variance = 0.01
)";

TEST_CASE("full config parses every section") {
  const ExperimentConfig c = flsim::parse_config(kFullConfig);
  CHECK(c.clients == 3);
  CHECK(c.rounds == 7);
  CHECK(c.dim == 2);
  CHECK(c.shard_size == 16);
  CHECK(c.learning_rate == doctest::Approx(0.05));
  CHECK(c.master_seed == 18446744073709551615ull);
  CHECK(c.replicas == 40);
  CHECK(c.sampling_rounds == 2);
  CHECK(c.gap_constant == doctest::Approx(2.5));
  CHECK(c.label_noise == doctest::Approx(0.1));
  CHECK(c.budget == doctest::Approx(0.2));
  CHECK(c.c1_prior == doctest::Approx(0.205));
  CHECK_FALSE(c.c6_override.has_value());
  CHECK(c.c6_initial == doctest::Approx(3.0));
  CHECK(c.gamma == doctest::Approx(1.5));
  REQUIRE(c.delta.has_value());
  CHECK(*c.delta == doctest::Approx(0.75));
  CHECK_FALSE(c.adversary_enabled);
  CHECK(c.candidate_count == 8);
  CHECK(c.likelihood_variance_floor == doctest::Approx(0.01));
  CHECK(c.warnings.empty());
}

TEST_CASE("defaults survive an empty config") {
  const ExperimentConfig c = flsim::parse_config("");
  CHECK(c.clients == 1);
  CHECK(c.rounds == 1);
  CHECK(c.adversary_enabled);
  CHECK_FALSE(c.delta.has_value());
}

TEST_CASE("serialization round-trips through the parser") {
  ExperimentConfig c = flsim::parse_config(kFullConfig);
  c.c6_override = 17.5;
  const ExperimentConfig back = flsim::parse_config(flsim::write_config(c));
  CHECK(back.clients == c.clients);
  CHECK(back.rounds == c.rounds);
  CHECK(back.dim == c.dim);
  CHECK(back.shard_size == c.shard_size);
  CHECK(back.learning_rate == c.learning_rate);
  CHECK(back.master_seed == c.master_seed);
  CHECK(back.replicas == c.replicas);
  CHECK(back.sampling_rounds == c.sampling_rounds);
  CHECK(back.gap_constant == c.gap_constant);
  CHECK(back.label_noise == c.label_noise);
  CHECK(back.budget == c.budget);
  CHECK(back.c1_prior == c.c1_prior);
  REQUIRE(back.c6_override.has_value());
  CHECK(*back.c6_override == *c.c6_override);
  CHECK(back.c6_initial == c.c6_initial);
  CHECK(back.gamma == c.gamma);
  REQUIRE(back.delta.has_value());
  CHECK(*back.delta == *c.delta);
  CHECK(back.adversary_enabled == c.adversary_enabled);
  CHECK(back.candidate_count == c.candidate_count);
  CHECK(back.likelihood_variance_floor == c.likelihood_variance_floor);
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nbogus = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[nonsense]\n"), ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("clients = 1\n"), ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nclients\n"), ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment\nclients = 1\n"),
                  ConfigError);
}

TEST_CASE("sampling probability cannot be configured directly") {
  CHECK_THROWS_AS(flsim::parse_config("[privacy]\nsample_prob = 0.5\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[privacy]\np = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nsample_prob = 0.5\n"),
                  ConfigError);
}

TEST_CASE("value validation") {
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nclients = 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nrounds = -1\n"),
                  ConfigError);
  CHECK_NOTHROW(flsim::parse_config("[experiment]\nrounds = 0\n"));
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nreplicas = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nlearning_rate = 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nlearning_rate = abc\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[experiment]\nmaster_seed = -3\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[model]\nlabel_noise = -0.1\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[privacy]\nbudget = -0.5\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[adversary]\ncandidates = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[adversary]\ncandidates = 17\n"),
                  ConfigError);
  CHECK_THROWS_AS(flsim::parse_config("[adversary]\nenabled = maybe\n"),
                  ConfigError);
}

TEST_CASE("wide initial budget gap produces a warning, not an error") {
  const ExperimentConfig c = flsim::parse_config(
      "[privacy]\nbudget = 0.1\nc1_prior = 0.2\n");
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("calibration regime") != std::string::npos);

  const ExperimentConfig ok = flsim::parse_config(
      "[privacy]\nbudget = 0.1\nc1_prior = 0.105\n");
  CHECK(ok.warnings.empty());
}

TEST_CASE("load_config reports missing files") {
  CHECK_THROWS_AS(flsim::load_config("/nonexistent/path/config.ini"),
                  ConfigError);
}

}  // namespace
