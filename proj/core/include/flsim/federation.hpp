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

#ifndef FLSIM_FEDERATION_HPP_
#define FLSIM_FEDERATION_HPP_

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flsim/adversary.hpp"
#include "flsim/config.hpp"
#include "flsim/metrics.hpp"
#include "flsim/param_vector.hpp"
#include "flsim/report.hpp"
#include "flsim/rng.hpp"
#include "flsim/types.hpp"

namespace flsim {

/// Raised when no sampling probability can meet the per-round budget.
struct InfeasibleBudgetError : std::runtime_error {
  InfeasibleBudgetError(int round, int client, double target)
      : std::runtime_error("infeasible privacy budget at round " +
                           std::to_string(round) + ", client " +
                           std::to_string(client)),
        round(round),
        client(client),
        target(target) {}
  int round;
  int client;
  double target;
};

/// Deterministically generated problem instance: client shards, per-client
/// candidate universes for the observer, and the pooled optimum.
struct Federation {
  std::vector<ClientShard> shards;
  std::vector<CandidateUniverse> universes;
  std::vector<DataPoint> pooled;
  ParamVector w_star;
  ParamVector w_init;
  ParamVector w_true;
  bool rank_deficient = false;
};

/// Builds the instance from the config; pure function of the master seed.
Federation make_federation(const ExperimentConfig& config);

/// One local training step: w - eta * mean gradient over a Bernoulli
/// minibatch drawn with the shard's sampling probability. An empty batch
/// leaves the parameter unchanged. Sampled indices are reported through
/// `indices_out` when non-null.
ParamVector client_training(const ParamVector& w_global,
                            const ClientShard& shard, double eta,
                            RandomStream& stream,
                            std::vector<std::size_t>* indices_out = nullptr);

/// Per-(round, client) summary row in the order of the rounds.csv schema.
struct RoundRow {
  int round = 0;
  int client = 0;
  double p = 0.0;
  double sigma_eps_sq = 0.0;
  double tv_est = 0.0;
  double tv_stderr = 0.0;
  double eps_u = 0.0;
  double eps_u_stderr = 0.0;
  double eps_p = 0.0;
  double c1_t = 0.0;
};

struct RunResult {
  std::vector<RoundRow> rows;
  std::vector<RoundRecord> records;   // actual uploaded trajectory
  std::vector<ParamVector> w_global;  // w_global[t] enters round t; back() final
  BoundReport report;
  double final_pooled_loss = 0.0;
};

/// Runs the full protected federation: per round and client, calibrates the
/// sampling probability and noise variance against the current budget gap,
/// simulates replica updates for the moment / divergence statistics, runs the
/// Bayesian observer, evaluates every tracked bound, and aggregates the
/// distorted uploads into the next global parameter.
/// Throws InfeasibleBudgetError when calibration fails.
RunResult run_experiment(const ExperimentConfig& config);

/// Writes rounds.csv: t,k,p,sigma_eps_sq,tv_est,tv_stderr,eps_u,
/// eps_u_stderr,eps_p,c1t.
void write_rounds_csv(std::ostream& out, const std::vector<RoundRow>& rows);

}  // namespace flsim

#endif  // FLSIM_FEDERATION_HPP_
