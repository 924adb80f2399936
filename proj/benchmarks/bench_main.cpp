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

#include <benchmark/benchmark.h>

#include <vector>

#include "flsim/adversary.hpp"
#include "flsim/config.hpp"
#include "flsim/divergence.hpp"
#include "flsim/federation.hpp"
#include "flsim/rng.hpp"
#include "flsim/sampling.hpp"

namespace {

using flsim::ClientShard;
using flsim::DataPoint;
using flsim::ExperimentConfig;
using flsim::ParamVector;
using flsim::RandomStream;

ClientShard make_shard(std::size_t points, std::size_t d, RandomStream& s,
                       double p) {
  std::vector<DataPoint> data;
  for (std::size_t i = 0; i < points; ++i) {
    ParamVector x(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) x[j] = s.normal();
    data.push_back(DataPoint{x, s.normal()});
  }
  return ClientShard(std::move(data), p);
}

void BM_SimulateUpdate(benchmark::State& state) {
  RandomStream setup(1);
  const auto shard =
      make_shard(static_cast<std::size_t>(state.range(0)), 4, setup, 0.5);
  const ParamVector w(4, 0.1);
  const flsim::SamplingPlan plan{0.5, 1};
  RandomStream stream(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flsim::simulate_update(w, shard, plan, stream));
  }
}
BENCHMARK(BM_SimulateUpdate)->Arg(8)->Arg(64)->Arg(512);

void BM_TvMonteCarlo(benchmark::State& state) {
  RandomStream data(3);
  const int n = static_cast<int>(state.range(0));
  std::vector<ParamVector> a, b;
  for (int i = 0; i < n; ++i) {
    a.push_back(ParamVector({data.normal(), data.normal()}));
    b.push_back(ParamVector({0.2 + data.normal(), data.normal()}));
  }
  for (auto _ : state) {
    RandomStream oracle(4);
    benchmark::DoNotOptimize(flsim::tv_monte_carlo(a, b, 0, oracle));
  }
}
BENCHMARK(BM_TvMonteCarlo)->Arg(1000)->Arg(10000);

void BM_Posterior(benchmark::State& state) {
  RandomStream setup(5);
  flsim::CandidateUniverse universe;
  const int candidates = static_cast<int>(state.range(0));
  for (int c = 0; c < candidates; ++c) {
    universe.candidates.push_back(make_shard(8, 4, setup, 1.0));
  }
  universe.prior = flsim::DiscreteDist::from_weights(
      std::vector<double>(static_cast<std::size_t>(candidates), 1.0));
  const ParamVector w_prev(4, 0.0);
  const ParamVector observed(4, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flsim::posterior(
        universe, flsim::LikelihoodModel{0.5}, observed, w_prev, 0.5));
  }
}
BENCHMARK(BM_Posterior)->Arg(2)->Arg(8)->Arg(16);

void BM_RunExperimentRound(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.clients = 2;
  cfg.rounds = 1;
  cfg.dim = 2;
  cfg.shard_size = 8;
  cfg.master_seed = 7;
  cfg.replicas = static_cast<int>(state.range(0));
  cfg.budget = 0.15;
  cfg.c1_prior = 0.155;
  cfg.c6_override = 200.0;
  cfg.delta = 0.5;
  cfg.candidate_count = 3;
  cfg.likelihood_variance_floor = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flsim::run_experiment(cfg));
  }
}
BENCHMARK(BM_RunExperimentRound)->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
