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

#ifndef FLSIM_SAMPLING_HPP_
#define FLSIM_SAMPLING_HPP_

#include <cstddef>
#include <vector>

#include "flsim/param_vector.hpp"
#include "flsim/rng.hpp"
#include "flsim/types.hpp"

namespace flsim {

/// Bernoulli sampling schedule: inclusion probability p, averaged over
/// `rounds` independent sampling passes.
struct SamplingPlan {
  double p = 1.0;
  int rounds = 1;
};

/// Independently includes each index of the shard with probability p.
/// The empty set is a legal outcome.
std::vector<std::size_t> draw_minibatch(const ClientShard& shard,
                                        RandomStream& stream);

/// Exact expectation of the sampled parameter update:
/// w_prev - p * sum_i grad_i + noise.
ParamVector expected_update(const ParamVector& w_prev, const ClientShard& shard,
                            double p, const ParamVector& noise);

/// Exact total variance of the sampled update averaged over `rounds`
/// sampling passes: (1/rounds) * p(1-p) * sum_i ||grad_i||^2.
double update_variance(const ParamVector& w_prev, const ClientShard& shard,
                       double p, int rounds);

/// One realization of the sampled update model behind expected_update /
/// update_variance: averages `plan.rounds` independent Bernoulli passes over
/// the full gradient sum. Noise is not added here.
ParamVector simulate_update(const ParamVector& w_prev, const ClientShard& shard,
                            const SamplingPlan& plan, RandomStream& stream);

struct SamplingCalibration {
  double p = 0.0;
  bool feasible = true;  // false when no p can reach the target
  bool free = false;     // target was zero or negative, any p works
};

/// Smallest p with p(1-p) >= c_target. Targets above 1/4 are infeasible;
/// the boundary c_target = 1/4 returns p = 1/2 exactly. Negative targets
/// clamp to p = 0 with the `free` flag set.
SamplingCalibration calibrate_sampling_probability(double c_target);

}  // namespace flsim

#endif  // FLSIM_SAMPLING_HPP_
