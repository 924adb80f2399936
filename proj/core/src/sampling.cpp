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

#include "flsim/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "flsim/model.hpp"

namespace flsim {

std::vector<std::size_t> draw_minibatch(const ClientShard& shard,
                                        RandomStream& stream) {
  std::vector<std::size_t> indices;
  const double p = shard.sample_prob();
  for (std::size_t i = 0; i < shard.size(); ++i) {
    if (stream.bernoulli(p)) indices.push_back(i);
  }
  return indices;
}

ParamVector expected_update(const ParamVector& w_prev, const ClientShard& shard,
                            double p, const ParamVector& noise) {
  ParamVector grad_sum(w_prev.dim(), 0.0);
  for (const DataPoint& pt : shard.points()) {
    grad_sum += gradient(w_prev, pt);
  }
  grad_sum *= p;
  return w_prev - grad_sum + noise;
}

double update_variance(const ParamVector& w_prev, const ClientShard& shard,
                       double p, int rounds) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("sampling probability must lie in [0, 1]");
  }
  if (rounds < 1) throw std::invalid_argument("rounds must be positive");
  double grad_sq_sum = 0.0;
  for (const DataPoint& pt : shard.points()) {
    grad_sq_sum += gradient(w_prev, pt).squared_norm();
  }
  return p * (1.0 - p) * grad_sq_sum / static_cast<double>(rounds);
}

ParamVector simulate_update(const ParamVector& w_prev, const ClientShard& shard,
                            const SamplingPlan& plan, RandomStream& stream) {
  ParamVector accum(w_prev.dim(), 0.0);
  for (int r = 0; r < plan.rounds; ++r) {
    for (const DataPoint& pt : shard.points()) {
      if (stream.bernoulli(plan.p)) {
        accum += gradient(w_prev, pt);
      }
    }
  }
  accum *= 1.0 / static_cast<double>(plan.rounds);
  return w_prev - accum;
}

SamplingCalibration calibrate_sampling_probability(double c_target) {
  SamplingCalibration cal;
  if (c_target <= 0.0) {
    cal.p = 0.0;
    cal.free = true;
    return cal;
  }
  if (c_target > 0.25) {
    cal.feasible = false;
    return cal;
  }
  // Smaller root of p(1-p) = c_target. At the vertex the discriminant is
  // exactly zero; guard against a tiny negative from rounding.
  const double disc = std::fmax(0.0, 1.0 - 4.0 * c_target);
  cal.p = (1.0 - std::sqrt(disc)) / 2.0;
  return cal;
}

}  // namespace flsim
