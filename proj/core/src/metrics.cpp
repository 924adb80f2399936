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

#include "flsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flsim/model.hpp"

namespace flsim {

namespace {

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

MeanVar mean_var(const std::vector<double>& xs) {
  MeanVar mv;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) mv.mean += x;
  mv.mean /= n;
  if (xs.size() > 1) {
    for (double x : xs) mv.var += (x - mv.mean) * (x - mv.mean);
    mv.var /= n - 1.0;
  }
  return mv;
}

}  // namespace

UtilityLossEstimate utility_loss(const std::vector<ParamVector>& unprotected,
                                 const std::vector<ParamVector>& protected_arm,
                                 const ParamVector& w_star,
                                 double gap_constant) {
  if (unprotected.size() < 2 || protected_arm.size() < 2) {
    throw std::invalid_argument("utility_loss needs replicas in both arms");
  }
  std::vector<double> gaps_u, gaps_p;
  gaps_u.reserve(unprotected.size());
  gaps_p.reserve(protected_arm.size());
  for (const ParamVector& w : unprotected) {
    gaps_u.push_back(gap(w, w_star, gap_constant));
  }
  for (const ParamVector& w : protected_arm) {
    gaps_p.push_back(gap(w, w_star, gap_constant));
  }
  const MeanVar mu = mean_var(gaps_u);
  const MeanVar mp = mean_var(gaps_p);

  UtilityLossEstimate est;
  est.value = mu.mean - mp.mean;
  est.std_err = std::sqrt(mu.var / static_cast<double>(gaps_u.size()) +
                          mp.var / static_cast<double>(gaps_p.size()));
  return est;
}

BiasVariance bias_variance_decomposition(
    const std::vector<ParamVector>& replicas, const ParamVector& w_star) {
  if (replicas.size() < 2) {
    throw std::invalid_argument("decomposition needs >= 2 replicas");
  }
  const double n = static_cast<double>(replicas.size());
  ParamVector mean(w_star.dim(), 0.0);
  for (const ParamVector& w : replicas) mean += w;
  mean *= 1.0 / n;

  BiasVariance bv;
  for (const ParamVector& w : replicas) {
    bv.gap += (w - w_star).squared_norm();
    bv.variance += (w - mean).squared_norm();
  }
  bv.gap /= n;
  bv.variance /= n;  // population normalization keeps the identity exact
  bv.bias_sq = (mean - w_star).squared_norm();
  return bv;
}

BoundEntry check_utility_upper_bound(const UtilityLossEstimate& eps_u,
                                     double expected_cond_variance, double tv,
                                     double tv_stderr, double c6, int round,
                                     int client) {
  BoundEntry entry;
  entry.name = "utility_upper_bound";
  entry.round = round;
  entry.client = client;
  entry.lhs = eps_u.value;
  entry.rhs = -expected_cond_variance + c6 * tv;
  entry.std_err = std::sqrt(eps_u.std_err * eps_u.std_err +
                            c6 * c6 * tv_stderr * tv_stderr);
  entry.status =
      entry.lhs <= entry.rhs + 3.0 * entry.std_err + 1e-12 ? "pass" : "fail";
  return entry;
}

std::vector<BoundEntry> check_tradeoff_bounds(double eps_p,
                                              const UtilityLossEstimate& eps_u,
                                              double expected_cond_variance,
                                              double tv, double tv_stderr,
                                              const ConstantsBlock& constants,
                                              int round, int client) {
  std::vector<BoundEntry> entries;
  const double weight = constants.c6 > 0.0 ? constants.c2 / constants.c6 : 0.0;

  BoundEntry upper;
  upper.name = "tradeoff_upper_bound";
  upper.round = round;
  upper.client = client;
  upper.lhs = eps_p + weight * eps_u.value;
  upper.rhs = -weight * expected_cond_variance + 2.0 * constants.c1_t;
  upper.std_err = weight * eps_u.std_err;
  // The proof routes through the leakage upper bound, whose premise is
  // c2 tv <= c1; outside that regime the theorem makes no claim.
  if (constants.c2 * (tv - 3.0 * tv_stderr) > constants.c1_t + 1e-12) {
    upper.status = "out-of-regime";
  } else {
    upper.status =
        upper.lhs <= upper.rhs + 3.0 * upper.std_err + 1e-12 ? "pass" : "fail";
  }
  entries.push_back(upper);

  BoundEntry lower;
  lower.name = "tradeoff_lower_bound";
  lower.round = round;
  lower.client = client;
  lower.rhs = constants.c1_t;
  if (!constants.delta.has_value()) {
    lower.status = "out-of-regime";
  } else {
    // The no-free-lunch lower bound counts utility loss as degradation
    // (gap after protection minus gap before), the negation of the
    // convention used by the utility upper bound and by `upper` above.
    lower.lhs = eps_p - constants.c_d * eps_u.value;
    lower.std_err = constants.c_d * eps_u.std_err;
    lower.status = lower.lhs >= lower.rhs - 3.0 * lower.std_err - 1e-12
                       ? "pass"
                       : "fail";
  }
  entries.push_back(lower);

  // Distance from the condition under which the two bounds coincide.
  BoundEntry gap_entry;
  gap_entry.name = "optimality_gap";
  gap_entry.round = round;
  gap_entry.client = client;
  gap_entry.lhs = std::abs(constants.c1_t - weight * expected_cond_variance);
  gap_entry.rhs = 0.0;
  gap_entry.status = "pass";  // diagnostic, not an inequality
  entries.push_back(gap_entry);

  return entries;
}

ConstantsBlock estimate_assumption_constants(
    const std::vector<ReplicaGroup>& groups, const ParamVector& w_star,
    std::optional<double> c6_override) {
  if (groups.empty()) {
    throw std::invalid_argument("constants estimation needs history");
  }
  ConstantsBlock block;
  double max_norm = 0.0;
  double max_bias = 0.0;
  double max_ratio = 0.0;
  bool any_ratio = false;

  for (const ReplicaGroup& g : groups) {
    for (const auto* arm : {&g.unprotected, &g.protected_arm}) {
      for (const ParamVector& w : *arm) {
        max_norm = std::max(max_norm, w.norm());
      }
    }
    if (g.unprotected.empty()) continue;
    ParamVector mean(w_star.dim(), 0.0);
    for (const ParamVector& w : g.unprotected) mean += w;
    mean *= 1.0 / static_cast<double>(g.unprotected.size());
    const double bias = (mean - w_star).norm();
    max_bias = std::max(max_bias, bias);
    if (g.tv > 0.0) {
      max_ratio = std::max(max_ratio, bias / g.tv);
      any_ratio = true;
    } else if (bias > 1e-9) {
      block.c5_estimable = false;
    }
  }

  block.c3 = 1.1 * max_norm;
  block.c4 = 1.1 * max_bias;
  block.c5 = any_ratio ? 1.1 * max_ratio : 0.0;
  block.c6 = c6_override.value_or(2.0 * block.c3 * block.c3 +
                                  block.c3 * block.c4 +
                                  2.0 * block.c4 * block.c5);
  return block;
}

}  // namespace flsim
