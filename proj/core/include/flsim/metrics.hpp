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

#ifndef FLSIM_METRICS_HPP_
#define FLSIM_METRICS_HPP_

#include <optional>
#include <vector>

#include "flsim/param_vector.hpp"
#include "flsim/report.hpp"

namespace flsim {

struct UtilityLossEstimate {
  double value = 0.0;
  double std_err = 0.0;
};

/// Mean over replicas of GAP(unprotected) - GAP(protected). Positive values
/// mean protection moved the parameter closer to the optimum; the negated
/// "degradation" view is this value times -1.
UtilityLossEstimate utility_loss(const std::vector<ParamVector>& unprotected,
                                 const std::vector<ParamVector>& protected_arm,
                                 const ParamVector& w_star, double gap_constant);

struct BiasVariance {
  double gap = 0.0;       // mean squared distance to w_star
  double variance = 0.0;  // trace of the empirical covariance
  double bias_sq = 0.0;   // squared distance of the mean to w_star
};

/// Population-normalized decomposition; gap == variance + bias_sq holds as
/// an algebraic identity of the empirical measure.
BiasVariance bias_variance_decomposition(const std::vector<ParamVector>& replicas,
                                         const ParamVector& w_star);

/// Utility-loss upper bound: eps_u <= -E(Var[protected | previous]) + c6 TV.
BoundEntry check_utility_upper_bound(const UtilityLossEstimate& eps_u,
                                     double expected_cond_variance, double tv,
                                     double tv_stderr, double c6, int round,
                                     int client);

/// Trade-off bound entries. `eps_p` and `constants.c1_t` are the
/// prior-referenced leakages sqrt(JS(protected belief || prior)) and
/// sqrt(JS(unprotected belief || prior)); `eps_u` uses the utility-bound
/// convention (negative when protection hurts). Emits the weighted upper
/// bound (out-of-regime when the leakage-lemma premise c2 tv <= c1 fails),
/// the no-free-lunch lower bound (degradation convention; out-of-regime
/// when delta is unset) and the optimality-gap diagnostic.
std::vector<BoundEntry> check_tradeoff_bounds(double eps_p,
                                              const UtilityLossEstimate& eps_u,
                                              double expected_cond_variance,
                                              double tv, double tv_stderr,
                                              const ConstantsBlock& constants,
                                              int round, int client);

/// Replica data for one (round, client) cell, both arms, plus the TV
/// estimate between them.
struct ReplicaGroup {
  std::vector<ParamVector> unprotected;
  std::vector<ParamVector> protected_arm;
  double tv = 0.0;
  double tv_stderr = 0.0;
};

/// Empirical estimates of the norm / bias / bias-to-TV constants with a 1.1
/// safety margin, and the derived utility-bound constant
/// c6 = 2 c3^2 + c3 c4 + 2 c4 c5 unless overridden.
ConstantsBlock estimate_assumption_constants(
    const std::vector<ReplicaGroup>& groups, const ParamVector& w_star,
    std::optional<double> c6_override = std::nullopt);

}  // namespace flsim

#endif  // FLSIM_METRICS_HPP_
