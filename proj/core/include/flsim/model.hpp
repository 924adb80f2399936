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

#ifndef FLSIM_MODEL_HPP_
#define FLSIM_MODEL_HPP_

#include <vector>

#include "flsim/param_vector.hpp"
#include "flsim/types.hpp"

namespace flsim {

/// Linear model with squared-error loss. The quadratic surrogate
/// gap_constant * ||w - w_star||^2 upper-bounds the per-point loss when
/// features lie inside a ball of squared radius gap_constant.
struct LinearModel {
  std::size_t dim = 1;
  double gap_constant = 1.0;  // must stay > 0
};

/// Squared residual (x . w - y)^2.
double loss(const ParamVector& w, const DataPoint& point);

/// Gradient of the squared residual: 2 (x . w - y) x.
ParamVector gradient(const ParamVector& w, const DataPoint& point);

/// Quadratic distance surrogate C * ||w - w_star||^2.
double gap(const ParamVector& w, const ParamVector& w_star, double c);

struct OptimumResult {
  ParamVector w_star;
  bool rank_deficient = false;  // minimum-norm solution returned when true
};

/// Pooled least-squares minimizer over all points. Rank-deficient designs
/// yield the minimum-norm solution with a degeneracy flag.
OptimumResult solve_optimum(const std::vector<DataPoint>& all_points);

/// True iff the surrogate dominates the per-point loss at realizable labels
/// (labels replaced by x . w_star) for every point, up to 1e-9 slack.
/// Requires features with squared norm at most c for the guarantee to hold.
bool check_gap_dominates_loss(const ParamVector& w, const ParamVector& w_star,
                              const std::vector<DataPoint>& points, double c);

/// Mean loss over a pooled dataset.
double pooled_loss(const ParamVector& w, const std::vector<DataPoint>& points);

/// Gradient of the mean pooled loss.
ParamVector pooled_gradient(const ParamVector& w,
                            const std::vector<DataPoint>& points);

}  // namespace flsim

#endif  // FLSIM_MODEL_HPP_
