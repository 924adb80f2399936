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

#include "flsim/model.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace flsim {

double loss(const ParamVector& w, const DataPoint& point) {
  const double r = point.feature.dot(w) - point.label;
  return r * r;
}

ParamVector gradient(const ParamVector& w, const DataPoint& point) {
  const double r = point.feature.dot(w) - point.label;
  ParamVector g = point.feature;
  g *= 2.0 * r;
  return g;
}

double gap(const ParamVector& w, const ParamVector& w_star, double c) {
  if (c <= 0.0) throw std::invalid_argument("gap constant must be positive");
  ParamVector diff = w - w_star;
  return c * diff.squared_norm();
}

OptimumResult solve_optimum(const std::vector<DataPoint>& all_points) {
  if (all_points.empty()) {
    throw std::invalid_argument("solve_optimum needs at least one point");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(all_points.size());
  const Eigen::Index d = static_cast<Eigen::Index>(all_points[0].feature.dim());

  Eigen::MatrixXd design(n, d);
  Eigen::VectorXd labels(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DataPoint& pt = all_points[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < d; ++j) {
      design(i, j) = pt.feature[static_cast<std::size_t>(j)];
    }
    labels(i) = pt.label;
  }

  // Complete orthogonal decomposition gives the minimum-norm solution for
  // rank-deficient designs.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  Eigen::VectorXd sol = cod.solve(labels);

  OptimumResult result;
  result.rank_deficient = cod.rank() < d;
  std::vector<double> values(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    values[static_cast<std::size_t>(j)] = sol(j);
  }
  result.w_star = ParamVector(std::move(values));
  return result;
}

bool check_gap_dominates_loss(const ParamVector& w, const ParamVector& w_star,
                              const std::vector<DataPoint>& points, double c) {
  const double surrogate = gap(w, w_star, c);
  for (const DataPoint& pt : points) {
    DataPoint realizable{pt.feature, pt.feature.dot(w_star)};
    if (loss(w, realizable) > surrogate + 1e-9) return false;
  }
  return true;
}

double pooled_loss(const ParamVector& w, const std::vector<DataPoint>& points) {
  double total = 0.0;
  for (const DataPoint& pt : points) total += loss(w, pt);
  return total / static_cast<double>(points.size());
}

ParamVector pooled_gradient(const ParamVector& w,
                            const std::vector<DataPoint>& points) {
  ParamVector g(w.dim(), 0.0);
  for (const DataPoint& pt : points) g += gradient(w, pt);
  g *= 1.0 / static_cast<double>(points.size());
  return g;
}

}  // namespace flsim
