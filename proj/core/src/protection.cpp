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

#include "flsim/protection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flsim {

DistortResult distort(const ParamVector& w, const NoiseSpec& spec,
                      RandomStream& stream) {
  if (spec.variance < 0.0) {
    throw std::invalid_argument("noise variance must be nonnegative");
  }
  const double stddev = std::sqrt(spec.variance);
  ParamVector noise(w.dim(), 0.0);
  if (spec.variance > 0.0) {
    for (std::size_t i = 0; i < w.dim(); ++i) {
      noise[i] = stream.normal(0.0, stddev);
    }
  }
  return DistortResult{w + noise, noise};
}

NoiseCalibration calibrate_noise_variance(double sigma_sq_model, std::size_t d,
                                          double budget_gap) {
  if (sigma_sq_model < 0.0) {
    throw std::invalid_argument("model parameter variance must be nonnegative");
  }
  if (d == 0) throw std::invalid_argument("dimension must be positive");

  NoiseCalibration cal;
  if (budget_gap <= 0.0) {
    cal.budget_satisfied = true;
    return cal;
  }
  if (budget_gap >= 0.01) cal.out_of_regime = true;

  const double var =
      100.0 * sigma_sq_model * budget_gap / std::sqrt(static_cast<double>(d));
  // Avoid injecting denormals when the dimension is huge.
  if (var > 0.0 && var < std::numeric_limits<double>::min()) {
    cal.variance = 0.0;
    cal.budget_satisfied = false;
    cal.out_of_regime = true;
    return cal;
  }
  cal.variance = var;
  return cal;
}

double estimate_model_param_variance(const std::vector<ParamVector>& replicas) {
  if (replicas.size() < 2) {
    throw std::invalid_argument("variance estimation needs >= 2 replicas");
  }
  const std::size_t d = replicas.front().dim();
  const double n = static_cast<double>(replicas.size());

  ParamVector mean(d, 0.0);
  for (const ParamVector& w : replicas) mean += w;
  mean *= 1.0 / n;

  double total = 0.0;
  for (const ParamVector& w : replicas) {
    total += (w - mean).squared_norm();
  }
  // Unbiased per-coordinate variance, averaged over coordinates.
  return total / ((n - 1.0) * static_cast<double>(d));
}

double estimate_model_param_variance(const std::vector<RoundRecord>& records,
                                     int client) {
  std::vector<ParamVector> replicas;
  for (const RoundRecord& rec : records) {
    if (rec.client == client) replicas.push_back(rec.w_local);
  }
  return estimate_model_param_variance(replicas);
}

}  // namespace flsim
