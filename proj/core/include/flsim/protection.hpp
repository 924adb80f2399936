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

#ifndef FLSIM_PROTECTION_HPP_
#define FLSIM_PROTECTION_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "flsim/param_vector.hpp"
#include "flsim/rng.hpp"
#include "flsim/types.hpp"

namespace flsim {

/// Isotropic Gaussian noise: one shared per-coordinate variance.
struct NoiseSpec {
  double variance = 0.0;  // must stay >= 0
  std::size_t dim = 1;
};

struct DistortResult {
  ParamVector distorted;
  ParamVector noise;
};

/// Adds independent N(0, variance) noise to each coordinate. The drawn noise
/// is returned alongside for logging.
DistortResult distort(const ParamVector& w, const NoiseSpec& spec,
                      RandomStream& stream);

struct NoiseCalibration {
  double variance = 0.0;
  bool budget_satisfied = false;  // budget gap <= 0, no noise required
  bool out_of_regime = false;     // budget gap >= 0.01, bound may clip
};

/// Noise variance meeting a total-variation target:
/// 100 * sigma_sq_model * budget_gap / sqrt(d). Valid for budget gaps in
/// (0, 0.01); outside that range the flags report why the value is nominal.
NoiseCalibration calibrate_noise_variance(double sigma_sq_model, std::size_t d,
                                          double budget_gap);

/// Mean per-coordinate unbiased sample variance of a set of replica
/// parameters. Needs at least two replicas.
double estimate_model_param_variance(const std::vector<ParamVector>& replicas);

/// Convenience overload over round records of one client.
double estimate_model_param_variance(const std::vector<RoundRecord>& records,
                                     int client);

}  // namespace flsim

#endif  // FLSIM_PROTECTION_HPP_
