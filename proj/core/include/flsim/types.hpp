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

#ifndef FLSIM_TYPES_HPP_
#define FLSIM_TYPES_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flsim/param_vector.hpp"

namespace flsim {

/// One labelled observation.
struct DataPoint {
  ParamVector feature;
  double label = 0.0;
};

/// One client's local dataset plus its per-round sampling probability.
class ClientShard {
 public:
  ClientShard(std::vector<DataPoint> points, double sample_prob)
      : points_(std::move(points)), sample_prob_(sample_prob) {
    if (points_.empty()) throw std::invalid_argument("shard must be nonempty");
    if (sample_prob_ < 0.0 || sample_prob_ > 1.0) {
      throw std::invalid_argument("sample probability must lie in [0, 1]");
    }
    const std::size_t d = points_.front().feature.dim();
    for (const DataPoint& pt : points_) {
      if (pt.feature.dim() != d) {
        throw std::invalid_argument("shard features must share one dimension");
      }
    }
  }

  const std::vector<DataPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.front().feature.dim(); }

  double sample_prob() const { return sample_prob_; }
  void set_sample_prob(double p) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("sample probability must lie in [0, 1]");
    }
    sample_prob_ = p;
  }

 private:
  std::vector<DataPoint> points_;
  double sample_prob_;
};

/// Per-round, per-client log of the protection pipeline. The distorted
/// parameter minus the local parameter equals the logged noise elementwise.
struct RoundRecord {
  int round = 0;
  int client = 0;
  ParamVector w_before;
  ParamVector w_local;
  ParamVector w_distorted;
  std::vector<std::size_t> sampled_indices;
  ParamVector noise;
  double noise_var = 0.0;
};

}  // namespace flsim

#endif  // FLSIM_TYPES_HPP_
