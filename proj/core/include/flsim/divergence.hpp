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

#ifndef FLSIM_DIVERGENCE_HPP_
#define FLSIM_DIVERGENCE_HPP_

#include <map>
#include <string>
#include <vector>

#include "flsim/param_vector.hpp"
#include "flsim/rng.hpp"

namespace flsim {

/// Normalized probability mass function over a finite outcome set.
/// Outcomes missing from the map carry mass zero.
class DiscreteDist {
 public:
  DiscreteDist() = default;
  explicit DiscreteDist(std::map<int, double> masses);

  /// Builds from raw nonnegative weights, normalizing to total mass one.
  static DiscreteDist from_weights(const std::vector<double>& weights);

  double mass(int outcome) const;
  const std::map<int, double>& masses() const { return masses_; }

  /// Union of the outcome sets of two distributions.
  static std::vector<int> shared_support(const DiscreteDist& a,
                                         const DiscreteDist& b);

 private:
  std::map<int, double> masses_;
};

/// Isotropic Gaussian on R^d.
struct GaussianDist {
  ParamVector mean;
  double variance = 1.0;  // per coordinate, must stay > 0
};

/// Total variation distance (1/2) sum |a_i - b_i|, in [0, 1].
double tv_discrete(const DiscreteDist& a, const DiscreteDist& b);

/// Total variation between two one-dimensional Gaussians. Equal variances
/// use the closed form 2 Phi(|mu_a - mu_b| / (2 sigma)) - 1; unequal
/// variances use adaptive numeric integration to 1e-6 absolute tolerance.
double tv_gaussian_1d(const GaussianDist& a, const GaussianDist& b);

struct TvEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

/// Histogram total-variation estimate between two samples on a shared
/// binning, with bootstrap standard error (100 resamples) and a pooled-null
/// bias correction that removes the finite-sample bin-noise inflation.
/// Dimensions up to 3 use per-coordinate product bins; higher dimensions use
/// 32 random one-dimensional projections and report the maximum projected
/// TV, which lower-bounds the true TV.
TvEstimate tv_monte_carlo(const std::vector<ParamVector>& sample_a,
                          const std::vector<ParamVector>& sample_b, int bins,
                          RandomStream& stream);

struct KlResult {
  double value = 0.0;
  bool infinite = false;  // a puts mass where b does not
};

/// KL divergence sum a_i ln(a_i / b_i) in nats, with 0 ln 0 := 0.
KlResult kl_discrete(const DiscreteDist& a, const DiscreteDist& b);

/// Jensen-Shannon divergence in nats; always finite, in [0, ln 2].
double js_discrete(const DiscreteDist& a, const DiscreteDist& b);

/// True iff sqrt(JS(a,c)) <= sqrt(JS(a,b)) + sqrt(JS(b,c)) + 1e-12.
bool check_sqrt_js_triangle(const DiscreteDist& a, const DiscreteDist& b,
                            const DiscreteDist& c);

struct InequalityEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double std_err = 0.0;
  std::string status;  // "pass", "fail" or "out-of-regime"
};

/// Checks JS(f_tilde || f) <= (1/4) (e^{2 xi} - 1)^2 tv_pw^2 with the given
/// Monte Carlo error budget on the TV estimate.
InequalityEntry check_js_tv_bound(const DiscreteDist& f_tilde,
                                  const DiscreteDist& f, double tv_pw,
                                  double tv_stderr, double xi);

}  // namespace flsim

#endif  // FLSIM_DIVERGENCE_HPP_
