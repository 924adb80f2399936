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

#include "flsim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flsim/sampling.hpp"

namespace flsim {

namespace {

// Log density of an isotropic Gaussian, up to the dimension-dependent
// constant, which cancels in every ratio taken here.
double log_gaussian(const ParamVector& x, const ParamVector& mean,
                    double variance) {
  const double sq = (x - mean).squared_norm();
  return -0.5 * sq / variance -
         0.5 * static_cast<double>(x.dim()) * std::log(variance);
}

}  // namespace

PosteriorResult posterior(const CandidateUniverse& universe,
                          const LikelihoodModel& lik,
                          const ParamVector& observed_w,
                          const ParamVector& w_prev, double p,
                          double extra_variance) {
  if (universe.candidates.size() < 2) {
    throw std::invalid_argument("universe needs at least two candidates");
  }
  if (lik.variance <= 0.0) {
    throw std::invalid_argument("likelihood variance must be positive");
  }
  const double channel_var = lik.variance + extra_variance;
  const std::size_t n = universe.candidates.size();

  std::vector<double> log_post(n);
  double max_lp = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    const double prior_mass = universe.prior.mass(static_cast<int>(c));
    if (prior_mass <= 0.0) {
      log_post[c] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const ParamVector center =
        expected_update(w_prev, universe.candidates[c], p,
                        ParamVector(w_prev.dim(), 0.0));
    log_post[c] =
        std::log(prior_mass) + log_gaussian(observed_w, center, channel_var);
    max_lp = std::max(max_lp, log_post[c]);
  }

  PosteriorResult result;
  if (!std::isfinite(max_lp)) {
    result.degenerate = true;
    result.belief = DiscreteDist::from_weights(std::vector<double>(n, 1.0));
    return result;
  }
  std::vector<double> weights(n);
  for (std::size_t c = 0; c < n; ++c) {
    weights[c] = std::isfinite(log_post[c]) ? std::exp(log_post[c] - max_lp)
                                            : 0.0;
  }
  result.belief = DiscreteDist::from_weights(weights);
  return result;
}

double compute_xi(const CandidateUniverse& universe, const LikelihoodModel& lik,
                  const std::vector<ParamVector>& param_grid,
                  const ParamVector& w_prev, double p) {
  if (param_grid.empty()) {
    throw std::invalid_argument("compute_xi needs a nonempty parameter grid");
  }
  const std::size_t n_cand = universe.candidates.size();
  const std::size_t n_grid = param_grid.size();

  // log f(d | w) for every grid parameter and candidate.
  std::vector<std::vector<double>> log_lik(n_grid, std::vector<double>(n_cand));
  for (std::size_t g = 0; g < n_grid; ++g) {
    for (std::size_t c = 0; c < n_cand; ++c) {
      const ParamVector center =
          expected_update(w_prev, universe.candidates[c], p,
                          ParamVector(w_prev.dim(), 0.0));
      log_lik[g][c] = log_gaussian(param_grid[g], center, lik.variance);
    }
  }

  double xi = 0.0;
  for (std::size_t c = 0; c < n_cand; ++c) {
    // Grid marginal: uniform average of f(d | w') over the grid.
    double max_l = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < n_grid; ++g) {
      max_l = std::max(max_l, log_lik[g][c]);
    }
    double sum = 0.0;
    for (std::size_t g = 0; g < n_grid; ++g) {
      sum += std::exp(log_lik[g][c] - max_l);
    }
    const double log_marginal =
        max_l + std::log(sum / static_cast<double>(n_grid));
    for (std::size_t g = 0; g < n_grid; ++g) {
      xi = std::max(xi, std::abs(log_lik[g][c] - log_marginal));
    }
  }
  return xi;
}

double privacy_leakage(const DiscreteDist& f_tilde, const DiscreteDist& f) {
  return std::sqrt(js_discrete(f_tilde, f));
}

LeakageBounds leakage_bounds(const DiscreteDist& f_tilde,
                             const DiscreteDist& f,
                             const DiscreteDist& f_prior, double tv_pw,
                             double tv_stderr, double xi) {
  LeakageBounds bounds;
  bounds.c1 = std::sqrt(js_discrete(f, f_prior));
  bounds.c2 = 0.5 * (std::exp(2.0 * xi) - 1.0);
  bounds.measured = std::sqrt(js_discrete(f_tilde, f_prior));
  bounds.lower = bounds.c1 - bounds.c2 * tv_pw;
  bounds.upper = 2.0 * bounds.c1 - bounds.c2 * tv_pw;
  bounds.std_err = bounds.c2 * tv_stderr;

  if (bounds.c2 * tv_pw > bounds.c1) {
    bounds.status = "out-of-regime";
    return bounds;
  }
  const double slack = 3.0 * bounds.std_err + 1e-12;
  bounds.status = (bounds.measured >= bounds.lower - slack &&
                   bounds.measured <= bounds.upper + slack)
                      ? "pass"
                      : "fail";
  return bounds;
}

}  // namespace flsim
