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

#ifndef FLSIM_ADVERSARY_HPP_
#define FLSIM_ADVERSARY_HPP_

#include <string>
#include <vector>

#include "flsim/divergence.hpp"
#include "flsim/param_vector.hpp"
#include "flsim/types.hpp"

namespace flsim {

/// Finite hypothesis space for a Bayesian observer of uploaded parameters:
/// a small set of candidate datasets plus a prior over them.
struct CandidateUniverse {
  std::vector<ClientShard> candidates;
  DiscreteDist prior;
};

/// Gaussian observation channel for the uploaded parameter: the adversary
/// scores each candidate by the isotropic Gaussian density of the observed
/// parameter around that candidate's expected update.
struct LikelihoodModel {
  double variance = 1.0;  // per coordinate, must stay > 0
};

struct PosteriorResult {
  DiscreteDist belief;
  bool degenerate = false;  // all likelihoods underflowed, uniform fallback
};

/// Exact Bayes posterior over the candidate datasets given one observed
/// parameter. `extra_variance` is added to the channel variance when the
/// observation went through the noise channel. Computed in log space.
PosteriorResult posterior(const CandidateUniverse& universe,
                          const LikelihoodModel& lik,
                          const ParamVector& observed_w,
                          const ParamVector& w_prev, double p,
                          double extra_variance = 0.0);

/// Worst-case absolute log ratio between the conditional density of a
/// candidate given a parameter and its grid-marginal density:
/// max over (w, candidate) of |ln f(d|w) / f(d)| with f(d) the uniform
/// grid average of f(d|w').
double compute_xi(const CandidateUniverse& universe, const LikelihoodModel& lik,
                  const std::vector<ParamVector>& param_grid,
                  const ParamVector& w_prev, double p);

/// sqrt of the Jensen-Shannon divergence between the beliefs induced by the
/// protected and unprotected observations.
double privacy_leakage(const DiscreteDist& f_tilde, const DiscreteDist& f);

struct LeakageBounds {
  double lower = 0.0;
  double measured = 0.0;
  double upper = 0.0;
  double std_err = 0.0;
  std::string status;  // "pass", "fail" or "out-of-regime"
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Sandwich on the prior-referenced leakage sqrt(JS(f_tilde || f_prior)):
/// c1 - c2 tv <= measured <= 2 c1 - c2 tv, with c1 = sqrt(JS(f || f_prior))
/// and c2 = (e^{2 xi} - 1) / 2. Out of regime when c2 tv > c1.
LeakageBounds leakage_bounds(const DiscreteDist& f_tilde,
                             const DiscreteDist& f,
                             const DiscreteDist& f_prior, double tv_pw,
                             double tv_stderr, double xi);

}  // namespace flsim

#endif  // FLSIM_ADVERSARY_HPP_
