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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "flsim/metrics.hpp"
#include "flsim/model.hpp"
#include "flsim/rng.hpp"

namespace {

using flsim::BoundEntry;
using flsim::ConstantsBlock;
using flsim::ParamVector;
using flsim::RandomStream;
using flsim::UtilityLossEstimate;

std::vector<ParamVector> random_cloud(std::size_t n, std::size_t d,
                                      RandomStream& s, double spread = 1.0,
                                      double offset = 0.0) {
  std::vector<ParamVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    ParamVector w(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) w[j] = offset + spread * s.normal();
    out.push_back(w);
  }
  return out;
}

TEST_CASE("bias-variance identity holds exactly on random clouds") {
  RandomStream s(501);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(s.uniform() * 6.0);
    const std::size_t n = 2 + static_cast<std::size_t>(s.uniform() * 40.0);
    ParamVector w_star(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) w_star[j] = s.normal();
    const auto cloud = random_cloud(n, d, s, 0.5 + s.uniform(), s.normal());
    const flsim::BiasVariance bv =
        flsim::bias_variance_decomposition(cloud, w_star);
    const double scale = std::max(1.0, bv.gap);
    CHECK(std::abs(bv.gap - (bv.variance + bv.bias_sq)) <= 1e-10 * scale);
    CHECK(bv.variance >= 0.0);
    CHECK(bv.bias_sq >= 0.0);
  }
}

TEST_CASE("bias-variance handles a pure point mass") {
  const ParamVector w_star({0.0, 0.0});
  const std::vector<ParamVector> cloud(5, ParamVector({3.0, 4.0}));
  const flsim::BiasVariance bv =
      flsim::bias_variance_decomposition(cloud, w_star);
  CHECK(bv.variance == doctest::Approx(0.0));
  CHECK(bv.bias_sq == doctest::Approx(25.0));
  CHECK(bv.gap == doctest::Approx(25.0));
  CHECK_THROWS(flsim::bias_variance_decomposition(
      std::vector<ParamVector>{ParamVector({1.0})}, ParamVector({0.0})));
}

TEST_CASE("utility loss is the difference of mean gaps") {
  const ParamVector w_star({0.0});
  const std::vector<ParamVector> unprotected = {ParamVector({1.0}),
                                                ParamVector({-1.0})};
  const std::vector<ParamVector> protected_arm = {ParamVector({2.0}),
                                                  ParamVector({0.0})};
  // gaps: unprotected {1, 1} mean 1; protected {4, 0} mean 2 (C = 1).
  const UtilityLossEstimate est =
      flsim::utility_loss(unprotected, protected_arm, w_star, 1.0);
  CHECK(est.value == doctest::Approx(-1.0));
  // stderr^2 = var_u/2 + var_p/2 = 0 + 8/2.
  CHECK(est.std_err == doctest::Approx(2.0));
  CHECK_THROWS(flsim::utility_loss({ParamVector({1.0})}, protected_arm, w_star,
                                   1.0));
}

TEST_CASE("utility upper bound verdicts") {
  UtilityLossEstimate eps_u;
  eps_u.value = -0.5;
  eps_u.std_err = 0.01;
  SUBCASE("clear pass") {
    const BoundEntry e =
        flsim::check_utility_upper_bound(eps_u, 0.6, 0.2, 0.001, 1.0, 3, 1);
    CHECK(e.name == "utility_upper_bound");
    CHECK(e.round == 3);
    CHECK(e.client == 1);
    CHECK(e.lhs == doctest::Approx(-0.5));
    CHECK(e.rhs == doctest::Approx(-0.4));
    CHECK(e.status == "pass");
  }
  SUBCASE("clear fail") {
    const BoundEntry e =
        flsim::check_utility_upper_bound(eps_u, 1.0, 0.0, 0.0, 1.0, 0, 0);
    CHECK(e.rhs == doctest::Approx(-1.0));
    CHECK(e.status == "fail");
  }
  SUBCASE("three-sigma slack rescues a borderline case") {
    // lhs exceeds rhs by one stderr only.
    const BoundEntry e = flsim::check_utility_upper_bound(
        eps_u, 0.5 + eps_u.std_err, 0.0, 0.0, 1.0, 0, 0);
    CHECK(e.lhs > e.rhs);
    CHECK(e.status == "pass");
  }
}

ConstantsBlock tradeoff_constants() {
  ConstantsBlock c;
  c.c1_t = 0.2;
  c.c2 = 0.5;
  c.c6 = 2.0;
  c.c_d = 0.25;
  c.delta = 0.5;
  return c;
}

TEST_CASE("tradeoff bounds: statuses and arithmetic") {
  // Utility-bound convention: negative value means protection degraded the
  // trained model, so the no-free-lunch degradation is -value = +0.1.
  UtilityLossEstimate eps_u;
  eps_u.value = -0.1;
  eps_u.std_err = 0.001;
  const ConstantsBlock c = tradeoff_constants();
  const double weight = c.c2 / c.c6;  // 0.25

  SUBCASE("in regime, both sides pass") {
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, eps_u, 0.3, 0.1, 0.0, c, 2, 0);
    REQUIRE(entries.size() == 3);
    const BoundEntry& upper = entries[0];
    CHECK(upper.name == "tradeoff_upper_bound");
    CHECK(upper.lhs == doctest::Approx(0.2 - weight * 0.1));
    CHECK(upper.rhs == doctest::Approx(-weight * 0.3 + 2.0 * c.c1_t));
    CHECK(upper.status == "pass");

    const BoundEntry& lower = entries[1];
    CHECK(lower.name == "tradeoff_lower_bound");
    CHECK(lower.lhs == doctest::Approx(0.2 + c.c_d * 0.1));
    CHECK(lower.rhs == doctest::Approx(c.c1_t));
    CHECK(lower.status == "pass");

    const BoundEntry& diag = entries[2];
    CHECK(diag.name == "optimality_gap");
    CHECK(diag.lhs == doctest::Approx(std::abs(c.c1_t - weight * 0.3)));
    CHECK(diag.status == "pass");
  }
  SUBCASE("upper bound fails when the utility term is too large") {
    UtilityLossEstimate big = eps_u;
    big.value = 10.0;
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, big, 0.0, 0.1, 0.0, c, 0, 0);
    CHECK(entries[0].status == "fail");
  }
  SUBCASE("upper bound out of regime when c2 tv exceeds c1") {
    // c2 (tv - 3 se) = 0.5 * 0.9 = 0.45 > c1 = 0.2.
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, eps_u, 0.3, 0.9, 0.0, c, 0, 0);
    CHECK(entries[0].status == "out-of-regime");
  }
  SUBCASE("tv stderr can pull the premise back into regime") {
    // tv = 0.9 but se = 0.2: c2 (0.9 - 0.6) = 0.15 <= 0.2.
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, eps_u, 0.3, 0.9, 0.2, c, 0, 0);
    CHECK(entries[0].status != "out-of-regime");
  }
  SUBCASE("lower bound fails when the weighted sum dips below the pivot") {
    // A large positive value means protection improved utility, so the
    // degradation term is a large negative contribution on the left.
    UtilityLossEstimate improved = eps_u;
    improved.value = 10.0;
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, improved, 0.3, 0.1, 0.0, c, 0, 0);
    CHECK(entries[1].status == "fail");
  }
  SUBCASE("lower bound is out of regime without a configured delta") {
    ConstantsBlock no_delta = c;
    no_delta.delta.reset();
    const auto entries =
        flsim::check_tradeoff_bounds(0.2, eps_u, 0.3, 0.1, 0.0, no_delta, 0, 0);
    CHECK(entries[1].status == "out-of-regime");
  }
}

TEST_CASE("assumption constants from replica groups") {
  flsim::ReplicaGroup g;
  g.unprotected = {ParamVector({3.0, 0.0}), ParamVector({1.0, 0.0})};
  g.protected_arm = {ParamVector({0.0, 5.0})};
  g.tv = 0.5;
  const ParamVector w_star({1.0, 0.0});
  const ConstantsBlock block =
      flsim::estimate_assumption_constants({g}, w_star);
  // Largest norm is the protected replica (5); bias of the unprotected mean
  // (2,0) to w_star is 1; ratio 1 / 0.5 = 2. All carry the 1.1 margin.
  CHECK(block.c3 == doctest::Approx(5.5));
  CHECK(block.c4 == doctest::Approx(1.1));
  CHECK(block.c5 == doctest::Approx(2.2));
  CHECK(block.c5_estimable);
  CHECK(block.c6 == doctest::Approx(2.0 * 5.5 * 5.5 + 5.5 * 1.1 +
                                    2.0 * 1.1 * 2.2));

  SUBCASE("override wins") {
    const ConstantsBlock forced =
        flsim::estimate_assumption_constants({g}, w_star, 42.0);
    CHECK(forced.c6 == doctest::Approx(42.0));
    CHECK(forced.c3 == doctest::Approx(5.5));
  }
  SUBCASE("zero TV with visible bias marks c5 non-estimable") {
    flsim::ReplicaGroup z = g;
    z.tv = 0.0;
    const ConstantsBlock b = flsim::estimate_assumption_constants({z}, w_star);
    CHECK_FALSE(b.c5_estimable);
    CHECK(b.c5 == doctest::Approx(0.0));
  }
  CHECK_THROWS(flsim::estimate_assumption_constants({}, w_star));
}

}  // namespace
