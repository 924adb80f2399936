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
#include <map>
#include <vector>

#include "doctest.h"
#include "flsim/divergence.hpp"
#include "flsim/rng.hpp"

namespace {

using flsim::DiscreteDist;
using flsim::GaussianDist;
using flsim::ParamVector;
using flsim::RandomStream;

DiscreteDist dist(std::map<int, double> masses) {
  return DiscreteDist(std::move(masses));
}

std::vector<ParamVector> gaussian_sample(double mean, double stddev, int n,
                                         RandomStream& s) {
  std::vector<ParamVector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(ParamVector({mean + stddev * s.normal()}));
  }
  return out;
}

TEST_CASE("discrete distribution validates total mass") {
  CHECK_THROWS(dist({{0, 0.5}, {1, 0.4}}));
  CHECK_THROWS(dist({{0, -0.1}, {1, 1.1}}));
  const DiscreteDist d = DiscreteDist::from_weights({2.0, 6.0});
  CHECK(d.mass(0) == doctest::Approx(0.25));
  CHECK(d.mass(1) == doctest::Approx(0.75));
  CHECK(d.mass(7) == 0.0);
}

TEST_CASE("discrete TV examples") {
  const DiscreteDist a = dist({{0, 0.5}, {1, 0.5}});
  CHECK(flsim::tv_discrete(a, a) == doctest::Approx(0.0));
  const DiscreteDist b = dist({{0, 1.0}});
  CHECK(flsim::tv_discrete(a, b) == doctest::Approx(0.5));
  const DiscreteDist c = dist({{2, 1.0}});
  CHECK(flsim::tv_discrete(a, c) == doctest::Approx(1.0));
}

TEST_CASE("1d Gaussian TV closed form for equal variances") {
  const GaussianDist a{ParamVector({0.0}), 1.0};
  const GaussianDist b{ParamVector({0.5}), 1.0};
  // 2 Phi(0.25) - 1.
  const double expected = std::erf(0.25 / std::sqrt(2.0));
  CHECK(flsim::tv_gaussian_1d(a, b) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(flsim::tv_gaussian_1d(a, a) == doctest::Approx(0.0));
}

TEST_CASE("1d Gaussian TV with unequal variances integrates numerically") {
  const GaussianDist a{ParamVector({0.0}), 1.0};
  const GaussianDist b{ParamVector({0.0}), 2.0};
  // Crossing points at x^2 = 2 ln 2 / (1 - 1/2) -> |x| = 1.6651...
  // Reference value computed by high-resolution quadrature.
  const double got = flsim::tv_gaussian_1d(a, b);
  double ref = 0.0;
  const int kSteps = 2000000;
  const double lo = -12.0;
  const double hi = 12.0;
  const double h = (hi - lo) / kSteps;
  for (int i = 0; i < kSteps; ++i) {
    const double x = lo + (i + 0.5) * h;
    const double fa = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double fb =
        std::exp(-0.25 * x * x) / std::sqrt(2.0 * M_PI * 2.0);
    ref += std::abs(fa - fb) * h;
  }
  ref *= 0.5;
  CHECK(got == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("monte carlo TV reproduces the shifted-Gaussian reference") {
  RandomStream data(404);
  const auto a = gaussian_sample(0.0, 1.0, 100000, data);
  const auto b = gaussian_sample(0.5, 1.0, 100000, data);
  RandomStream oracle(405);
  const flsim::TvEstimate tv = flsim::tv_monte_carlo(a, b, 64, oracle);
  CHECK(std::abs(tv.estimate - 0.197) < 0.01);
  CHECK(tv.std_err > 0.0);
  CHECK(tv.std_err < 0.01);
}

TEST_CASE("monte carlo TV vanishes on identically distributed samples") {
  RandomStream data(406);
  const auto a = gaussian_sample(2.0, 0.7, 50000, data);
  const auto b = gaussian_sample(2.0, 0.7, 50000, data);
  RandomStream oracle(407);
  const flsim::TvEstimate tv = flsim::tv_monte_carlo(a, b, 64, oracle);
  CHECK(tv.estimate < 3.0 * tv.std_err + 0.01);
}

TEST_CASE("monte carlo TV approaches one for disjoint supports") {
  RandomStream data(408);
  const auto a = gaussian_sample(0.0, 0.1, 20000, data);
  const auto b = gaussian_sample(10.0, 0.1, 20000, data);
  RandomStream oracle(409);
  const flsim::TvEstimate tv = flsim::tv_monte_carlo(a, b, 32, oracle);
  CHECK(tv.estimate > 0.99);
}

TEST_CASE("monte carlo TV in higher dimension lower-bounds the truth") {
  // d = 8 goes through random projections; each projection of these two
  // spherical Gaussians is a mean shift of 0.5 / ||u|| >= ~0.
  RandomStream data(410);
  const int n = 30000;
  std::vector<ParamVector> a, b;
  for (int i = 0; i < n; ++i) {
    ParamVector xa(8, 0.0), xb(8, 0.0);
    for (std::size_t j = 0; j < 8; ++j) {
      xa[j] = data.normal();
      xb[j] = data.normal();
    }
    xb[0] += 2.0;
    a.push_back(xa);
    b.push_back(xb);
  }
  RandomStream oracle(411);
  const flsim::TvEstimate tv = flsim::tv_monte_carlo(a, b, 64, oracle);
  // True TV is erf(1/sqrt(2)) ~ 0.6827; projections can only lose mass.
  CHECK(tv.estimate > 0.2);
  CHECK(tv.estimate < 0.6827 + 3.0 * tv.std_err + 0.02);
}

TEST_CASE("KL handles zero masses and absolute continuity") {
  const DiscreteDist a = dist({{0, 0.5}, {1, 0.5}});
  const DiscreteDist b = dist({{0, 0.25}, {1, 0.75}});
  const flsim::KlResult kl = flsim::kl_discrete(a, b);
  CHECK_FALSE(kl.infinite);
  CHECK(kl.value ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)));

  const DiscreteDist c = dist({{0, 1.0}});
  CHECK(flsim::kl_discrete(c, a).value == doctest::Approx(std::log(2.0)));
  CHECK(flsim::kl_discrete(a, c).infinite);
}

TEST_CASE("JS is symmetric, finite and bounded by ln 2") {
  const DiscreteDist a = dist({{0, 1.0}});
  const DiscreteDist b = dist({{1, 1.0}});
  CHECK(flsim::js_discrete(a, b) == doctest::Approx(std::log(2.0)));
  RandomStream s(11);
  for (int trial = 0; trial < 200; ++trial) {
    double wa[3], wb[3];
    for (int i = 0; i < 3; ++i) {
      wa[i] = s.uniform() + 1e-3;
      wb[i] = s.uniform() + 1e-3;
    }
    const DiscreteDist pa = DiscreteDist::from_weights({wa[0], wa[1], wa[2]});
    const DiscreteDist pb = DiscreteDist::from_weights({wb[0], wb[1], wb[2]});
    const double js = flsim::js_discrete(pa, pb);
    CHECK(js >= 0.0);
    CHECK(js <= std::log(2.0) + 1e-12);
    CHECK(js == doctest::Approx(flsim::js_discrete(pb, pa)));
  }
}

TEST_CASE("sqrt JS satisfies the triangle inequality on random triples") {
  RandomStream s(12);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> wa(6), wb(6), wc(6);
    for (int i = 0; i < 6; ++i) {
      wa[i] = s.uniform() + 1e-6;
      wb[i] = s.uniform() + 1e-6;
      wc[i] = s.uniform() + 1e-6;
    }
    const DiscreteDist a = DiscreteDist::from_weights(wa);
    const DiscreteDist b = DiscreteDist::from_weights(wb);
    const DiscreteDist c = DiscreteDist::from_weights(wc);
    CHECK(flsim::check_sqrt_js_triangle(a, b, c));
  }
}

TEST_CASE("sqrt JS triangle boundary: middle point on the segment") {
  const DiscreteDist a = dist({{0, 1.0}});
  const DiscreteDist c = dist({{1, 1.0}});
  const DiscreteDist b = dist({{0, 0.5}, {1, 0.5}});
  CHECK(flsim::check_sqrt_js_triangle(a, b, c));
}

TEST_CASE("JS-TV bound entry reports sides and status") {
  const DiscreteDist f = dist({{0, 0.6}, {1, 0.4}});
  const DiscreteDist f_tilde = dist({{0, 0.55}, {1, 0.45}});
  const double xi = 1.0;
  const flsim::InequalityEntry e =
      flsim::check_js_tv_bound(f_tilde, f, 0.3, 0.01, xi);
  CHECK(e.lhs == doctest::Approx(flsim::js_discrete(f_tilde, f)));
  const double c = std::exp(2.0) - 1.0;
  CHECK(e.rhs == doctest::Approx(0.25 * c * c * 0.09));
  CHECK(e.status == "pass");

  // A tiny claimed TV cannot explain the divergence: must fail.
  const flsim::InequalityEntry bad =
      flsim::check_js_tv_bound(f_tilde, f, 1e-6, 0.0, 1e-6);
  CHECK(bad.status == "fail");
}

}  // namespace
