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
#include "flsim/rng.hpp"

namespace {

using flsim::RandomStream;
using flsim::RngSeedTree;

TEST_CASE("uniform draws stay in [0, 1) and are reproducible") {
  RandomStream a(123);
  RandomStream b(123);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform());
  }
}

TEST_CASE("uniform histogram is flat: chi-squared over 16 cells") {
  RandomStream s(2024);
  const int kCells = 16;
  const int kDraws = 100000;
  std::vector<int> counts(kCells, 0);
  for (int i = 0; i < kDraws; ++i) {
    ++counts[static_cast<int>(s.uniform() * kCells)];
  }
  const double expected = static_cast<double>(kDraws) / kCells;
  double chi_sq = 0.0;
  for (int c : counts) {
    chi_sq += (c - expected) * (c - expected) / expected;
  }
  // 15 degrees of freedom; 99.9th percentile is ~37.7.
  CHECK(chi_sq < 37.7);
}

TEST_CASE("normal draws match standard moments") {
  RandomStream s(7);
  const int kDraws = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = s.normal();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  // Mean stderr ~ 1/sqrt(n) = 0.0022; variance stderr ~ sqrt(2/n) = 0.0032.
  CHECK(std::abs(mean) < 5.0 * 0.00224);
  CHECK(std::abs(var - 1.0) < 5.0 * 0.00317);
}

TEST_CASE("normal(mean, stddev) rescales the standard draw") {
  RandomStream a(99);
  RandomStream b(99);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.normal(3.0, 2.0) == doctest::Approx(3.0 + 2.0 * b.normal()));
  }
}

TEST_CASE("bernoulli(p) frequency tracks p") {
  RandomStream s(5);
  const int kDraws = 100000;
  int hits = 0;
  for (int i = 0; i < kDraws; ++i) {
    if (s.bernoulli(0.3)) ++hits;
  }
  const double freq = static_cast<double>(hits) / kDraws;
  const double se = std::sqrt(0.3 * 0.7 / kDraws);
  CHECK(std::abs(freq - 0.3) < 5.0 * se);
}

TEST_CASE("seed tree derivation is a pure function of the key") {
  RngSeedTree tree(42);
  RandomStream a = tree.derive_stream(3, 1, "sample");
  RandomStream b = tree.derive_stream(3, 1, "sample");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("seed tree separates rounds, clients and tags") {
  RngSeedTree tree(42);
  RandomStream base = tree.derive_stream(3, 1, "sample");
  const std::uint64_t first = base.next_u64();
  CHECK(tree.derive_stream(4, 1, "sample").next_u64() != first);
  CHECK(tree.derive_stream(3, 2, "sample").next_u64() != first);
  CHECK(tree.derive_stream(3, 1, "noise").next_u64() != first);
  CHECK(tree.derive_stream(3, 1, "oracle").next_u64() != first);
}

TEST_CASE("different master seeds give different streams") {
  CHECK(RngSeedTree(1).derive_stream(0, 0, "sample").next_u64() !=
        RngSeedTree(2).derive_stream(0, 0, "sample").next_u64());
}

TEST_CASE("unknown purpose tag is rejected") {
  RngSeedTree tree(1);
  CHECK_THROWS(tree.derive_stream(0, 0, "bogus"));
}

TEST_CASE("streams with adjacent keys are statistically independent") {
  // Correlation between paired draws from neighbouring keys.
  RngSeedTree tree(11);
  RandomStream a = tree.derive_stream(0, 0, "sample");
  RandomStream b = tree.derive_stream(0, 1, "sample");
  const int kDraws = 10000;
  double sum_ab = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    sum_ab += (a.uniform() - 0.5) * (b.uniform() - 0.5);
  }
  const double corr = sum_ab / kDraws / (1.0 / 12.0);
  CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(kDraws)));
}

}  // namespace
