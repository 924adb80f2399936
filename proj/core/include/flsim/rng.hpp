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

#ifndef FLSIM_RNG_HPP_
#define FLSIM_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace flsim {

/// A seeded random stream. Draw methods are stable across runs on the same
/// platform: normal() uses an explicit polar transform rather than
/// std::normal_distribution so the draw sequence is fully pinned down by the
/// engine state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1).
  double uniform() {
    // 53-bit mantissa, same construction as std::generate_canonical but
    // with a fixed bit budget.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw via Marsaglia's polar method.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * m;
    have_cached_ = true;
    return u * m;
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Derives independent, reproducible random streams keyed by
/// (round, client, purpose tag) from a single master seed. Derivation is a
/// pure function of the key, so streams can be created in any order and on
/// any thread without affecting the draws.
class RngSeedTree {
 public:
  explicit RngSeedTree(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const { return master_seed_; }

  /// tag must be one of "sample", "noise", "oracle".
  RandomStream derive_stream(std::int64_t round, std::int64_t client,
                             std::string_view tag) const;

 private:
  std::uint64_t master_seed_;
};

namespace detail {
std::uint64_t mix64(std::uint64_t x);
}  // namespace detail

}  // namespace flsim

#endif  // FLSIM_RNG_HPP_
