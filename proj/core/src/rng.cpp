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

#include "flsim/rng.hpp"

#include <stdexcept>
#include <string>

namespace flsim {
namespace detail {

// splitmix64 finalizer; good avalanche for key mixing.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

namespace {

std::uint64_t tag_code(std::string_view tag) {
  if (tag == "sample") return 1;
  if (tag == "noise") return 2;
  if (tag == "oracle") return 3;
  throw std::invalid_argument("unknown stream tag: " + std::string(tag));
}

}  // namespace

RandomStream RngSeedTree::derive_stream(std::int64_t round, std::int64_t client,
                                        std::string_view tag) const {
  std::uint64_t h = detail::mix64(master_seed_);
  h = detail::mix64(h ^ static_cast<std::uint64_t>(round));
  h = detail::mix64(h ^ static_cast<std::uint64_t>(client));
  h = detail::mix64(h ^ tag_code(tag));
  return RandomStream(h);
}

}  // namespace flsim
