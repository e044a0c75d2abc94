// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIES_RNG_HPP_
#define PIES_RNG_HPP_

#include <cstdint>
#include <random>

namespace pies {

// Bumped whenever the sampling sequence for a given seed changes.
inline constexpr const char* kGeneratorVersion = "mt19937_64+splitmix64/v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream `tag` of a seed. Streams with distinct tags do not share
// state, so adding draws to one stream leaves the others untouched.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t tag) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~tag)));
}

}  // namespace pies

#endif  // PIES_RNG_HPP_
