// Copyright 2026 The blocknorm Authors.
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

/// \file
/// Deterministic random numbers.
///
/// Algorithms (fixed; changing any of them changes every simulated table):
///   * Seed mixing: SplitMix64 finalizer
///       z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///       z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///       z =  z ^ (z >> 31)
///   * Replication seeds: derive_rep_seed(s, r) = mix(s + 0x9e3779b97f4a7c15 * (r + 1))
///     (mod 2^64). For a fixed master this is a bijection of r, so distinct
///     replications always get distinct seeds.
///   * Uniforms: xoshiro256** (Blackman & Vigna), state filled by four
///     SplitMix64 steps from the seed; u = (x >> 11 + 0.5) * 2^-53 in (0, 1).
///   * Normals: inverse CDF, Wichura AS 241, one uniform per variate.

#ifndef BLOCKNORM_RNG_HPP
#define BLOCKNORM_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

#include "blocknorm/dist.hpp"

namespace blocknorm {

inline constexpr const char* kRngAlgorithm =
    "xoshiro256**/splitmix64-seeding/normal-inverse-cdf-as241";

/// Master seed of a run.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replication `rep_index` under `master`.
constexpr Seed derive_rep_seed(Seed master, std::uint64_t rep_index) noexcept {
  return Seed{splitmix64_mix(master.value +
                             0x9e3779b97f4a7c15ULL * (rep_index + 1))};
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(Seed seed) noexcept {
    SplitMix64 sm(seed.value);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() noexcept { return detail::NormalQuantileAS241(uniform()); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace blocknorm

#endif  // BLOCKNORM_RNG_HPP
