// Copyright 2026 The aqc Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace aqc {

/// One step of the SplitMix64 sequence: advances `state` and returns the
/// mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256++ 1.0. Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  /// Fills the state with four consecutive SplitMix64 outputs from `seed`.
  explicit Xoshiro256pp(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Independent generator for ordinal `index` of a run seeded with `seed`:
/// the xoshiro state is seeded from splitmix64 applied to (seed ^ index).
Xoshiro256pp substream(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform on [0, 1) from the top 53 bits.
double uniform01(Xoshiro256pp& rng) noexcept;

/// Standard normal variates by the Marsaglia polar method. Each accepted pair
/// yields two variates; the second is cached for the next call.
class PolarGaussian {
 public:
  double operator()(Xoshiro256pp& rng) noexcept;

 private:
  std::optional<double> spare_;
};

}  // namespace aqc
