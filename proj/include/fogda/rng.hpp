// Copyright 2026 The fogda-vi Authors
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

#ifndef FOGDA_RNG_HPP_
#define FOGDA_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fogda {

// SplitMix64 stream. The exact output sequence is part of the instance file
// contract (game matrices are filled from it), so it must not be swapped for
// a standard-library engine whose distributions vary across vendors.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1], safe to take the logarithm of.
  double uniform_open_left() { return 1.0 - uniform(); }

  double exponential() { return -std::log(uniform_open_left()); }

  double normal() {
    // Box-Muller, one value per call.
    const double r = std::sqrt(-2.0 * std::log(uniform_open_left()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

 private:
  std::uint64_t state_;
};

}  // namespace fogda

#endif  // FOGDA_RNG_HPP_
