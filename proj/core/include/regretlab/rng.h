// Copyright 2019 DeepMind Technologies Ltd. All rights reserved.
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

#ifndef REGRETLAB_RNG_H_
#define REGRETLAB_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace regretlab {

// Seeded 64-bit generator used for every random draw in the library.
//
// Engine: std::mt19937_64 (fully specified by the C++ standard), seeded with
// the SplitMix64 finalizer of the user seed. Unit draws take the top 53 bits
// of one engine output, so streams are identical across standard libraries.
// Split(k) derives an independent stream from (seed, k).
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64/v1";

  explicit Rng(std::uint64_t seed);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1).
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextUnit(); }
  bool Bernoulli(double p) { return NextUnit() < p; }
  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n);

  Rng Split(std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 output function.
std::uint64_t MixSeed(std::uint64_t x);

}  // namespace regretlab

#endif  // REGRETLAB_RNG_H_
