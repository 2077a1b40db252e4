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

#ifndef REGRETLAB_ADVERSARY_H_
#define REGRETLAB_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "regretlab/types.h"

namespace regretlab {

enum class GeneratorKind {
  kUniformSigned,  // x ~ U[-M, M]
  kBernoulliGain,  // x = M with probability p, else 0
  kLossGame,       // x ~ U[-M, 0]
  kOutlier,        // U[-M, M], entries replaced by -spike at rate spike_rate
  kLeaderFlip,     // the favored expert rotates every `period` rounds
};

std::string_view GeneratorKindName(GeneratorKind kind);
std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniformSigned;
  std::size_t num_experts = 2;
  std::size_t num_rounds = 1;
  std::uint64_t seed = 0;
  double magnitude = 1.0;
  double probability = 0.5;
  double spike = 10.0;
  double spike_rate = 0.01;
  std::size_t period = 10;
};

// Seed-deterministic. Throws InputError on an invalid spec.
PayoffSequence Generate(const GeneratorSpec& spec);

// Largest |x| the generator can emit.
double DeclaredMagnitude(const GeneratorSpec& spec);
// Largest per-round effective range the generator can emit.
double DeclaredRange(const GeneratorSpec& spec);
GameKind DeclaredGame(const GeneratorSpec& spec);

// x' = alpha x, alpha > 0.
PayoffSequence Scale(const PayoffSequence& payoffs, double alpha);
// x'_{i,t} = x_{i,t} - mu_t. Throws InputError unless |mu| = n.
PayoffSequence Translate(const PayoffSequence& payoffs,
                         std::span<const double> shifts);
// x' = -x; swaps gain and loss games.
PayoffSequence Negate(const PayoffSequence& payoffs);

}  // namespace regretlab

#endif  // REGRETLAB_ADVERSARY_H_
