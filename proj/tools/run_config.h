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

#ifndef REGRETLAB_TOOLS_RUN_CONFIG_H_
#define REGRETLAB_TOOLS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regretlab/adversary.h"
#include "regretlab/bounds.h"
#include "regretlab/run.h"

namespace regretlab::cli {

// Environment variable that overrides the default output directory.
inline constexpr const char* kOutDirEnv = "REGRETLAB_OUT_DIR";
inline constexpr const char* kDefaultOutDir = "regretlab_out";

struct RunConfig {
  AlgorithmSpec algorithm;
  // Exactly one of `generator` and `input_path` is set once resolved.
  std::optional<GeneratorSpec> generator;
  std::optional<std::string> input_path;
  // Empty means every bound compatible with the algorithm.
  std::vector<BoundId> bounds;
  std::string out_dir;
  bool corrupt = false;
};

// Parses "kind[:key=value,...]". Keys: m, p, spike, rate, period.
// Dimensions and seed are taken from the arguments. Throws ConfigError.
GeneratorSpec ParseGeneratorSpec(std::string_view text,
                                 std::size_t num_experts,
                                 std::size_t num_rounds, std::uint64_t seed);
std::string FormatGeneratorSpec(const GeneratorSpec& spec);

// "all" or a comma separated list such as "B1,B3,12".
std::vector<BoundId> ParseBoundList(std::string_view text);

// Comma separated lists for sweep grids.
std::vector<std::size_t> ParseSizeList(std::string_view text);
std::vector<double> ParseDoubleList(std::string_view text);

// --out if given, else $REGRETLAB_OUT_DIR, else kDefaultOutDir.
std::string ResolveOutDir(const std::optional<std::string>& flag);

// Fills algorithm parameters the user left out, using the declared
// magnitude M and range E of the payoff source:
//   prod        bound_m = M, bound_q = n M^2 (tuned eta) unless --eta
//   prodq       bound_m = M, or 2M when payoffs are translated
//   prodm       bound_q = n M^2
//   wm-known    range_e = E
//   wm-fixed    eta = sqrt(8 ln N / n) / E
void FillDefaults(AlgorithmSpec& spec, double magnitude, double range,
                  std::size_t num_experts, std::size_t num_rounds);

}  // namespace regretlab::cli

#endif  // REGRETLAB_TOOLS_RUN_CONFIG_H_
