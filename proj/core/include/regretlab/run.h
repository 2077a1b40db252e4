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

#ifndef REGRETLAB_RUN_H_
#define REGRETLAB_RUN_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regretlab/forecaster.h"
#include "regretlab/stats.h"
#include "regretlab/translation.h"
#include "regretlab/types.h"

namespace regretlab {

enum class Algorithm {
  kProd,
  kProdQ,
  kProdM,
  kProdMQ,
  kWmFixed,
  kWmKnownRange,
  kWmUnknownRange,
};

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
bool IsWeightedMajority(Algorithm algorithm);

// Forecaster choice and its parameters. Which fields are needed depends on
// the algorithm:
//   prod        eta, or (bound_m, bound_q) for the tuned rate, or bound_m
//               alone for eta = 1/(2M)
//   prod-Q      bound_m
//   prod-M      bound_q
//   prod-MQ     nothing
//   wm-fixed    eta
//   wm-known    range_e
//   wm-unknown  nothing
struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::kWmUnknownRange;
  std::optional<double> eta;
  std::optional<double> bound_m;
  std::optional<double> bound_q;
  std::optional<double> range_e;
  TranslationRule translation = TranslationRule::kNone;
};

// Learning rate prod will run with. Throws ConfigError when underdetermined.
double ResolveProdEta(const AlgorithmSpec& spec, std::size_t num_experts);

// Throws ConfigError on missing or invalid parameters.
std::unique_ptr<Forecaster> MakeForecaster(const AlgorithmSpec& spec,
                                           std::size_t num_experts);

struct RoundRecord {
  double reward = 0.0;    // xhat_t
  double best_cum = 0.0;  // X*_t
  double regret = 0.0;    // X*_t - Xhat_t
  double variance = 0.0;  // Var Z_t
  double range = 0.0;     // E_t
  PowerOfTwo magnitude;   // M_t
  double q_star = 0.0;
  int epoch = 0;
  // Learning rate behind p_t. For the adaptive weighted-majority schedules
  // round 1 is reported with the rate of round 2.
  double eta = 0.0;
};

struct RunTrace {
  AlgorithmSpec spec;
  std::string forecaster_name;
  PayoffSequence payoffs;
  std::vector<Distribution> predictions;
  std::vector<RoundRecord> rounds;
  SequenceStats stats;
  // Present when a translation rule other than kNone was used.
  std::optional<SequenceStats> translated_stats;
};

// Plays the forecaster described by `spec` against `payoffs`.
RunTrace Run(const AlgorithmSpec& spec, const PayoffSequence& payoffs);

}  // namespace regretlab

#endif  // REGRETLAB_RUN_H_
