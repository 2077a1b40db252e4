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

#include "regretlab/run.h"

#include <cmath>
#include <string>

#include "regretlab/errors.h"
#include "regretlab/prod.h"
#include "regretlab/weighted_majority.h"

namespace regretlab {
namespace {

double Require(const std::optional<double>& value, std::string_view what,
               Algorithm algorithm) {
  if (!value) {
    throw ConfigError(std::string(AlgorithmName(algorithm)) + " requires " +
                      std::string(what));
  }
  if (!(*value > 0.0) || !std::isfinite(*value)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
  return *value;
}

std::unique_ptr<Forecaster> MakeBase(const AlgorithmSpec& spec,
                                     std::size_t n) {
  const Algorithm a = spec.algorithm;
  switch (a) {
    case Algorithm::kProd:
      return std::make_unique<Prod>(n, ResolveProdEta(spec, n));
    case Algorithm::kProdQ:
      return std::make_unique<ProdQ>(n, Require(spec.bound_m, "--bound-m", a));
    case Algorithm::kProdM:
      return std::make_unique<ProdM>(n, Require(spec.bound_q, "--bound-q", a));
    case Algorithm::kProdMQ:
      return std::make_unique<ProdMQ>(n);
    case Algorithm::kWmFixed:
      return std::make_unique<WeightedMajority>(
          WeightedMajority::Fixed(n, Require(spec.eta, "--eta", a)));
    case Algorithm::kWmKnownRange:
      return std::make_unique<WeightedMajority>(WeightedMajority::KnownRange(
          n, Require(spec.range_e, "--range-e", a)));
    case Algorithm::kWmUnknownRange:
      return std::make_unique<WeightedMajority>(
          WeightedMajority::UnknownRange(n));
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kProd:
      return "prod";
    case Algorithm::kProdQ:
      return "prodq";
    case Algorithm::kProdM:
      return "prodm";
    case Algorithm::kProdMQ:
      return "prodmq";
    case Algorithm::kWmFixed:
      return "wm-fixed";
    case Algorithm::kWmKnownRange:
      return "wm-known";
    case Algorithm::kWmUnknownRange:
      return "wm-unknown";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (auto a : {Algorithm::kProd, Algorithm::kProdQ, Algorithm::kProdM,
                 Algorithm::kProdMQ, Algorithm::kWmFixed,
                 Algorithm::kWmKnownRange, Algorithm::kWmUnknownRange}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

bool IsWeightedMajority(Algorithm algorithm) {
  return algorithm == Algorithm::kWmFixed ||
         algorithm == Algorithm::kWmKnownRange ||
         algorithm == Algorithm::kWmUnknownRange;
}

double ResolveProdEta(const AlgorithmSpec& spec, std::size_t num_experts) {
  if (spec.eta) return Require(spec.eta, "--eta", spec.algorithm);
  if (spec.bound_m && spec.bound_q) {
    try {
      return TunedProdEta(*spec.bound_m, *spec.bound_q, num_experts);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  if (spec.bound_m) {
    return 1.0 / (2.0 * Require(spec.bound_m, "--bound-m", spec.algorithm));
  }
  throw ConfigError("prod requires --eta or --bound-m (optionally --bound-q)");
}

std::unique_ptr<Forecaster> MakeForecaster(const AlgorithmSpec& spec,
                                           std::size_t num_experts) {
  std::unique_ptr<Forecaster> base;
  try {
    base = MakeBase(spec, num_experts);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (spec.translation == TranslationRule::kNone) return base;
  return std::make_unique<TranslatedForecaster>(spec.translation,
                                                std::move(base));
}

RunTrace Run(const AlgorithmSpec& spec, const PayoffSequence& payoffs) {
  const std::size_t n = payoffs.num_experts();
  std::unique_ptr<Forecaster> forecaster = MakeForecaster(spec, n);
  RunTrace trace{.spec = spec,
                 .forecaster_name = forecaster->Name(),
                 .payoffs = payoffs,
                 .predictions = {},
                 .rounds = {},
                 .stats = SequenceStats(n),
                 .translated_stats = std::nullopt};
  trace.predictions.reserve(payoffs.num_rounds());
  trace.rounds.reserve(payoffs.num_rounds());

  for (std::size_t t = 0; t < payoffs.num_rounds(); ++t) {
    const auto x = payoffs.round(t);
    Distribution p = forecaster->Predict();
    RoundRecord rec;
    rec.eta = forecaster->LearningRate();
    rec.epoch = forecaster->Epoch();
    forecaster->Update(x);
    trace.stats.Update(x, p);

    rec.reward = trace.stats.last_reward();
    rec.best_cum = trace.stats.best_cum();
    rec.regret = trace.stats.regret();
    rec.variance = trace.stats.last_variance();
    rec.range = trace.stats.last_range();
    rec.magnitude = trace.stats.magnitude();
    rec.q_star = trace.stats.q_star();
    trace.rounds.push_back(rec);
    trace.predictions.push_back(std::move(p));
  }

  const bool adaptive_wm = spec.algorithm == Algorithm::kWmKnownRange ||
                           spec.algorithm == Algorithm::kWmUnknownRange;
  if (adaptive_wm && trace.rounds.size() >= 2) {
    trace.rounds[0].eta = trace.rounds[1].eta;
  }
  if (const auto* translated =
          dynamic_cast<const TranslatedForecaster*>(forecaster.get())) {
    trace.translated_stats = translated->translated_stats();
  }
  return trace;
}

}  // namespace regretlab
