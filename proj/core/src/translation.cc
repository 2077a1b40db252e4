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

#include "regretlab/translation.h"

#include <algorithm>
#include <cmath>

#include "regretlab/errors.h"

namespace regretlab {

std::string_view TranslationRuleName(TranslationRule rule) {
  switch (rule) {
    case TranslationRule::kNone:
      return "none";
    case TranslationRule::kReward:
      return "reward";
    case TranslationRule::kMinPayoff:
      return "min";
    case TranslationRule::kMaxPayoff:
      return "max";
    case TranslationRule::kMidrange:
      return "midrange";
  }
  return "unknown";
}

std::optional<TranslationRule> ParseTranslationRule(std::string_view name) {
  for (auto rule :
       {TranslationRule::kNone, TranslationRule::kReward,
        TranslationRule::kMinPayoff, TranslationRule::kMaxPayoff,
        TranslationRule::kMidrange}) {
    if (TranslationRuleName(rule) == name) return rule;
  }
  return std::nullopt;
}

double TranslationShift(TranslationRule rule, std::span<const double> x,
                        const Distribution& p) {
  switch (rule) {
    case TranslationRule::kNone:
      return 0.0;
    case TranslationRule::kReward:
      return ExpectedPayoff(p, x);
    case TranslationRule::kMinPayoff:
      return *std::min_element(x.begin(), x.end());
    case TranslationRule::kMaxPayoff:
      return *std::max_element(x.begin(), x.end());
    case TranslationRule::kMidrange: {
      const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
      return *lo + (*hi - *lo) / 2.0;
    }
  }
  return 0.0;
}

TranslatedForecaster::TranslatedForecaster(TranslationRule rule,
                                           std::unique_ptr<Forecaster> inner)
    : rule_(rule),
      inner_(std::move(inner)),
      translated_stats_(inner_ ? inner_->num_experts() : 1) {
  if (!inner_) throw InputError("translated forecaster needs an inner one");
}

TranslatedForecaster::TranslatedForecaster(const TranslatedForecaster& other)
    : rule_(other.rule_),
      inner_(other.inner_->Clone()),
      translated_stats_(other.translated_stats_),
      last_translated_(other.last_translated_) {}

std::string TranslatedForecaster::Name() const {
  if (rule_ == TranslationRule::kNone) return inner_->Name();
  return inner_->Name() + "[" + std::string(TranslationRuleName(rule_)) + "]";
}

void TranslatedForecaster::Update(std::span<const double> payoffs) {
  if (payoffs.size() != num_experts()) {
    throw InputError("translated update dimension mismatch");
  }
  const Distribution p = inner_->Predict();
  const double shift = TranslationShift(rule_, payoffs, p);
  last_translated_.assign(payoffs.begin(), payoffs.end());
  if (shift != 0.0) {
    for (double& v : last_translated_) v -= shift;
  }
  translated_stats_.Update(last_translated_, p);
  inner_->Update(last_translated_);
}

std::size_t SampleAction(const Distribution& p, Rng& rng) {
  const double u = rng.NextUnit();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last_positive = i;
    cum += p[i];
    if (u < cum) return i;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_positive;
}

RandomizedPlay PlayRandomized(const PayoffSequence& payoffs,
                              std::span<const Distribution> predictions,
                              std::uint64_t seed) {
  if (predictions.size() != payoffs.num_rounds()) {
    throw InputError("one prediction per round is required");
  }
  RandomizedPlay play;
  play.seed = seed;
  play.actions.reserve(predictions.size());
  Rng rng(seed);
  for (std::size_t t = 0; t < predictions.size(); ++t) {
    const std::size_t i = SampleAction(predictions[t], rng);
    play.actions.push_back(i);
    play.actual_reward += payoffs.round(t)[i];
  }
  return play;
}

double BernsteinBand(double variance, double bound_m, std::size_t n,
                     double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InputError("Bernstein band needs 0 < delta < 1");
  }
  if (n < 1) throw InputError("Bernstein band needs n >= 1");
  if (!(variance >= 0.0)) throw InputError("variance must be nonnegative");
  if (!(bound_m > 0.0)) throw InputError("increment bound must be positive");
  const double log_term = std::log(static_cast<double>(n) / delta);
  return std::sqrt(2.0 * variance * log_term) +
         (2.0 / 3.0) * bound_m * log_term;
}

}  // namespace regretlab
