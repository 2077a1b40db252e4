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

#ifndef REGRETLAB_TRANSLATION_H_
#define REGRETLAB_TRANSLATION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regretlab/forecaster.h"
#include "regretlab/rng.h"
#include "regretlab/stats.h"
#include "regretlab/types.h"

namespace regretlab {

// How the common shift mu_t of round t is chosen.
enum class TranslationRule {
  kNone,       // mu_t = 0
  kReward,     // mu_t = xhat_t = <p_t, x_t>
  kMinPayoff,  // mu_t = min_j x_{j,t}
  kMaxPayoff,  // mu_t = max_j x_{j,t}
  kMidrange,   // mu_t = min_j x_{j,t} + E_t / 2
};

std::string_view TranslationRuleName(TranslationRule rule);
// Accepts the names above ("none", "reward", "min", "max", "midrange").
std::optional<TranslationRule> ParseTranslationRule(std::string_view name);

double TranslationShift(TranslationRule rule, std::span<const double> x,
                        const Distribution& p);

// Meta-forecaster that feeds x_t - mu_t to an inner forecaster. Predictions
// pass through untouched. Statistics of the translated stream (under the
// same distributions) are kept alongside.
class TranslatedForecaster final : public Forecaster {
 public:
  TranslatedForecaster(TranslationRule rule, std::unique_ptr<Forecaster> inner);
  TranslatedForecaster(const TranslatedForecaster& other);

  std::size_t num_experts() const override { return inner_->num_experts(); }
  Distribution Predict() const override { return inner_->Predict(); }
  void Update(std::span<const double> payoffs) override;
  double LearningRate() const override { return inner_->LearningRate(); }
  int Epoch() const override { return inner_->Epoch(); }
  std::string Name() const override;
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<TranslatedForecaster>(*this);
  }

  TranslationRule rule() const { return rule_; }
  const Forecaster& inner() const { return *inner_; }
  const SequenceStats& translated_stats() const { return translated_stats_; }
  // Payoffs fed to the inner forecaster in the latest round.
  std::span<const double> last_translated() const { return last_translated_; }

 private:
  TranslationRule rule_;
  std::unique_ptr<Forecaster> inner_;
  SequenceStats translated_stats_;
  std::vector<double> last_translated_;
};

// Draws index i with probability p_i by inverting the cumulative sums.
std::size_t SampleAction(const Distribution& p, Rng& rng);

// One randomized replay: I_t drawn from p_t each round, reward x_{I_t,t}.
struct RandomizedPlay {
  std::uint64_t seed = 0;
  std::vector<std::size_t> actions;
  double actual_reward = 0.0;
};

RandomizedPlay PlayRandomized(const PayoffSequence& payoffs,
                              std::span<const Distribution> predictions,
                              std::uint64_t seed);

// Freedman/Bernstein deviation band for a martingale with increments bounded
// by M and predictable quadratic variation V:
//   sqrt(2 V ln(n/delta)) + (2/3) M ln(n/delta).
// Throws InputError unless 0 < delta < 1, n >= 1, V >= 0 and M > 0.
double BernsteinBand(double variance, double bound_m, std::size_t n,
                     double delta);

}  // namespace regretlab

#endif  // REGRETLAB_TRANSLATION_H_
