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

#include <cmath>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "regretlab/adversary.h"
#include "regretlab/errors.h"
#include "regretlab/prod.h"
#include "regretlab/weighted_majority.h"

namespace regretlab {
namespace {

using testing::Matrix;

std::vector<Distribution> Play(Forecaster& f, const Matrix& x) {
  std::vector<Distribution> out;
  for (const auto& row : x) out.push_back(f.Step(row));
  return out;
}

constexpr TranslationRule kAllRules[] = {
    TranslationRule::kNone, TranslationRule::kReward,
    TranslationRule::kMinPayoff, TranslationRule::kMaxPayoff,
    TranslationRule::kMidrange};

TEST(TranslationRuleTest, NamesRoundTrip) {
  for (TranslationRule rule : kAllRules) {
    EXPECT_EQ(ParseTranslationRule(TranslationRuleName(rule)), rule);
  }
  EXPECT_FALSE(ParseTranslationRule("median").has_value());
}

TEST(TranslationRuleTest, Shifts) {
  const std::vector<double> x = {3.0, -1.0, 0.0};
  const Distribution p = Distribution::Normalize({1, 1, 2});
  EXPECT_EQ(TranslationShift(TranslationRule::kNone, x, p), 0.0);
  EXPECT_DOUBLE_EQ(TranslationShift(TranslationRule::kReward, x, p), 0.5);
  EXPECT_EQ(TranslationShift(TranslationRule::kMinPayoff, x, p), -1.0);
  EXPECT_EQ(TranslationShift(TranslationRule::kMaxPayoff, x, p), 3.0);
  EXPECT_EQ(TranslationShift(TranslationRule::kMidrange, x, p), 1.0);
}

TEST(TranslatedForecasterTest, NoneIsIdentityWrapper) {
  const Matrix x = testing::RandomMatrix(80, 3, -1, 1, 40);
  TranslatedForecaster wrapped(TranslationRule::kNone,
                               std::make_unique<ProdQ>(3, 1.0));
  ProdQ plain(3, 1.0);
  EXPECT_EQ(Play(wrapped, x), Play(plain, x));
  EXPECT_EQ(wrapped.Name(), plain.Name());
}

TEST(TranslatedForecasterTest, RewardRuleFeedsCenteredPayoffs) {
  TranslatedForecaster wrapped(TranslationRule::kReward,
                               std::make_unique<Prod>(2, 0.25));
  const std::vector<double> x = {2.0, 0.0};
  wrapped.Update(x);
  ASSERT_EQ(wrapped.last_translated().size(), 2);
  EXPECT_EQ(wrapped.last_translated()[0], 1.0);
  EXPECT_EQ(wrapped.last_translated()[1], -1.0);
}

TEST(TranslatedForecasterTest, MinRuleShrinksSquaresInGainGames) {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::kBernoulliGain;
  gen.num_experts = 5;
  gen.num_rounds = 400;
  gen.probability = 0.6;
  gen.seed = 41;
  const PayoffSequence seq = Generate(gen);
  TranslatedForecaster wrapped(TranslationRule::kMinPayoff,
                               std::make_unique<ProdQ>(5, 1.0));
  std::vector<double> raw_sq(5, 0.0);
  for (std::size_t t = 0; t < seq.num_rounds(); ++t) {
    wrapped.Update(seq.round(t));
    for (std::size_t j = 0; j < 5; ++j) {
      const double xj = seq.round(t)[j];
      const double rj = wrapped.last_translated()[j];
      ASSERT_LE(rj * rj, xj * xj);
      raw_sq[j] += xj * xj;
    }
  }
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_LE(wrapped.translated_stats().quad()[k], raw_sq[k]);
  }
}

TEST(TranslatedForecasterTest, WeightedMajorityInvariantUnderEveryRule) {
  const Matrix x = testing::RandomMatrix(200, 4, -3, 3, 42);
  for (TranslationRule rule : kAllRules) {
    WeightedMajority plain = WeightedMajority::UnknownRange(4);
    TranslatedForecaster wrapped(
        rule, std::make_unique<WeightedMajority>(
                  WeightedMajority::UnknownRange(4)));
    const auto a = Play(plain, x);
    const auto b = Play(wrapped, x);
    for (std::size_t t = 0; t < a.size(); ++t) {
      for (std::size_t i = 0; i < 4; ++i) {
        ASSERT_NEAR(a[t][i], b[t][i], 1e-12) << TranslationRuleName(rule);
      }
    }
  }
}

TEST(TranslatedForecasterTest, ProdIsNotTranslationInvariant) {
  const Matrix x = {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  Prod plain(2, 0.25);
  TranslatedForecaster wrapped(TranslationRule::kReward,
                               std::make_unique<Prod>(2, 0.25));
  const auto a = Play(plain, x);
  const auto b = Play(wrapped, x);
  EXPECT_NE(a.back()[0], b.back()[0]);
}

TEST(TranslatedForecasterTest, CloneIsDeep) {
  TranslatedForecaster wrapped(TranslationRule::kReward,
                               std::make_unique<Prod>(2, 0.25));
  auto copy = wrapped.Clone();
  const std::vector<double> x = {1.0, -1.0};
  wrapped.Update(x);
  EXPECT_EQ(copy->Predict(), Distribution::Uniform(2));
  EXPECT_NE(wrapped.Predict(), Distribution::Uniform(2));
}

TEST(SampleActionTest, PointMass) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(SampleAction(Distribution::PointMass(5, 3), rng), 3);
  }
}

TEST(SampleActionTest, UniformFrequencies) {
  Rng rng(2);
  std::vector<int> counts(4, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    ++counts[SampleAction(Distribution::Uniform(4), rng)];
  }
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(draws), 0.25, 0.01);
}

TEST(SampleActionTest, SkewedFrequencyWithinBinomialBand) {
  Rng rng(3);
  const Distribution p({0.9, 0.1});
  int second = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) second += SampleAction(p, rng) == 1;
  const double freq = second / static_cast<double>(draws);
  EXPECT_GE(freq, 0.085);
  EXPECT_LE(freq, 0.115);
}

TEST(PlayRandomizedTest, DeterministicPerSeed) {
  const PayoffSequence seq =
      PayoffSequence::FromRounds({{1, 0}, {0, 1}, {0.5, 0.25}});
  const std::vector<Distribution> preds(3, Distribution::Uniform(2));
  const RandomizedPlay a = PlayRandomized(seq, preds, 7);
  const RandomizedPlay b = PlayRandomized(seq, preds, 7);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.actual_reward, b.actual_reward);
  EXPECT_THROW(PlayRandomized(seq, std::vector<Distribution>(2,
                                  Distribution::Uniform(2)), 7),
               InputError);
}

TEST(BernsteinBandTest, Examples) {
  const double m = 2.0;
  const std::size_t n = 50;
  const double delta = 0.01;
  EXPECT_DOUBLE_EQ(BernsteinBand(0.0, m, n, delta),
                   (2.0 / 3.0) * m * std::log(n / delta));
  // n / delta = e.
  EXPECT_DOUBLE_EQ(BernsteinBand(1.0, 1.0, 1, 1.0 / std::exp(1.0)),
                   std::sqrt(2.0) + 2.0 / 3.0);
  EXPECT_THROW(BernsteinBand(1.0, 1.0, 10, 0.0), InputError);
  EXPECT_THROW(BernsteinBand(-1.0, 1.0, 10, 0.5), InputError);
}

}  // namespace
}  // namespace regretlab
