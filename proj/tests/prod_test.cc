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

#include "regretlab/prod.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "regretlab/adversary.h"
#include "regretlab/errors.h"

namespace regretlab {
namespace {

using testing::Matrix;

std::vector<Distribution> Play(Forecaster& f, const Matrix& x) {
  std::vector<Distribution> out;
  for (const auto& row : x) out.push_back(f.Step(row));
  return out;
}

TEST(ProdTest, FreshStateIsUniform) {
  const Prod prod(4, 0.3);
  const Distribution p = prod.Predict();
  for (double v : p.probs()) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(ProdTest, OneUpdateByHand) {
  Prod prod(2, 0.5);
  const std::vector<double> x = {1, -1};
  prod.Update(x);
  // Weights (1.5, 0.5).
  EXPECT_NEAR(prod.Predict()[0], 0.75, 1e-15);
  EXPECT_NEAR(prod.Predict()[1], 0.25, 1e-15);
}

TEST(ProdTest, ZeroPayoffLeavesStateUnchanged) {
  Prod prod(3, 0.2);
  const std::vector<double> x = {0.5, -1, 2};
  prod.Update(x);
  const std::vector<double> before(prod.log_weights().begin(),
                                   prod.log_weights().end());
  const std::vector<double> zero = {0, 0, 0};
  prod.Update(zero);
  EXPECT_EQ(std::vector<double>(prod.log_weights().begin(),
                                prod.log_weights().end()),
            before);
}

TEST(ProdTest, BoundaryFactorOneHalfAccepted) {
  Prod prod(2, 0.25);
  const std::vector<double> x = {-2, 0};
  prod.Update(x);
  EXPECT_NEAR(prod.log_weights()[0] - prod.log_weights()[1], std::log(0.5),
              1e-15);
}

TEST(ProdTest, ValidityViolationLeavesStateUntouched) {
  Prod prod(2, 0.25);
  const std::vector<double> x = {0, -2.1};
  try {
    prod.Update(x);
    FAIL() << "expected ValidityViolation";
  } catch (const ValidityViolation& e) {
    EXPECT_EQ(e.expert(), 1);
    EXPECT_EQ(e.payoff(), -2.1);
  }
  EXPECT_EQ(prod.log_weights()[0], 0.0);
  EXPECT_EQ(prod.log_weights()[1], 0.0);
}

TEST(ProdTest, MatchesPlainProductOracle) {
  const Matrix x = testing::RandomMatrix(40, 5, -1, 1, 21);
  const double eta = 0.4;
  Prod prod(5, eta);
  for (const auto& row : x) prod.Update(row);
  const std::vector<double> w = testing::OracleProdWeights(x, eta);
  double total = 0.0;
  for (double v : w) total += v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_NEAR(prod.Predict()[i], w[i] / total, 1e-13);
  }
}

TEST(ProdTest, WeightsStayPositiveOverLongRuns) {
  GeneratorSpec gen;
  gen.kind = GeneratorKind::kUniformSigned;
  gen.num_experts = 8;
  gen.num_rounds = 100000;
  gen.seed = 4;
  const PayoffSequence seq = Generate(gen);
  Prod prod(8, 0.5);
  for (std::size_t t = 0; t < seq.num_rounds(); ++t) prod.Update(seq.round(t));
  for (double lw : prod.log_weights()) EXPECT_TRUE(std::isfinite(lw));
  const Distribution pred = prod.Predict();
  for (double p : pred.probs()) EXPECT_GE(p, 0.0);
}

TEST(TunedProdEtaTest, Examples) {
  const double ln_n = std::log(5.0);
  EXPECT_DOUBLE_EQ(TunedProdEta(1.0, 16.0 * ln_n, 5), 0.25);
  EXPECT_DOUBLE_EQ(TunedProdEta(1.0, ln_n / 100.0, 5), 0.5);
  EXPECT_DOUBLE_EQ(TunedProdEta(2.0, 4.0 * ln_n, 5), 0.25);
  EXPECT_THROW(TunedProdEta(0.0, 1.0, 5), InputError);
}

TEST(ProdQTest, NoRestartMatchesPlainProd) {
  const Matrix x = testing::RandomMatrix(50, 3, -0.1, 0.1, 2);
  ProdQ prod_q(3, 1.0);
  Prod prod(3, prod_q.EtaForEpoch(0));
  const auto a = Play(prod_q, x);
  const auto b = Play(prod, x);
  EXPECT_EQ(prod_q.Epoch(), 0);
  EXPECT_EQ(a, b);
}

TEST(ProdQTest, ConstantPayoffEpochSchedule) {
  // x_1 = M every round: Q*_t = t M^2, so epoch r closes at the first t with
  // t > 4^r, i.e. rounds 2, 5 and 17.
  const double m = 3.0;
  ProdQ prod_q(2, m);
  const std::vector<double> x = {m, 0.0};
  std::vector<int> epochs;
  for (int t = 1; t <= 20; ++t) {
    prod_q.Update(x);
    epochs.push_back(prod_q.Epoch());
  }
  EXPECT_EQ(epochs[0], 0);
  EXPECT_EQ(epochs[1], 1);
  EXPECT_EQ(epochs[3], 1);
  EXPECT_EQ(epochs[4], 2);
  EXPECT_EQ(epochs[15], 2);
  EXPECT_EQ(epochs[16], 3);
  EXPECT_DOUBLE_EQ(prod_q.LearningRate(),
                   std::min(1.0 / (2 * m), std::sqrt(std::log(2.0)) / (8 * m)));
}

TEST(ProdQTest, RestartCountCeiling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec gen;
    gen.kind = seed % 2 ? GeneratorKind::kLeaderFlip
                        : GeneratorKind::kUniformSigned;
    gen.num_experts = 2 + seed % 4;
    gen.num_rounds = 500 + 100 * seed;
    gen.seed = seed;
    gen.period = 7;
    const PayoffSequence seq = Generate(gen);
    ProdQ prod_q(gen.num_experts, gen.magnitude);
    for (std::size_t t = 0; t < seq.num_rounds(); ++t) {
      prod_q.Update(seq.round(t));
    }
    const double ceiling =
        std::log(static_cast<double>(gen.num_rounds)) / std::log(4.0) + 1.0;
    EXPECT_LE(prod_q.Epoch(), ceiling);
  }
}

TEST(ProdQTest, PayoffAboveBoundIsRejected) {
  ProdQ prod_q(2, 1.0);
  const std::vector<double> x = {1.5, 0.0};
  EXPECT_THROW(prod_q.Update(x), InputError);
}

TEST(ProdMTest, NoTriggerMatchesPlainProd) {
  const double ln_n = std::log(3.0);
  ProdM prod_m(3, 4.0 * ln_n);  // M_0 = 1
  EXPECT_DOUBLE_EQ(prod_m.initial_magnitude(), 1.0);
  const Matrix x = testing::RandomMatrix(60, 3, -1, 1, 8);
  Prod prod(3, 0.5);
  EXPECT_EQ(Play(prod_m, x), Play(prod, x));
  EXPECT_EQ(prod_m.Epoch(), 0);
}

TEST(ProdMTest, FirstPayoffAboveInitialMagnitude) {
  ProdM prod_m(2, 4.0 * std::log(2.0));  // M_0 = 1
  const std::vector<double> x = {1.5, 0.0};
  prod_m.Update(x);
  EXPECT_EQ(prod_m.Epoch(), 1);
  EXPECT_DOUBLE_EQ(prod_m.anchor(), 2.0);
  EXPECT_DOUBLE_EQ(prod_m.LearningRate(), 0.25);
  // The closing round does not move the weights.
  EXPECT_EQ(prod_m.Predict(), Distribution::Uniform(2));
}

TEST(ProdMTest, DoublingPayoffsOneEpochPerRound) {
  ProdM prod_m(2, std::log(2.0));  // M_0 = 1/2
  int expected = 0;
  for (double v : {1.0, 2.0, 4.0, 8.0}) {
    const std::vector<double> x = {v, -v / 2};
    prod_m.Update(x);
    EXPECT_EQ(prod_m.Epoch(), ++expected);
    EXPECT_DOUBLE_EQ(prod_m.anchor(), v);
  }
}

TEST(ProdMTest, EpochCountCeiling) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::kOutlier;
    gen.num_experts = 4;
    gen.num_rounds = 400;
    gen.spike = 37.0;
    gen.spike_rate = 0.02;
    gen.seed = seed;
    const PayoffSequence seq = Generate(gen);
    const double q = 0.05;
    ProdM prod_m(4, q);
    for (std::size_t t = 0; t < seq.num_rounds(); ++t) {
      prod_m.Update(seq.round(t));
    }
    const double m = prod_m.stats().max_abs_payoff();
    EXPECT_LE(prod_m.Epoch(),
              2.0 + std::log2(m / prod_m.initial_magnitude()));
  }
}

TEST(ProdMQTest, AllZeroStaysUniform) {
  ProdMQ prod_mq(3);
  const std::vector<double> zero = {0, 0, 0};
  for (int t = 0; t < 50; ++t) {
    EXPECT_EQ(prod_mq.Step(zero), Distribution::Uniform(3));
  }
  EXPECT_FALSE(prod_mq.initialized());
  EXPECT_EQ(prod_mq.Epoch(), 0);
  EXPECT_TRUE(std::isnan(prod_mq.LearningRate()));
}

TEST(ProdMQTest, EqualMagnitudesOnlyQuadraticRestarts) {
  // Q*_t = t and M_t = 1: C1 closes epochs at t = 2, 5, 17, 65, 257.
  ProdMQ prod_mq(2);
  const std::vector<double> x = {1.0, -1.0};
  std::vector<int> closes;
  int prev = 0;
  for (int t = 1; t <= 300; ++t) {
    prod_mq.Update(x);
    if (prod_mq.Epoch() != prev) closes.push_back(t);
    prev = prod_mq.Epoch();
  }
  EXPECT_EQ(closes, (std::vector<int>{2, 5, 17, 65, 257}));
  EXPECT_EQ(prod_mq.c2_restarts(), 0);
  EXPECT_EQ(prod_mq.c1_restarts(), 5);
  EXPECT_EQ(prod_mq.quadratic_epoch(), 5);
}

TEST(ProdMQTest, DoublingMagnitudesOnlyMagnitudeRestarts) {
  ProdMQ prod_mq(2);
  for (double v : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const std::vector<double> x = {v, 0.0};
    prod_mq.Update(x);
  }
  // Round 2 onwards would trigger both conditions; magnitude wins.
  EXPECT_EQ(prod_mq.c1_restarts(), 0);
  EXPECT_EQ(prod_mq.c2_restarts(), 4);
  EXPECT_EQ(prod_mq.magnitude_epoch(), 4);
  EXPECT_DOUBLE_EQ(prod_mq.epoch_magnitude(), 16.0);
}

TEST(ProdMQTest, NestedEpochBookkeeping) {
  ProdMQ prod_mq(2);
  const std::vector<double> one = {1.0, -1.0};
  for (int t = 0; t < 5; ++t) prod_mq.Update(one);  // C1 at t = 2, 5
  EXPECT_EQ(prod_mq.quadratic_epoch(), 2);
  const std::vector<double> three = {3.0, 0.0};
  prod_mq.Update(three);  // M_t = 4 > 1: C2
  EXPECT_EQ(prod_mq.magnitude_epoch(), 1);
  EXPECT_EQ(prod_mq.quadratic_epoch(), 0);
  EXPECT_EQ(prod_mq.closed_quadratic_epochs(), 2);
  EXPECT_DOUBLE_EQ(prod_mq.epoch_magnitude(), 4.0);
  // eta = min{1/8, sqrt(ln 2) / (2^2 * 4)}.
  EXPECT_DOUBLE_EQ(prod_mq.LearningRate(),
                   std::min(0.125, std::sqrt(std::log(2.0)) / 16.0));
}

}  // namespace
}  // namespace regretlab
