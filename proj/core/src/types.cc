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

#include "regretlab/types.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "regretlab/errors.h"

namespace regretlab {

ValidityViolation::ValidityViolation(std::size_t expert, double eta,
                                     double payoff)
    : std::domain_error("multiplicative update invalid for expert " +
                        std::to_string(expert) + ": eta * x = " +
                        std::to_string(eta * payoff) +
                        " < -1/2 (payoff bound too small)"),
      expert_(expert),
      eta_(eta),
      payoff_(payoff) {}

// -- PayoffSequence -----------------------------------------------------------

PayoffSequence::PayoffSequence(std::size_t num_experts)
    : num_experts_(num_experts) {
  if (num_experts < 2) {
    throw InputError("payoff sequence needs at least 2 experts, got " +
                     std::to_string(num_experts));
  }
}

PayoffSequence::PayoffSequence(std::size_t num_experts,
                               std::vector<double> row_major)
    : PayoffSequence(num_experts) {
  if (row_major.size() % num_experts != 0) {
    throw InputError("payoff buffer of size " +
                     std::to_string(row_major.size()) +
                     " is not a multiple of N = " +
                     std::to_string(num_experts));
  }
  for (std::size_t i = 0; i < row_major.size(); ++i) {
    if (!std::isfinite(row_major[i])) {
      throw InputError("non-finite payoff at round " +
                       std::to_string(i / num_experts + 1) + ", expert " +
                       std::to_string(i % num_experts + 1));
    }
  }
  values_ = std::move(row_major);
}

PayoffSequence PayoffSequence::FromRounds(
    const std::vector<std::vector<double>>& rounds) {
  if (rounds.empty()) throw InputError("no rounds given");
  PayoffSequence seq(rounds.front().size());
  for (const auto& r : rounds) seq.Append(r);
  return seq;
}

void PayoffSequence::Append(std::span<const double> payoffs) {
  if (payoffs.size() != num_experts_) {
    throw InputError("round " + std::to_string(num_rounds() + 1) + " has " +
                     std::to_string(payoffs.size()) + " payoffs, expected " +
                     std::to_string(num_experts_));
  }
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (!std::isfinite(payoffs[i])) {
      throw InputError("non-finite payoff at round " +
                       std::to_string(num_rounds() + 1) + ", expert " +
                       std::to_string(i + 1));
    }
  }
  values_.insert(values_.end(), payoffs.begin(), payoffs.end());
}

std::string_view GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kLoss:
      return "loss";
    case GameKind::kGain:
      return "gain";
    case GameKind::kSigned:
      return "signed";
  }
  return "unknown";
}

GameKind Classify(const PayoffSequence& payoffs) {
  bool any_negative = false;
  bool any_positive = false;
  for (double v : payoffs.values()) {
    any_negative |= v < 0.0;
    any_positive |= v > 0.0;
  }
  if (any_negative && any_positive) return GameKind::kSigned;
  return any_negative ? GameKind::kLoss : GameKind::kGain;
}

bool IsOneSided(const PayoffSequence& payoffs) {
  return Classify(payoffs) != GameKind::kSigned;
}

// -- Distribution -------------------------------------------------------------

Distribution::Distribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw InputError("empty distribution");
  double sum = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError("distribution entry is negative or non-finite");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InputError("distribution sums to " + std::to_string(sum));
  }
}

Distribution Distribution::Uniform(std::size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::PointMass(std::size_t n, std::size_t i) {
  std::vector<double> probs(n, 0.0);
  probs.at(i) = 1.0;
  return Distribution(std::move(probs));
}

Distribution Distribution::Normalize(std::vector<double> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw InputError("cannot normalize weights with sum " +
                     std::to_string(sum));
  }
  for (double& w : weights) w /= sum;
  return Distribution(std::move(weights));
}

// -- PowerOfTwo ---------------------------------------------------------------

PowerOfTwo PowerOfTwo::FromExponent(int k) {
  PowerOfTwo p;
  p.exponent_ = k;
  return p;
}

PowerOfTwo PowerOfTwo::Ceil(double magnitude) {
  magnitude = std::abs(magnitude);
  if (!(magnitude > 0.0)) return {};
  int e = 0;
  const double mantissa = std::frexp(magnitude, &e);  // in [0.5, 1)
  return FromExponent(mantissa == 0.5 ? e - 1 : e);
}

double PowerOfTwo::value() const {
  return exponent_ ? std::ldexp(1.0, *exponent_)
                   : std::numeric_limits<double>::quiet_NaN();
}

bool operator<(const PowerOfTwo& a, const PowerOfTwo& b) {
  if (!b.defined()) return false;
  if (!a.defined()) return true;
  return a.exponent() < b.exponent();
}

// -- Per-round statistics -----------------------------------------------------

double EffectiveRange(std::span<const double> x) {
  if (x.empty()) throw InputError("effective range of an empty vector");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

double ExpectedPayoff(const Distribution& p, std::span<const double> x) {
  if (p.size() != x.size()) {
    throw InputError("distribution/payoff dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += p[i] * x[i];
  return sum;
}

double PayoffVariance(const Distribution& p, std::span<const double> x) {
  const double mean = ExpectedPayoff(p, x);
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    var += p[i] * d * d;
  }
  return var;
}

PowerOfTwo MagnitudeTracker(std::span<const double> x, PowerOfTwo prev) {
  for (double v : x) prev = PowerOfTwo::Max(prev, PowerOfTwo::Ceil(v));
  return prev;
}

PowerOfTwo RangeTracker(std::span<const double> x, PowerOfTwo prev) {
  return PowerOfTwo::Max(prev, PowerOfTwo::Ceil(EffectiveRange(x)));
}

}  // namespace regretlab
