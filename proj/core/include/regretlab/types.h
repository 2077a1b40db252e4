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

#ifndef REGRETLAB_TYPES_H_
#define REGRETLAB_TYPES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace regretlab {

// Payoffs of N experts over n rounds, stored row-major (round by round).
// Every entry is finite and N >= 2.
class PayoffSequence {
 public:
  explicit PayoffSequence(std::size_t num_experts);
  PayoffSequence(std::size_t num_experts, std::vector<double> row_major);

  static PayoffSequence FromRounds(
      const std::vector<std::vector<double>>& rounds);

  // Throws InputError on a length mismatch or a non-finite entry.
  void Append(std::span<const double> payoffs);

  std::size_t num_experts() const { return num_experts_; }
  std::size_t num_rounds() const { return values_.size() / num_experts_; }
  bool empty() const { return values_.empty(); }

  // Zero-based round index.
  std::span<const double> round(std::size_t t) const {
    return {values_.data() + t * num_experts_, num_experts_};
  }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const PayoffSequence&,
                         const PayoffSequence&) = default;

 private:
  std::size_t num_experts_;
  std::vector<double> values_;
};

enum class GameKind { kLoss, kGain, kSigned };

std::string_view GameKindName(GameKind kind);

// An all-zero sequence is reported as a gain game.
GameKind Classify(const PayoffSequence& payoffs);
bool IsOneSided(const PayoffSequence& payoffs);

// Probability vector over experts. Entries are nonnegative and sum to one
// within kSumTolerance.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Distribution(std::vector<double> probs);

  static Distribution Uniform(std::size_t n);
  static Distribution PointMass(std::size_t n, std::size_t i);
  // Divides by the sum; weights must be nonnegative with a positive sum.
  static Distribution Normalize(std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

// A power of two 2^k (k may be negative), or undefined when no nonzero
// magnitude has been observed yet.
class PowerOfTwo {
 public:
  PowerOfTwo() = default;

  static PowerOfTwo FromExponent(int k);
  // Smallest 2^k >= magnitude. Zero gives the undefined value.
  static PowerOfTwo Ceil(double magnitude);

  bool defined() const { return exponent_.has_value(); }
  int exponent() const { return *exponent_; }
  // NaN when undefined.
  double value() const;

  friend bool operator==(const PowerOfTwo&, const PowerOfTwo&) = default;
  // Undefined compares below every defined value.
  friend bool operator<(const PowerOfTwo& a, const PowerOfTwo& b);

  static PowerOfTwo Max(const PowerOfTwo& a, const PowerOfTwo& b) {
    return a < b ? b : a;
  }

 private:
  std::optional<int> exponent_;
};

// max_i x_i - min_j x_j. Throws InputError on an empty vector.
double EffectiveRange(std::span<const double> x);

// sum_i p_i x_i.
double ExpectedPayoff(const Distribution& p, std::span<const double> x);

// Variance of the payoff drawn from p, computed in centered form so it is
// never negative.
double PayoffVariance(const Distribution& p, std::span<const double> x);

// Running max of prev and 2^ceil(log2 |x_i|) over the nonzero entries.
PowerOfTwo MagnitudeTracker(std::span<const double> x, PowerOfTwo prev);

// Smallest power of two dominating max(prev, EffectiveRange(x)); stays
// undefined while every round has had zero range.
PowerOfTwo RangeTracker(std::span<const double> x, PowerOfTwo prev);

}  // namespace regretlab

#endif  // REGRETLAB_TYPES_H_
