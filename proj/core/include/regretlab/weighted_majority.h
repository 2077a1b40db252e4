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

#ifndef REGRETLAB_WEIGHTED_MAJORITY_H_
#define REGRETLAB_WEIGHTED_MAJORITY_H_

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "regretlab/forecaster.h"
#include "regretlab/types.h"

namespace regretlab {

// sqrt(2 (sqrt(2) - 1) / (e - 2)), about 1.07.
inline const double kVarianceRateConstant =
    std::sqrt(2.0 * (std::numbers::sqrt2 - 1.0) / (std::numbers::e - 2.0));

enum class WmSchedule {
  kFixed,         // constant eta
  kKnownRange,    // eta_t = min{1/E, C sqrt(ln N / V_{t-1})}
  kUnknownRange,  // eta_t = min{1/E_{t-1}, C sqrt(ln N / V_{t-1})}
};

std::string_view WmScheduleName(WmSchedule schedule);

// Exponentially weighted average forecaster:
//   p_{i,t} proportional to exp(eta_t X_{i,t-1}),  p_1 uniform.
// The adaptive schedules produce a nonincreasing eta_t because V_t and the
// range tracker are nondecreasing.
class WeightedMajority final : public Forecaster {
 public:
  static WeightedMajority Fixed(std::size_t num_experts, double eta);
  static WeightedMajority KnownRange(std::size_t num_experts, double range);
  static WeightedMajority UnknownRange(std::size_t num_experts);

  std::size_t num_experts() const override { return cum_payoff_.size(); }
  // Uniform on round 1 and while the learning rate is +infinity.
  Distribution Predict() const override;
  void Update(std::span<const double> payoffs) override;
  // eta for the upcoming round; +infinity before any range information
  // under the unknown-range schedule.
  double LearningRate() const override;
  std::string Name() const override;
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<WeightedMajority>(*this);
  }

  WmSchedule schedule() const { return schedule_; }
  std::size_t rounds() const { return rounds_; }
  std::span<const double> cum_payoff() const { return cum_payoff_; }
  double cum_variance() const { return cum_variance_; }
  PowerOfTwo range_tracker() const { return range_tracker_; }

 private:
  WeightedMajority(std::size_t num_experts, WmSchedule schedule, double eta,
                   double range);

  WmSchedule schedule_;
  double fixed_eta_;
  double known_range_;
  double log_n_;
  std::size_t rounds_ = 0;
  std::vector<double> cum_payoff_;
  double cum_variance_ = 0.0;
  PowerOfTwo range_tracker_;
};

// Softmax of eta * scores, shifted by the max; exponent differences are
// clamped at -745.
// min{1/E, C sqrt(ln N / V)}. A term is +infinity when its denominator is
// zero; pass E = 0 when no range information exists yet.
double VarianceAdaptiveRate(double range, double variance, double log_experts);

Distribution ExponentialWeights(std::span<const double> scores, double eta);

// Phi(p, eta, x) = (1/eta) ln sum_i p_i exp(eta (x_i - xhat)), xhat = <p, x>.
// Nonnegative by Jensen. Throws InputError unless eta > 0.
double Phi(const Distribution& p, double eta, std::span<const double> x);

}  // namespace regretlab

#endif  // REGRETLAB_WEIGHTED_MAJORITY_H_
