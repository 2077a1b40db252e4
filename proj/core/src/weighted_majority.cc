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

#include "regretlab/weighted_majority.h"

#include <algorithm>
#include <limits>
#include <string>

#include "regretlab/errors.h"

namespace regretlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinExponent = -745.0;

// expm1(a) - a without the cancellation near zero.
double ExpRemainder(double a) {
  if (std::abs(a) < 1e-3) {
    const double a2 = a * a;
    return a2 * (0.5 + a * (1.0 / 6.0 + a * (1.0 / 24.0 + a / 120.0)));
  }
  return std::expm1(a) - a;
}

}  // namespace

std::string_view WmScheduleName(WmSchedule schedule) {
  switch (schedule) {
    case WmSchedule::kFixed:
      return "fixed";
    case WmSchedule::kKnownRange:
      return "known-range";
    case WmSchedule::kUnknownRange:
      return "unknown-range";
  }
  return "unknown";
}

WeightedMajority::WeightedMajority(std::size_t num_experts,
                                   WmSchedule schedule, double eta,
                                   double range)
    : schedule_(schedule),
      fixed_eta_(eta),
      known_range_(range),
      log_n_(0.0),
      cum_payoff_(num_experts, 0.0) {
  if (num_experts < 2) {
    throw InputError("weighted majority needs at least 2 experts");
  }
  log_n_ = std::log(static_cast<double>(num_experts));
}

WeightedMajority WeightedMajority::Fixed(std::size_t num_experts, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("fixed learning rate must be positive and finite");
  }
  return WeightedMajority(num_experts, WmSchedule::kFixed, eta, 0.0);
}

WeightedMajority WeightedMajority::KnownRange(std::size_t num_experts,
                                              double range) {
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw InputError("known payoff range E must be positive and finite");
  }
  return WeightedMajority(num_experts, WmSchedule::kKnownRange, 0.0, range);
}

WeightedMajority WeightedMajority::UnknownRange(std::size_t num_experts) {
  return WeightedMajority(num_experts, WmSchedule::kUnknownRange, 0.0, 0.0);
}

std::string WeightedMajority::Name() const {
  return "wm-" + std::string(WmScheduleName(schedule_));
}

double WeightedMajority::LearningRate() const {
  switch (schedule_) {
    case WmSchedule::kFixed:
      return fixed_eta_;
    case WmSchedule::kKnownRange:
      return VarianceAdaptiveRate(known_range_, cum_variance_, log_n_);
    case WmSchedule::kUnknownRange:
      return VarianceAdaptiveRate(
          range_tracker_.defined() ? range_tracker_.value() : 0.0,
          cum_variance_, log_n_);
  }
  return kInf;
}

Distribution WeightedMajority::Predict() const {
  const double eta = LearningRate();
  if (rounds_ == 0 || std::isinf(eta)) {
    return Distribution::Uniform(num_experts());
  }
  return ExponentialWeights(cum_payoff_, eta);
}

void WeightedMajority::Update(std::span<const double> payoffs) {
  if (payoffs.size() != num_experts()) {
    throw InputError("weighted majority update with " +
                     std::to_string(payoffs.size()) + " payoffs, expected " +
                     std::to_string(num_experts()));
  }
  const Distribution p = Predict();
  cum_variance_ += PayoffVariance(p, payoffs);
  range_tracker_ = RangeTracker(payoffs, range_tracker_);
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    cum_payoff_[i] += payoffs[i];
  }
  ++rounds_;
}

double VarianceAdaptiveRate(double range, double variance,
                            double log_experts) {
  const double range_term = range > 0.0 ? 1.0 / range : kInf;
  const double variance_term =
      variance > 0.0 ? kVarianceRateConstant * std::sqrt(log_experts / variance)
                     : kInf;
  return std::min(range_term, variance_term);
}

Distribution ExponentialWeights(std::span<const double> scores, double eta) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> w(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(std::max(eta * (scores[i] - top), kMinExponent));
  }
  return Distribution::Normalize(std::move(w));
}

double Phi(const Distribution& p, double eta, std::span<const double> x) {
  if (!(eta > 0.0)) throw InputError("Phi needs eta > 0");
  const double mean = ExpectedPayoff(p, x);
  double top = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 0.0) top = std::max(top, eta * (x[i] - mean));
  }
  if (top <= 1.0) {
    // sum_i p_i a_i vanishes exactly, so only the second-order remainder of
    // the exponential is summed.
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (p[i] > 0.0) s += p[i] * ExpRemainder(eta * (x[i] - mean));
    }
    return std::log1p(s) / eta;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::exp(eta * (x[i] - mean) - top);
  }
  return std::max(0.0, (top + std::log(s)) / eta);
}

}  // namespace regretlab
