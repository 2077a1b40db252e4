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

#include "regretlab/stats.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "regretlab/errors.h"

namespace regretlab {

std::size_t BestAction(std::span<const double> cum_payoff,
                       std::span<const double> quad) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < cum_payoff.size(); ++k) {
    if (cum_payoff[k] > cum_payoff[best] ||
        (cum_payoff[k] == cum_payoff[best] && quad[k] < quad[best])) {
      best = k;
    }
  }
  return best;
}

SequenceStats::SequenceStats(std::size_t num_experts)
    : cum_payoff_(num_experts, 0.0),
      quad_(num_experts, 0.0),
      abs_sum_(num_experts, 0.0),
      translated_quad_(num_experts, 0.0),
      excess_over_min_(num_experts, 0.0),
      deficit_to_max_(num_experts, 0.0) {
  if (num_experts < 1) throw InputError("statistics need at least 1 expert");
}

void SequenceStats::Update(std::span<const double> x, const Distribution& p) {
  const std::size_t n = num_experts();
  if (x.size() != n || p.size() != n) {
    throw InputError("round has " + std::to_string(x.size()) +
                     " payoffs and " + std::to_string(p.size()) +
                     " probabilities, expected " + std::to_string(n));
  }
  ++rounds_;

  last_reward_ = ExpectedPayoff(p, x);
  last_variance_ = PayoffVariance(p, x);
  cum_reward_ += last_reward_;
  cum_variance_ += last_variance_;

  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  for (std::size_t k = 0; k < n; ++k) {
    const double v = x[k];
    cum_payoff_[k] += v;
    quad_[k] += v * v;
    abs_sum_[k] += std::abs(v);
    const double centered = v - last_reward_;
    translated_quad_[k] += centered * centered;
    excess_over_min_[k] += v - *lo;
    deficit_to_max_[k] += *hi - v;
    max_abs_payoff_ = std::max(max_abs_payoff_, std::abs(v));
  }

  last_range_ = *hi - *lo;
  max_range_ = std::max(max_range_, last_range_);
  sum_sq_range_ += last_range_ * last_range_;
  magnitude_ = MagnitudeTracker(x, magnitude_);
  range_tracker_ = RangeTracker(x, range_tracker_);

  best_index_ = BestAction(cum_payoff_, quad_);
  r_best_index_ = BestAction(cum_payoff_, translated_quad_);
  q_star_envelope_ = std::max(q_star_envelope_, q_star());
  a_star_envelope_ = std::max(a_star_envelope_, a_star());
  r_star_envelope_ = std::max(r_star_envelope_, r_star());
  if (magnitude_.defined()) {
    const double m = magnitude_.value();
    ratio_envelope_ = std::max(ratio_envelope_, q_star() / (m * m));
  }
}

}  // namespace regretlab
