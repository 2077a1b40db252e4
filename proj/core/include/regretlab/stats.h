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

#ifndef REGRETLAB_STATS_H_
#define REGRETLAB_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "regretlab/types.h"

namespace regretlab {

// Index of the best expert: largest cumulative payoff, then smallest
// quadratic penalty, then smallest index. Ties are exact comparisons.
std::size_t BestAction(std::span<const double> cum_payoff,
                       std::span<const double> quad);

// Running statistics of a payoff stream together with the forecaster's
// distributions. Everything a forecaster or a bound evaluator consumes is
// kept here; nothing is reset across forecaster epochs.
//
// Notation used below (t is the number of rounds seen so far):
//   X[k] = sum_s x_{k,s}           Q[k] = sum_s x_{k,s}^2
//   A[k] = sum_s |x_{k,s}|         R[k] = sum_s (x_{k,s} - xhat_s)^2
//   k*   = BestAction(X, Q)        Q* = Q[k*], A* = A[k*]
//   R*   = R[k'] with k' = BestAction(X, R)
//   V    = sum_s Var_{p_s}(x_s)    Xhat = sum_s xhat_s
class SequenceStats {
 public:
  explicit SequenceStats(std::size_t num_experts);

  // Advances one round. Throws InputError on a dimension mismatch.
  void Update(std::span<const double> x, const Distribution& p);

  std::size_t num_experts() const { return cum_payoff_.size(); }
  std::size_t rounds() const { return rounds_; }

  std::span<const double> cum_payoff() const { return cum_payoff_; }
  std::span<const double> quad() const { return quad_; }
  std::span<const double> abs_sum() const { return abs_sum_; }
  std::span<const double> translated_quad() const { return translated_quad_; }

  std::size_t best_index() const { return best_index_; }
  double best_cum() const { return cum_payoff_[best_index_]; }
  double q_star() const { return quad_[best_index_]; }
  double q_star_envelope() const { return q_star_envelope_; }
  double a_star() const { return abs_sum_[best_index_]; }
  double a_star_envelope() const { return a_star_envelope_; }
  double r_star() const { return translated_quad_[r_best_index_]; }
  double r_star_envelope() const { return r_star_envelope_; }

  // Power-of-two payoff magnitude tracker M_t.
  PowerOfTwo magnitude() const { return magnitude_; }
  // Power-of-two range tracker E_t (smallest 2^k above every range so far).
  PowerOfTwo range_tracker() const { return range_tracker_; }
  // Effective range of the latest round.
  double last_range() const { return last_range_; }
  double max_range() const { return max_range_; }
  double sum_sq_range() const { return sum_sq_range_; }
  double max_abs_payoff() const { return max_abs_payoff_; }

  double last_reward() const { return last_reward_; }
  double last_variance() const { return last_variance_; }
  double cum_reward() const { return cum_reward_; }
  double cum_variance() const { return cum_variance_; }

  // max over s of Q*_s / M_s^2, with 0 for rounds where M_s is undefined.
  double ratio_envelope() const { return ratio_envelope_; }

  // Per expert: sum_s (x_{j,s} - min_i x_{i,s}) and sum_s (max_i x_{i,s} -
  // x_{j,s}); the cumulative payoffs of the two one-sided translations.
  std::span<const double> excess_over_min() const { return excess_over_min_; }
  std::span<const double> deficit_to_max() const { return deficit_to_max_; }

  // X*_t - Xhat_t.
  double regret() const { return best_cum() - cum_reward_; }

 private:
  std::size_t rounds_ = 0;
  std::vector<double> cum_payoff_;
  std::vector<double> quad_;
  std::vector<double> abs_sum_;
  std::vector<double> translated_quad_;
  std::vector<double> excess_over_min_;
  std::vector<double> deficit_to_max_;
  std::size_t best_index_ = 0;
  std::size_t r_best_index_ = 0;
  double q_star_envelope_ = 0.0;
  double a_star_envelope_ = 0.0;
  double r_star_envelope_ = 0.0;
  double ratio_envelope_ = 0.0;
  PowerOfTwo magnitude_;
  PowerOfTwo range_tracker_;
  double last_range_ = 0.0;
  double max_range_ = 0.0;
  double sum_sq_range_ = 0.0;
  double max_abs_payoff_ = 0.0;
  double last_reward_ = 0.0;
  double last_variance_ = 0.0;
  double cum_reward_ = 0.0;
  double cum_variance_ = 0.0;
};

}  // namespace regretlab

#endif  // REGRETLAB_STATS_H_
