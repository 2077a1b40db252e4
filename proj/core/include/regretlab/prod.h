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

#ifndef REGRETLAB_PROD_H_
#define REGRETLAB_PROD_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "regretlab/forecaster.h"
#include "regretlab/stats.h"
#include "regretlab/types.h"

namespace regretlab {

// Slack on the update validity window eta * x >= -1/2. Payoffs produced by
// on-line translations can overshoot their nominal bound by a rounding error.
inline constexpr double kValiditySlack = 1e-12;

// The multiplicative forecaster: w_{i,t+1} = w_{i,t} (1 + eta x_{i,t}),
// p_t proportional to w_t. Weights are kept as logarithms.
class Prod final : public Forecaster {
 public:
  Prod(std::size_t num_experts, double eta);

  std::size_t num_experts() const override { return log_weights_.size(); }
  Distribution Predict() const override;
  // Throws ValidityViolation naming the first expert with eta * x < -1/2.
  // The state is left untouched in that case.
  void Update(std::span<const double> payoffs) override;
  double LearningRate() const override { return eta_; }
  std::string Name() const override { return "prod"; }
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<Prod>(*this);
  }

  // Uniform weights with a new learning rate.
  void Reset(double eta);

  double eta() const { return eta_; }
  std::span<const double> log_weights() const { return log_weights_; }

 private:
  double eta_;
  std::vector<double> log_weights_;
};

// min{1/(2M), sqrt(ln N / Q)}: the rate tuned for payoffs >= -M and a
// quadratic penalty of at most Q. Throws InputError on M <= 0, Q <= 0, N < 2.
double TunedProdEta(double bound_m, double bound_q, std::size_t num_experts);

// prod restarted on a doubling schedule for the best expert's quadratic
// penalty. Requires |x| <= M. Epoch r runs with
// eta_r = min{1/(2M), sqrt(ln N) / (2^r M)} and ends on the first round with
// Q*_t > 4^r M^2.
class ProdQ final : public Forecaster {
 public:
  ProdQ(std::size_t num_experts, double bound_m);

  std::size_t num_experts() const override { return inner_.num_experts(); }
  Distribution Predict() const override { return inner_.Predict(); }
  // Throws InputError if some |x_i| exceeds M.
  void Update(std::span<const double> payoffs) override;
  double LearningRate() const override { return inner_.eta(); }
  int Epoch() const override { return epoch_; }
  std::string Name() const override { return "prod-Q"; }
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<ProdQ>(*this);
  }

  double EtaForEpoch(int r) const;
  double bound_m() const { return bound_m_; }
  const SequenceStats& stats() const { return stats_; }

 private:
  double bound_m_;
  double log_n_;
  int epoch_ = 0;
  Prod inner_;
  SequenceStats stats_;
};

// prod restarted whenever the power-of-two payoff magnitude M_t exceeds the
// current anchor. Starts from M_0 = sqrt(Q / (4 ln N)) with eta_0 = 1/(2 M_0);
// later epochs use eta = 1/(2 M_anchor).
//
// The round that closes an epoch counts in the statistics, but its payoff is
// not applied to the weights (they are reset right after).
class ProdM final : public Forecaster {
 public:
  ProdM(std::size_t num_experts, double bound_q);

  std::size_t num_experts() const override { return inner_.num_experts(); }
  Distribution Predict() const override { return inner_.Predict(); }
  void Update(std::span<const double> payoffs) override;
  double LearningRate() const override { return inner_.eta(); }
  int Epoch() const override { return epoch_; }
  std::string Name() const override { return "prod-M"; }
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<ProdM>(*this);
  }

  double initial_magnitude() const { return initial_magnitude_; }
  double anchor() const { return anchor_; }
  const SequenceStats& stats() const { return stats_; }

 private:
  double initial_magnitude_;
  double anchor_;
  int epoch_ = 0;
  Prod inner_;
  SequenceStats stats_;
};

// Parameter-free prod with nested epochs (r, s). Epoch (r, s) runs with
//   eta = min{1/(2 M^(r)), sqrt(ln N) / (2^(S_{r-1}+s) M^(r))}
// and closes on the first round where either
//   (C2) M_t > M^(r)                  -> (r+1, 0), S_r = S_{r-1} + s,
//                                        M^(r+1) = M_t
//   (C1) Q*_t > 4^(S_{r-1}+s) M_t^2   -> (r, s+1)
// (C2) is checked first. Until the first nonzero payoff the forecaster is
// uniform; M^(0) is the tracker value of that first nonzero round.
class ProdMQ final : public Forecaster {
 public:
  explicit ProdMQ(std::size_t num_experts);

  std::size_t num_experts() const override { return inner_.num_experts(); }
  Distribution Predict() const override { return inner_.Predict(); }
  void Update(std::span<const double> payoffs) override;
  // NaN until the first nonzero payoff.
  double LearningRate() const override;
  int Epoch() const override { return epoch_; }
  std::string Name() const override { return "prod-MQ"; }
  std::unique_ptr<Forecaster> Clone() const override {
    return std::make_unique<ProdMQ>(*this);
  }

  bool initialized() const { return initialized_; }
  int magnitude_epoch() const { return r_; }
  int quadratic_epoch() const { return s_; }
  int closed_quadratic_epochs() const { return s_prev_; }
  double epoch_magnitude() const { return m_r_; }
  int c1_restarts() const { return c1_restarts_; }
  int c2_restarts() const { return c2_restarts_; }
  const SequenceStats& stats() const { return stats_; }

 private:
  double CurrentEta() const;

  double log_n_;
  bool initialized_ = false;
  int r_ = 0;
  int s_ = 0;
  int s_prev_ = 0;  // S_{r-1}
  double m_r_ = 0.0;
  int epoch_ = 0;
  int c1_restarts_ = 0;
  int c2_restarts_ = 0;
  Prod inner_;
  SequenceStats stats_;
};

}  // namespace regretlab

#endif  // REGRETLAB_PROD_H_
