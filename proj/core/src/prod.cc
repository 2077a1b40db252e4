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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regretlab/errors.h"

namespace regretlab {
namespace {

double LogExperts(std::size_t num_experts) {
  if (num_experts < 2) {
    throw InputError("need at least 2 experts, got " +
                     std::to_string(num_experts));
  }
  return std::log(static_cast<double>(num_experts));
}

}  // namespace

// -- Prod ---------------------------------------------------------------------

Prod::Prod(std::size_t num_experts, double eta)
    : eta_(eta), log_weights_(num_experts, 0.0) {
  if (num_experts < 1) throw InputError("prod needs at least 1 expert");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("prod learning rate must be positive and finite");
  }
}

Distribution Prod::Predict() const {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  std::vector<double> w(log_weights_.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(log_weights_[i] - top);
  }
  return Distribution::Normalize(std::move(w));
}

void Prod::Update(std::span<const double> payoffs) {
  if (payoffs.size() != log_weights_.size()) {
    throw InputError("prod update with " + std::to_string(payoffs.size()) +
                     " payoffs, expected " +
                     std::to_string(log_weights_.size()));
  }
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (eta_ * payoffs[i] < -0.5 - kValiditySlack) {
      throw ValidityViolation(i, eta_, payoffs[i]);
    }
  }
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    log_weights_[i] += std::log1p(eta_ * payoffs[i]);
    top = std::max(top, log_weights_[i]);
  }
  for (double& lw : log_weights_) lw -= top;
}

void Prod::Reset(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("prod learning rate must be positive and finite");
  }
  eta_ = eta;
  std::fill(log_weights_.begin(), log_weights_.end(), 0.0);
}

double TunedProdEta(double bound_m, double bound_q, std::size_t num_experts) {
  if (!(bound_m > 0.0) || !(bound_q > 0.0)) {
    throw InputError("tuned prod rate needs M > 0 and Q > 0");
  }
  const double log_n = LogExperts(num_experts);
  return std::min(1.0 / (2.0 * bound_m), std::sqrt(log_n / bound_q));
}

// -- ProdQ --------------------------------------------------------------------

ProdQ::ProdQ(std::size_t num_experts, double bound_m)
    : bound_m_(bound_m),
      log_n_(LogExperts(num_experts)),
      inner_(num_experts, 1.0 / (2.0 * bound_m)),
      stats_(num_experts) {
  if (!(bound_m > 0.0) || !std::isfinite(bound_m)) {
    throw InputError("prod-Q needs a positive payoff bound M");
  }
  inner_.Reset(EtaForEpoch(0));
}

double ProdQ::EtaForEpoch(int r) const {
  return std::min(1.0 / (2.0 * bound_m_),
                  std::sqrt(log_n_) / std::ldexp(bound_m_, r));
}

void ProdQ::Update(std::span<const double> payoffs) {
  if (payoffs.size() != num_experts()) {
    throw InputError("prod-Q update dimension mismatch");
  }
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (std::abs(payoffs[i]) > bound_m_ * (1.0 + kValiditySlack)) {
      throw InputError("prod-Q payoff " + std::to_string(payoffs[i]) +
                       " of expert " + std::to_string(i) +
                       " exceeds the bound M = " + std::to_string(bound_m_));
    }
  }
  stats_.Update(payoffs, inner_.Predict());
  inner_.Update(payoffs);
  const double threshold = std::ldexp(bound_m_ * bound_m_, 2 * epoch_);
  if (stats_.q_star() > threshold) {
    ++epoch_;
    inner_.Reset(EtaForEpoch(epoch_));
  }
}

// -- ProdM --------------------------------------------------------------------

ProdM::ProdM(std::size_t num_experts, double bound_q)
    : initial_magnitude_(0.0),
      anchor_(0.0),
      inner_(num_experts, 1.0),
      stats_(num_experts) {
  const double log_n = LogExperts(num_experts);
  if (!(bound_q > 0.0) || !std::isfinite(bound_q)) {
    throw InputError("prod-M needs a positive quadratic bound Q");
  }
  initial_magnitude_ = std::sqrt(bound_q / (4.0 * log_n));
  anchor_ = initial_magnitude_;
  inner_.Reset(1.0 / (2.0 * initial_magnitude_));
}

void ProdM::Update(std::span<const double> payoffs) {
  stats_.Update(payoffs, inner_.Predict());
  const PowerOfTwo m = stats_.magnitude();
  if (m.defined() && m.value() > anchor_) {
    ++epoch_;
    anchor_ = m.value();
    inner_.Reset(1.0 / (2.0 * anchor_));
  } else {
    inner_.Update(payoffs);
  }
}

// -- ProdMQ -------------------------------------------------------------------

ProdMQ::ProdMQ(std::size_t num_experts)
    : log_n_(LogExperts(num_experts)),
      inner_(num_experts, 1.0),
      stats_(num_experts) {}

double ProdMQ::CurrentEta() const {
  return std::min(1.0 / (2.0 * m_r_),
                  std::sqrt(log_n_) / std::ldexp(m_r_, s_prev_ + s_));
}

double ProdMQ::LearningRate() const {
  return initialized_ ? inner_.eta()
                      : std::numeric_limits<double>::quiet_NaN();
}

void ProdMQ::Update(std::span<const double> payoffs) {
  stats_.Update(payoffs, inner_.Predict());
  const PowerOfTwo m = stats_.magnitude();
  if (!initialized_) {
    if (!m.defined()) return;
    initialized_ = true;
    m_r_ = m.value();
    inner_.Reset(CurrentEta());
  }
  const double m_t = m.value();
  if (m_t > m_r_) {
    s_prev_ += s_;
    s_ = 0;
    ++r_;
    m_r_ = m_t;
    ++c2_restarts_;
  } else if (stats_.q_star() > std::ldexp(m_t * m_t, 2 * (s_prev_ + s_))) {
    ++s_;
    ++c1_restarts_;
  } else {
    inner_.Update(payoffs);
    return;
  }
  ++epoch_;
  inner_.Reset(CurrentEta());
}

}  // namespace regretlab
