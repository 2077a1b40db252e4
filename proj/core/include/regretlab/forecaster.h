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

#ifndef REGRETLAB_FORECASTER_H_
#define REGRETLAB_FORECASTER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "regretlab/types.h"

namespace regretlab {

// A full-information forecaster: Predict() gives p_t, then Update(x_t)
// reveals the payoff vector of that round.
class Forecaster {
 public:
  virtual ~Forecaster() = default;

  virtual std::size_t num_experts() const = 0;
  virtual Distribution Predict() const = 0;
  virtual void Update(std::span<const double> payoffs) = 0;

  // Learning rate that produced (or will produce) the next prediction.
  // +infinity means "no information yet"; NaN means not applicable.
  virtual double LearningRate() const = 0;
  // Number of restarts so far. Restart-free forecasters stay at 0.
  virtual int Epoch() const { return 0; }
  virtual std::string Name() const = 0;
  virtual std::unique_ptr<Forecaster> Clone() const = 0;

  // Predict, then update. Returns the prediction for this round.
  Distribution Step(std::span<const double> payoffs) {
    Distribution p = Predict();
    Update(payoffs);
    return p;
  }
};

}  // namespace regretlab

#endif  // REGRETLAB_FORECASTER_H_
