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

#ifndef REGRETLAB_ERRORS_H_
#define REGRETLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regretlab {

// Malformed caller input: wrong dimensions, non-finite payoffs, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound or algorithm was asked to run on inputs it is not defined for
// (e.g. a one-sided bound on a signed game, or a bound paired with the wrong
// forecaster).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the multiplicative update when 1 + eta * x would fall below 1/2.
// This means the payoff bound the caller supplied was wrong.
class ValidityViolation : public std::domain_error {
 public:
  ValidityViolation(std::size_t expert, double eta, double payoff);

  std::size_t expert() const { return expert_; }
  double eta() const { return eta_; }
  double payoff() const { return payoff_; }

 private:
  std::size_t expert_;
  double eta_;
  double payoff_;
};

}  // namespace regretlab

#endif  // REGRETLAB_ERRORS_H_
