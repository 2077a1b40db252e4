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

#include "regretlab/adversary.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "regretlab/errors.h"
#include "regretlab/rng.h"

namespace regretlab {
namespace {

void Validate(const GeneratorSpec& spec) {
  if (spec.num_experts < 2) throw InputError("generator needs N >= 2");
  if (spec.num_rounds < 1) throw InputError("generator needs n >= 1");
  if (!(spec.magnitude > 0.0) || !std::isfinite(spec.magnitude)) {
    throw InputError("generator magnitude must be positive and finite");
  }
  switch (spec.kind) {
    case GeneratorKind::kBernoulliGain:
      if (!(spec.probability >= 0.0 && spec.probability <= 1.0)) {
        throw InputError("bernoulli probability must lie in [0, 1]");
      }
      break;
    case GeneratorKind::kOutlier:
      if (!(spec.spike > 0.0) || !std::isfinite(spec.spike)) {
        throw InputError("outlier spike must be positive and finite");
      }
      if (!(spec.spike_rate >= 0.0 && spec.spike_rate <= 1.0)) {
        throw InputError("outlier rate must lie in [0, 1]");
      }
      break;
    case GeneratorKind::kLeaderFlip:
      if (spec.period < 1) throw InputError("leader_flip period must be >= 1");
      break;
    default:
      break;
  }
}

// Expert f_b = b mod N is favored in block b and gains; everybody else loses
// at 1/(N-1) of that rate, so each expert climbs from last to first during
// its own block. Odd experts gain with a smaller spread, so the quadratic
// penalty of the leader jumps down and up as leadership rotates.
void FillLeaderFlip(const GeneratorSpec& spec, Rng& rng,
                    std::vector<double>& row, std::size_t t) {
  const std::size_t n = spec.num_experts;
  const std::size_t favored = (t / spec.period) % n;
  const double m = spec.magnitude;
  const double loss_scale = m / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.NextUnit();
    if (i == favored) {
      row[i] = (i % 2 == 0) ? m * u : m * (0.25 + 0.5 * u);
    } else {
      row[i] = -loss_scale * u;
    }
  }
}

}  // namespace

std::string_view GeneratorKindName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniformSigned:
      return "uniform_signed";
    case GeneratorKind::kBernoulliGain:
      return "bernoulli_gain";
    case GeneratorKind::kLossGame:
      return "loss_game";
    case GeneratorKind::kOutlier:
      return "outlier";
    case GeneratorKind::kLeaderFlip:
      return "leader_flip";
  }
  return "unknown";
}

std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name) {
  for (auto kind : {GeneratorKind::kUniformSigned, GeneratorKind::kBernoulliGain,
                    GeneratorKind::kLossGame, GeneratorKind::kOutlier,
                    GeneratorKind::kLeaderFlip}) {
    if (GeneratorKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

PayoffSequence Generate(const GeneratorSpec& spec) {
  Validate(spec);
  Rng rng(spec.seed);
  const std::size_t n = spec.num_experts;
  const double m = spec.magnitude;
  std::vector<double> values;
  values.reserve(n * spec.num_rounds);
  std::vector<double> row(n);
  for (std::size_t t = 0; t < spec.num_rounds; ++t) {
    switch (spec.kind) {
      case GeneratorKind::kUniformSigned:
        for (double& v : row) v = rng.Uniform(-m, m);
        break;
      case GeneratorKind::kBernoulliGain:
        for (double& v : row) v = rng.Bernoulli(spec.probability) ? m : 0.0;
        break;
      case GeneratorKind::kLossGame:
        for (double& v : row) v = -m * rng.NextUnit();
        break;
      case GeneratorKind::kOutlier:
        for (double& v : row) {
          v = rng.Uniform(-m, m);
          if (rng.Bernoulli(spec.spike_rate)) v = -spec.spike;
        }
        break;
      case GeneratorKind::kLeaderFlip:
        FillLeaderFlip(spec, rng, row, t);
        break;
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return PayoffSequence(n, std::move(values));
}

double DeclaredMagnitude(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::kOutlier) {
    return std::max(spec.magnitude, spec.spike);
  }
  return spec.magnitude;
}

double DeclaredRange(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kUniformSigned:
      return 2.0 * spec.magnitude;
    case GeneratorKind::kBernoulliGain:
    case GeneratorKind::kLossGame:
      return spec.magnitude;
    case GeneratorKind::kOutlier:
      return spec.magnitude + std::max(spec.magnitude, spec.spike);
    case GeneratorKind::kLeaderFlip:
      return 2.0 * spec.magnitude;
  }
  return 2.0 * DeclaredMagnitude(spec);
}

GameKind DeclaredGame(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kBernoulliGain:
      return GameKind::kGain;
    case GeneratorKind::kLossGame:
      return GameKind::kLoss;
    default:
      return GameKind::kSigned;
  }
}

PayoffSequence Scale(const PayoffSequence& payoffs, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("scale factor must be positive and finite");
  }
  std::vector<double> values = payoffs.values();
  for (double& v : values) v *= alpha;
  return PayoffSequence(payoffs.num_experts(), std::move(values));
}

PayoffSequence Translate(const PayoffSequence& payoffs,
                         std::span<const double> shifts) {
  if (shifts.size() != payoffs.num_rounds()) {
    throw InputError("translation needs one shift per round: got " +
                     std::to_string(shifts.size()) + ", expected " +
                     std::to_string(payoffs.num_rounds()));
  }
  std::vector<double> values = payoffs.values();
  const std::size_t n = payoffs.num_experts();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= shifts[i / n];
  return PayoffSequence(n, std::move(values));
}

PayoffSequence Negate(const PayoffSequence& payoffs) {
  std::vector<double> values = payoffs.values();
  for (double& v : values) v = -v;
  return PayoffSequence(payoffs.num_experts(), std::move(values));
}

}  // namespace regretlab
