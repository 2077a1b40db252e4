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

#include "regretlab/bounds.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "regretlab/errors.h"

namespace regretlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContractSlack = 1e-12;

double Need(const std::optional<double>& value, std::string_view name,
            BoundId id) {
  if (!value) {
    throw InputError(std::string(BoundName(id)) + " needs " +
                     std::string(name));
  }
  return *value;
}

double Sqrt0(double v) { return std::sqrt(std::max(0.0, v)); }

void RequireAlgorithm(BoundId id, const AlgorithmSpec& spec,
                      Algorithm algorithm) {
  if (spec.algorithm != algorithm) {
    throw ConfigError(std::string(BoundName(id)) + " applies to " +
                      std::string(AlgorithmName(algorithm)) + ", not " +
                      std::string(AlgorithmName(spec.algorithm)));
  }
}

void RequireTranslation(BoundId id, const AlgorithmSpec& spec,
                        TranslationRule rule) {
  if (spec.translation != rule) {
    throw ConfigError(std::string(BoundName(id)) + " needs translation '" +
                      std::string(TranslationRuleName(rule)) + "', got '" +
                      std::string(TranslationRuleName(spec.translation)) +
                      "'");
  }
}

void RequireOneSided(BoundId id, const RunTrace& trace) {
  if (!IsOneSided(trace.payoffs)) {
    throw ConfigError(std::string(BoundName(id)) +
                      " holds only for one-sided games; input is signed");
  }
}

bool WithinBound(double value, double bound) {
  return value <= bound * (1.0 + kContractSlack);
}

}  // namespace

std::string_view BoundName(BoundId id) {
  static constexpr std::array<std::string_view, kNumBounds> kNames = {
      "B1", "B2", "B3", "B4",  "B5",  "B6",
      "B7", "B8", "B9", "B10", "B11", "B12"};
  return kNames[static_cast<int>(id) - 1];
}

std::string_view BoundSummary(BoundId id) {
  switch (id) {
    case BoundId::kB1:
      return "prod(eta) per-expert bound";
    case BoundId::kB2:
      return "prod with tuned eta";
    case BoundId::kB3:
      return "prod-Q(M) doubling on Q*";
    case BoundId::kB4:
      return "prod-M(Q) doubling on M";
    case BoundId::kB5:
      return "prod-MQ nested doubling";
    case BoundId::kB6:
      return "weighted majority, known range";
    case BoundId::kB7:
      return "weighted majority, unknown range";
    case BoundId::kB8:
      return "weighted majority, squared ranges";
    case BoundId::kB9:
      return "prod-Q(E) on reward-translated payoffs";
    case BoundId::kB10:
      return "weighted majority, one-sided small/large payoffs";
    case BoundId::kB11:
      return "prod-Q(2M) translated, one-sided small/large payoffs";
    case BoundId::kB12:
      return "weighted majority, signed-game min over translations";
  }
  return "";
}

std::optional<BoundId> ParseBoundId(std::string_view name) {
  if (!name.empty() && (name.front() == 'B' || name.front() == 'b')) {
    name.remove_prefix(1);
  }
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) {
    return std::nullopt;
  }
  if (value < 1 || value > kNumBounds) return std::nullopt;
  return static_cast<BoundId>(value);
}

std::vector<BoundId> AllBounds() {
  std::vector<BoundId> out;
  for (int i = 1; i <= kNumBounds; ++i) out.push_back(static_cast<BoundId>(i));
  return out;
}

bool IsPerExpertBound(BoundId id) {
  return id == BoundId::kB1 || id == BoundId::kB2 || id == BoundId::kB4;
}

double ProdFixedRateBound(double log_experts, double eta, double quad_k) {
  return -log_experts / eta - eta * quad_k;
}

double ProdTunedBound(double bound_m, double bound_q, double log_experts) {
  return -std::max(2.0 * Sqrt0(bound_q * log_experts),
                   4.0 * bound_m * log_experts);
}

double ProdQRemainder(double bound_m, double rounds, double log_experts) {
  const double log4_n = std::log2(rounds) / 2.0;
  const double inner = 1.0 + std::floor(std::log2(log_experts) / 2.0);
  return 2.0 * bound_m * (1.0 + log4_n + 2.0 * inner * log_experts);
}

double ProdQBound(double q_star_envelope, double bound_m, double rounds,
                  double log_experts) {
  return -8.0 * Sqrt0(log_experts * q_star_envelope) -
         ProdQRemainder(bound_m, rounds, log_experts);
}

double ProdMBound(double bound_q, double magnitude, double log_experts) {
  return -2.0 * Sqrt0(bound_q * log_experts) -
         12.0 * magnitude * (1.0 + log_experts);
}

double ProdMQBound(double magnitude, double ratio_envelope, double rounds,
                   double log_experts) {
  const double q = std::max(1.0, ratio_envelope);
  return -32.0 * magnitude * Sqrt0(q * log_experts) -
         22.0 * magnitude * (1.0 + log_experts) -
         2.0 * magnitude * std::log2(rounds) -
         4.0 * magnitude * std::ceil(std::log2(log_experts) / 2.0);
}

double WmKnownRangeBound(double variance, double range_e, double log_experts) {
  return -4.0 * Sqrt0(variance * log_experts) - 2.0 * range_e * log_experts -
         range_e / 2.0;
}

double WmUnknownRangeBound(double variance, double range_e,
                           double log_experts) {
  return -4.0 * Sqrt0(variance * log_experts) - 4.0 * range_e * log_experts -
         6.0 * range_e;
}

double WmRangeSumBound(double sum_sq_range, double range_e,
                           double log_experts) {
  return -2.0 * Sqrt0(log_experts * sum_sq_range) -
         4.0 * range_e * log_experts - 6.0 * range_e;
}

double TranslatedProdQBound(double r_star_envelope, double range_e,
                            double rounds, double log_experts) {
  return ProdQBound(r_star_envelope, range_e, rounds, log_experts);
}

double OneSidedWmBound(double abs_best, double magnitude, double rounds,
                       double log_experts) {
  return -4.0 * Sqrt0(abs_best * (magnitude - abs_best / rounds) *
                      log_experts) -
         39.0 * magnitude * std::max(1.0, log_experts);
}

double OneSidedProdBound(double abs_best, double magnitude, double rounds,
                         double log_experts) {
  const double kappa = 2.0 * ProdQRemainder(magnitude, rounds, log_experts);
  const double smaller = std::min(abs_best, magnitude * rounds - abs_best);
  return -8.0 * Sqrt0(2.0 * magnitude * smaller * log_experts) -
         128.0 * magnitude * log_experts - kappa -
         8.0 * Sqrt0(2.0 * magnitude * log_experts * kappa);
}

double SignedMinBound(double gain_best, double loss_best, double max_range,
                      double rounds, double log_experts) {
  return std::max(OneSidedWmBound(gain_best, max_range, rounds, log_experts),
                  OneSidedWmBound(loss_best, max_range, rounds, log_experts));
}

double FirstOrderComparator(double a_star_envelope, double bound_m,
                            double rounds, double log_experts) {
  return ProdQBound(bound_m * a_star_envelope, bound_m, rounds, log_experts);
}

double ZeroOrderComparator(double bound_m, double rounds, double log_experts) {
  return ProdQBound(rounds * bound_m * bound_m, bound_m, rounds, log_experts);
}

double EvaluateBound(BoundId id, const SequenceStats& stats,
                     const BoundParameters& params,
                     std::optional<std::size_t> expert) {
  if (stats.rounds() == 0) {
    throw InputError(std::string(BoundName(id)) + " needs at least one round");
  }
  const double ln_n = std::log(static_cast<double>(stats.num_experts()));
  const double n = static_cast<double>(stats.rounds());
  const double m = stats.max_abs_payoff();
  const double e = stats.max_range();
  const double v = stats.cum_variance();

  switch (id) {
    case BoundId::kB1: {
      const double eta = Need(params.eta, "eta", id);
      if (!expert) throw InputError("B1 needs an expert index");
      if (*expert >= stats.num_experts()) {
        throw InputError("B1 expert index out of range");
      }
      return ProdFixedRateBound(ln_n, eta, stats.quad()[*expert]);
    }
    case BoundId::kB2:
      return ProdTunedBound(Need(params.bound_m, "bound_m", id),
                              Need(params.bound_q, "bound_q", id), ln_n);
    case BoundId::kB3:
      return ProdQBound(stats.q_star_envelope(),
                        Need(params.bound_m, "bound_m", id), n, ln_n);
    case BoundId::kB4:
      return ProdMBound(Need(params.bound_q, "bound_q", id), m, ln_n);
    case BoundId::kB5:
      return ProdMQBound(m, stats.ratio_envelope(), n, ln_n);
    case BoundId::kB6:
      return WmKnownRangeBound(v, Need(params.range_e, "range_e", id), ln_n);
    case BoundId::kB7:
      return WmUnknownRangeBound(v, e, ln_n);
    case BoundId::kB8:
      return WmRangeSumBound(stats.sum_sq_range(), e, ln_n);
    case BoundId::kB9:
      return TranslatedProdQBound(stats.r_star_envelope(),
                                  Need(params.range_e, "range_e", id), n,
                                  ln_n);
    case BoundId::kB10:
      return OneSidedWmBound(std::abs(stats.best_cum()), m, n, ln_n);
    case BoundId::kB11:
      return OneSidedProdBound(std::abs(stats.best_cum()),
                               Need(params.bound_m, "bound_m", id) / 2.0, n,
                               ln_n);
    case BoundId::kB12: {
      const auto gains = stats.excess_over_min();
      const auto losses = stats.deficit_to_max();
      return SignedMinBound(*std::max_element(gains.begin(), gains.end()),
                            *std::min_element(losses.begin(), losses.end()),
                            e, n, ln_n);
    }
  }
  throw InputError("unknown bound id");
}

bool SlackHolds(double slack, double measured) {
  return slack >= -kHoldsTolerance * (1.0 + std::abs(measured));
}

void CheckCompatible(BoundId id, const RunTrace& trace) {
  const AlgorithmSpec& spec = trace.spec;
  const SequenceStats& stats = trace.stats;
  switch (id) {
    case BoundId::kB1:
      RequireAlgorithm(id, spec, Algorithm::kProd);
      RequireTranslation(id, spec, TranslationRule::kNone);
      return;
    case BoundId::kB2: {
      RequireAlgorithm(id, spec, Algorithm::kProd);
      RequireTranslation(id, spec, TranslationRule::kNone);
      if (spec.eta || !spec.bound_m || !spec.bound_q) {
        throw ConfigError(
            "B2 needs prod tuned from --bound-m and --bound-q without --eta");
      }
      const auto& values = trace.payoffs.values();
      const double lowest =
          values.empty() ? 0.0
                         : *std::min_element(values.begin(), values.end());
      if (!WithinBound(-lowest, *spec.bound_m)) {
        throw ConfigError("B2 needs every payoff >= -M");
      }
      return;
    }
    case BoundId::kB3:
      RequireAlgorithm(id, spec, Algorithm::kProdQ);
      RequireTranslation(id, spec, TranslationRule::kNone);
      return;
    case BoundId::kB4:
      RequireAlgorithm(id, spec, Algorithm::kProdM);
      RequireTranslation(id, spec, TranslationRule::kNone);
      return;
    case BoundId::kB5:
      RequireAlgorithm(id, spec, Algorithm::kProdMQ);
      RequireTranslation(id, spec, TranslationRule::kNone);
      return;
    case BoundId::kB6:
      RequireAlgorithm(id, spec, Algorithm::kWmKnownRange);
      if (!spec.range_e || !WithinBound(stats.max_range(), *spec.range_e)) {
        throw ConfigError("B6 needs every effective range <= --range-e");
      }
      return;
    case BoundId::kB7:
    case BoundId::kB8:
    case BoundId::kB12:
      RequireAlgorithm(id, spec, Algorithm::kWmUnknownRange);
      return;
    case BoundId::kB9:
      RequireAlgorithm(id, spec, Algorithm::kProdQ);
      RequireTranslation(id, spec, TranslationRule::kReward);
      return;
    case BoundId::kB10:
      RequireAlgorithm(id, spec, Algorithm::kWmUnknownRange);
      RequireOneSided(id, trace);
      return;
    case BoundId::kB11:
      RequireAlgorithm(id, spec, Algorithm::kProdQ);
      RequireTranslation(id, spec, TranslationRule::kReward);
      RequireOneSided(id, trace);
      if (!spec.bound_m ||
          !WithinBound(stats.max_abs_payoff(), *spec.bound_m / 2.0)) {
        throw ConfigError("B11 needs prod-Q(2M) with every |x| <= M");
      }
      return;
  }
  throw ConfigError("unknown bound id");
}

BoundParameters ParametersFor(const AlgorithmSpec& spec,
                              std::size_t num_experts) {
  BoundParameters params{.eta = spec.eta,
                         .bound_m = spec.bound_m,
                         .bound_q = spec.bound_q,
                         .range_e = spec.range_e};
  if (spec.algorithm == Algorithm::kProd) {
    params.eta = ResolveProdEta(spec, num_experts);
  }
  if (spec.algorithm == Algorithm::kProdQ &&
      spec.translation == TranslationRule::kReward) {
    // prod-Q(E) on reward-translated payoffs: its parameter is a range.
    params.range_e = spec.bound_m;
  }
  return params;
}

BoundReport Verify(const RunTrace& trace, BoundId id,
                   const VerifyOptions& options) {
  CheckCompatible(id, trace);
  const SequenceStats& stats = trace.stats;
  const BoundParameters params =
      ParametersFor(trace.spec, stats.num_experts());
  const double reward = stats.cum_reward();

  BoundReport report;
  report.id = id;
  if (IsPerExpertBound(id)) {
    report.bound_value = -kInf;
    report.measured = reward - stats.best_cum();
    report.slack = kInf;
    for (std::size_t k = 0; k < stats.num_experts(); ++k) {
      if (id != BoundId::kB1 && !(stats.quad()[k] <= *params.bound_q)) {
        continue;
      }
      const double bound = EvaluateBound(id, stats, params, k);
      const double measured = reward - stats.cum_payoff()[k];
      const double slack = measured - bound;
      if (!report.expert || slack < report.slack) {
        report.expert = k;
        report.bound_value = bound;
        report.measured = measured;
        report.slack = slack;
      }
    }
  } else {
    report.bound_value = EvaluateBound(id, stats, params);
    report.measured = reward - stats.best_cum();
    report.slack = report.measured - report.bound_value;
  }

  if (options.corrupt) {
    const double offset = std::isfinite(report.bound_value)
                              ? std::max(1.0, 10.0 * std::abs(report.bound_value))
                              : 1.0;
    report.measured -= offset;
    report.slack -= offset;
  }
  report.holds = SlackHolds(report.slack, report.measured);
  return report;
}

std::vector<BoundId> CompatibleBounds(const AlgorithmSpec& spec,
                                      GameKind game) {
  const bool one_sided = game != GameKind::kSigned;
  const bool plain = spec.translation == TranslationRule::kNone;
  std::vector<BoundId> out;
  switch (spec.algorithm) {
    case Algorithm::kProd:
      if (!plain) break;
      out.push_back(BoundId::kB1);
      if (!spec.eta && spec.bound_m && spec.bound_q) {
        out.push_back(BoundId::kB2);
      }
      break;
    case Algorithm::kProdQ:
      if (plain) {
        out.push_back(BoundId::kB3);
      } else if (spec.translation == TranslationRule::kReward) {
        out.push_back(BoundId::kB9);
        if (one_sided) out.push_back(BoundId::kB11);
      }
      break;
    case Algorithm::kProdM:
      if (plain) out.push_back(BoundId::kB4);
      break;
    case Algorithm::kProdMQ:
      if (plain) out.push_back(BoundId::kB5);
      break;
    case Algorithm::kWmFixed:
      break;
    case Algorithm::kWmKnownRange:
      out.push_back(BoundId::kB6);
      break;
    case Algorithm::kWmUnknownRange:
      out.push_back(BoundId::kB7);
      out.push_back(BoundId::kB8);
      if (one_sided) out.push_back(BoundId::kB10);
      out.push_back(BoundId::kB12);
      break;
  }
  return out;
}

}  // namespace regretlab
