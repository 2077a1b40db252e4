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

#ifndef REGRETLAB_BOUNDS_H_
#define REGRETLAB_BOUNDS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "regretlab/run.h"
#include "regretlab/stats.h"

namespace regretlab {

// Catalog of regret lower bounds. Every value below is a lower bound on
// Xhat_n - X*_n (or Xhat_n - X_{k,n} for the per-expert entries).
enum class BoundId {
  kB1 = 1,  // prod(eta), per expert: -ln N / eta - eta Q_k
  kB2,      // prod with tuned eta, per expert with Q_k <= Q
  kB3,      // prod-Q(M)
  kB4,      // prod-M(Q), per expert with Q_k <= Q
  kB5,      // prod-MQ
  kB6,      // weighted majority, known range E
  kB7,      // weighted majority, unknown range
  kB8,      // weighted majority, unknown range, sum of squared ranges
  kB9,      // prod-Q(E) on payoffs translated by the forecaster's reward
  kB10,     // weighted majority, unknown range, one-sided games
  kB11,     // prod-Q(2M) on reward-translated payoffs, one-sided games
  kB12,     // weighted majority, unknown range, signed games
};

inline constexpr int kNumBounds = 12;

std::string_view BoundName(BoundId id);       // "B1".."B12"
std::string_view BoundSummary(BoundId id);    // one-line description
std::optional<BoundId> ParseBoundId(std::string_view name);  // "B3" or "3"
std::vector<BoundId> AllBounds();
bool IsPerExpertBound(BoundId id);

// Closed forms. `log_experts` is ln N and `rounds` is n.

// -ln N / eta - eta Q_k.
double ProdFixedRateBound(double log_experts, double eta, double quad_k);
// -max{2 sqrt(Q ln N), 4 M ln N}.
double ProdTunedBound(double bound_m, double bound_q, double log_experts);
// 2M(1 + log_4 n + 2(1 + floor(log_2(ln N) / 2)) ln N), nonnegative.
double ProdQRemainder(double bound_m, double rounds, double log_experts);
// -8 sqrt(ln N max_s Q*_s) - ProdQRemainder.
double ProdQBound(double q_star_envelope, double bound_m, double rounds,
                  double log_experts);
// -2 sqrt(Q ln N) - 12 M (1 + ln N).
double ProdMBound(double bound_q, double magnitude, double log_experts);
// -32 M sqrt(q ln N) - 22 M (1 + ln N) - 2 M log_2 n
//   - 4 M ceil(log_2(ln N) / 2),  q = max{1, ratio_envelope}.
double ProdMQBound(double magnitude, double ratio_envelope, double rounds,
                   double log_experts);
// -4 sqrt(V ln N) - 2 E ln N - E / 2.
double WmKnownRangeBound(double variance, double range_e, double log_experts);
// -4 sqrt(V ln N) - 4 E ln N - 6 E.
double WmUnknownRangeBound(double variance, double range_e,
                           double log_experts);
// -2 sqrt(ln N sum_t E_t^2) - 4 E ln N - 6 E.
double WmRangeSumBound(double sum_sq_range, double range_e,
                           double log_experts);
// -8 sqrt(ln N max_s R*_s) - ProdQRemainder with E in place of M.
double TranslatedProdQBound(double r_star_envelope, double range_e,
                            double rounds, double log_experts);
// -4 sqrt(|X*| (M - |X*| / n) ln N) - 39 M max{1, ln N}.
double OneSidedWmBound(double abs_best, double magnitude, double rounds,
                       double log_experts);
// kappa = 2 ProdQRemainder(M).
// -8 sqrt(2 M min{|X*|, M n - |X*|} ln N) - 128 M ln N - kappa
//   - 8 sqrt(2 M ln N kappa).
double OneSidedProdBound(double abs_best, double magnitude, double rounds,
                         double log_experts);
// Larger of OneSidedWmBound on the gain translation x - min_j x_j and on the
// loss translation x - max_j x_j. `gain_best` is max_j sum_t (x_j - min x),
// `loss_best` is min_j sum_t (max x - x_j), `max_range` is max_t E_t.
double SignedMinBound(double gain_best, double loss_best, double max_range,
                      double rounds, double log_experts);
// First-order comparator for prod-Q(M): B3 with M max_s A*_s in place of
// max_s Q*_s.
double FirstOrderComparator(double a_star_envelope, double bound_m,
                            double rounds, double log_experts);
// Zero-order comparator for prod-Q(M): B3 with n M^2 in place of max_s Q*_s.
double ZeroOrderComparator(double bound_m, double rounds, double log_experts);

// Algorithm parameters a bound may need.
struct BoundParameters {
  std::optional<double> eta;
  std::optional<double> bound_m;
  std::optional<double> bound_q;
  std::optional<double> range_e;
};

// Full bound expression for `id` given run statistics. Realized quantities
// (max |x|, max E_t, V_n, envelopes) come from `stats`; declared ones from
// `params`. Per-expert bounds need `expert`. Throws InputError naming the
// first missing input.
double EvaluateBound(BoundId id, const SequenceStats& stats,
                     const BoundParameters& params,
                     std::optional<std::size_t> expert = std::nullopt);

struct BoundReport {
  BoundId id = BoundId::kB1;
  double bound_value = 0.0;
  double measured = 0.0;  // Xhat_n - X*_n, or Xhat_n - X_{k,n}
  double slack = 0.0;     // measured - bound_value
  bool holds = true;
  // Expert with the smallest slack for per-expert bounds; empty when no
  // expert satisfies the bound's hypothesis (the bound is then vacuous).
  std::optional<std::size_t> expert;
};

inline constexpr double kHoldsTolerance = 1e-9;

bool SlackHolds(double slack, double measured);

struct VerifyOptions {
  // Lower the measured reward by max{1, 10 |bound|} to force a violation.
  bool corrupt = false;
};

// Throws ConfigError if `id` does not apply to the algorithm, translation
// rule or game kind of the trace.
void CheckCompatible(BoundId id, const RunTrace& trace);

BoundParameters ParametersFor(const AlgorithmSpec& spec,
                              std::size_t num_experts);

BoundReport Verify(const RunTrace& trace, BoundId id,
                   const VerifyOptions& options = {});

// Bounds whose hypotheses the algorithm and translation rule can satisfy.
// One-sided bounds are included only for one-sided `game`.
std::vector<BoundId> CompatibleBounds(const AlgorithmSpec& spec,
                                      GameKind game);

}  // namespace regretlab

#endif  // REGRETLAB_BOUNDS_H_
