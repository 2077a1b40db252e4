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

#ifndef REGRETLAB_TESTS_ORACLES_H_
#define REGRETLAB_TESTS_ORACLES_H_

// Reference implementations used only by the tests. They recompute
// quantities from scratch with the plainest possible loops so that
// the library's incremental bookkeeping has something independent to be
// compared against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace regretlab::testing {

using Matrix = std::vector<std::vector<double>>;  // [round][expert]

inline double OracleRange(const std::vector<double>& x) {
  double lo = x[0];
  double hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

// Best expert by scanning: largest X, then smallest Q, then smallest index.
inline std::size_t OracleBest(const std::vector<double>& x,
                              const std::vector<double>& q) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (x[k] > x[best] || (x[k] == x[best] && q[k] < q[best])) best = k;
  }
  return best;
}

// Smallest 2^k with 2^k >= v, by repeated doubling/halving. v > 0.
inline double OraclePowerCeil(double v) {
  double p = 1.0;
  while (p < v) p *= 2.0;
  while (p / 2.0 >= v) p /= 2.0;
  return p;
}

struct OracleStats {
  std::vector<double> cum, quad, abs, rquad;
  double reward = 0.0;
  double variance = 0.0;
  double q_env = 0.0;
  double a_env = 0.0;
  double r_env = 0.0;
  double ratio_env = 0.0;
  double max_range = 0.0;
  double sum_sq_range = 0.0;
  double magnitude = 0.0;  // 0 means undefined
};

// Recomputes every statistic at every prefix from the full history.
inline OracleStats RecomputeStats(const Matrix& x, const Matrix& p) {
  const std::size_t n_experts = x.at(0).size();
  OracleStats s;
  for (std::size_t t = 1; t <= x.size(); ++t) {
    s.cum.assign(n_experts, 0.0);
    s.quad.assign(n_experts, 0.0);
    s.abs.assign(n_experts, 0.0);
    s.rquad.assign(n_experts, 0.0);
    s.reward = 0.0;
    s.variance = 0.0;
    double biggest = 0.0;
    for (std::size_t r = 0; r < t; ++r) {
      double xhat = 0.0;
      for (std::size_t i = 0; i < n_experts; ++i) xhat += p[r][i] * x[r][i];
      double var = 0.0;
      for (std::size_t i = 0; i < n_experts; ++i) {
        var += p[r][i] * (x[r][i] - xhat) * (x[r][i] - xhat);
      }
      s.reward += xhat;
      s.variance += var;
      for (std::size_t i = 0; i < n_experts; ++i) {
        s.cum[i] += x[r][i];
        s.quad[i] += x[r][i] * x[r][i];
        s.abs[i] += std::abs(x[r][i]);
        s.rquad[i] += (x[r][i] - xhat) * (x[r][i] - xhat);
        biggest = std::max(biggest, std::abs(x[r][i]));
      }
    }
    const std::size_t k = OracleBest(s.cum, s.quad);
    const std::size_t kr = OracleBest(s.cum, s.rquad);
    s.q_env = std::max(s.q_env, s.quad[k]);
    s.a_env = std::max(s.a_env, s.abs[k]);
    s.r_env = std::max(s.r_env, s.rquad[kr]);
    s.magnitude = biggest > 0.0 ? OraclePowerCeil(biggest) : 0.0;
    if (s.magnitude > 0.0) {
      s.ratio_env =
          std::max(s.ratio_env, s.quad[k] / (s.magnitude * s.magnitude));
    }
    const double e = OracleRange(x[t - 1]);
    s.max_range = std::max(s.max_range, e);
    s.sum_sq_range += e * e;
  }
  return s;
}

// Plain-product prod(eta) weights without logs: w_i = prod_t (1 + eta x_i).
inline std::vector<double> OracleProdWeights(const Matrix& x, double eta) {
  std::vector<double> w(x.at(0).size(), 1.0);
  for (const auto& row : x) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= 1.0 + eta * row[i];
  }
  return w;
}

inline Matrix RandomMatrix(std::size_t rounds, std::size_t experts, double lo,
                           double hi, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rounds, std::vector<double>(experts));
  for (auto& row : m) {
    for (double& v : row) v = u(gen);
  }
  return m;
}

inline bool NearRel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace regretlab::testing

#endif  // REGRETLAB_TESTS_ORACLES_H_
