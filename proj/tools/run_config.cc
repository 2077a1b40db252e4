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

#include "run_config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "regretlab/errors.h"

namespace regretlab::cli {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("cannot parse " + std::string(what) + " from '" +
                      std::string(text) + "'");
  }
  return value;
}

std::string Shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

GeneratorSpec ParseGeneratorSpec(std::string_view text,
                                 std::size_t num_experts,
                                 std::size_t num_rounds, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.num_experts = num_experts;
  spec.num_rounds = num_rounds;
  spec.seed = seed;

  const std::size_t colon = text.find(':');
  const std::string_view kind_name = text.substr(0, colon);
  const auto kind = ParseGeneratorKind(kind_name);
  if (!kind) {
    throw ConfigError("unknown generator '" + std::string(kind_name) + "'");
  }
  spec.kind = *kind;
  if (colon == std::string_view::npos) return spec;

  for (std::string_view item : Split(text.substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("generator option '" + std::string(item) +
                        "' is not key=value");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "m") {
      spec.magnitude = ParseNumber<double>(value, key);
    } else if (key == "p") {
      spec.probability = ParseNumber<double>(value, key);
    } else if (key == "spike") {
      spec.spike = ParseNumber<double>(value, key);
    } else if (key == "rate") {
      spec.spike_rate = ParseNumber<double>(value, key);
    } else if (key == "period") {
      spec.period = ParseNumber<std::size_t>(value, key);
    } else {
      throw ConfigError("unknown generator option '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string FormatGeneratorSpec(const GeneratorSpec& spec) {
  std::string out(GeneratorKindName(spec.kind));
  out += ":m=" + Shortest(spec.magnitude);
  switch (spec.kind) {
    case GeneratorKind::kBernoulliGain:
      out += ",p=" + Shortest(spec.probability);
      break;
    case GeneratorKind::kOutlier:
      out += ",spike=" + Shortest(spec.spike) +
             ",rate=" + Shortest(spec.spike_rate);
      break;
    case GeneratorKind::kLeaderFlip:
      out += ",period=" + std::to_string(spec.period);
      break;
    default:
      break;
  }
  return out;
}

std::vector<BoundId> ParseBoundList(std::string_view text) {
  if (text.empty() || text == "all") return {};
  std::vector<BoundId> out;
  for (std::string_view item : Split(text, ',')) {
    const auto id = ParseBoundId(item);
    if (!id) throw ConfigError("unknown bound '" + std::string(item) + "'");
    out.push_back(*id);
  }
  return out;
}

std::vector<std::size_t> ParseSizeList(std::string_view text) {
  std::vector<std::size_t> out;
  for (std::string_view item : Split(text, ',')) {
    out.push_back(ParseNumber<std::size_t>(item, "integer list"));
  }
  return out;
}

std::vector<double> ParseDoubleList(std::string_view text) {
  std::vector<double> out;
  for (std::string_view item : Split(text, ',')) {
    out.push_back(ParseNumber<double>(item, "number list"));
  }
  return out;
}

std::string ResolveOutDir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env) {
    return env;
  }
  return kDefaultOutDir;
}

void FillDefaults(AlgorithmSpec& spec, double magnitude, double range,
                  std::size_t num_experts, std::size_t num_rounds) {
  // Degenerate all-zero inputs still need positive parameters.
  const double m = magnitude > 0.0 ? magnitude : 1.0;
  const double e = range > 0.0 ? range : 1.0;
  const double n = static_cast<double>(num_rounds);
  const bool translated = spec.translation != TranslationRule::kNone;
  switch (spec.algorithm) {
    case Algorithm::kProd:
      if (spec.eta) break;
      if (!spec.bound_m) spec.bound_m = translated ? 2.0 * m : m;
      if (!spec.bound_q) spec.bound_q = n * *spec.bound_m * *spec.bound_m;
      break;
    case Algorithm::kProdQ:
      if (!spec.bound_m) spec.bound_m = translated ? 2.0 * m : m;
      break;
    case Algorithm::kProdM:
      if (!spec.bound_q) {
        const double mm = translated ? 2.0 * m : m;
        spec.bound_q = n * mm * mm;
      }
      break;
    case Algorithm::kProdMQ:
      break;
    case Algorithm::kWmFixed:
      if (!spec.eta) {
        spec.eta = std::sqrt(8.0 * std::log(static_cast<double>(num_experts)) /
                             n) /
                   e;
      }
      break;
    case Algorithm::kWmKnownRange:
      if (!spec.range_e) spec.range_e = e;
      break;
    case Algorithm::kWmUnknownRange:
      break;
  }
}

}  // namespace regretlab::cli
