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

#include "trace_io.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regretlab/errors.h"

namespace regretlab::cli {
namespace {

using Json = nlohmann::ordered_json;

Json Number(double v) {
  if (!std::isfinite(v)) return Json(nullptr);
  return Json(v);
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    std::string_view cell = line.substr(start, pos - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    out.push_back(cell);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseCell(std::string_view cell, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() ||
      ptr != cell.data() + cell.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad number '" +
                     std::string(cell) + "'");
  }
  return value;
}

Json StatsJson(const SequenceStats& s) {
  Json j;
  j["rounds"] = s.rounds();
  j["cum_reward"] = Number(s.cum_reward());
  j["best_expert"] = s.best_index() + 1;
  j["best_cum"] = Number(s.best_cum());
  j["regret"] = Number(s.regret());
  j["cum_variance"] = Number(s.cum_variance());
  j["q_star"] = Number(s.q_star());
  j["q_star_envelope"] = Number(s.q_star_envelope());
  j["a_star_envelope"] = Number(s.a_star_envelope());
  j["r_star_envelope"] = Number(s.r_star_envelope());
  j["ratio_envelope"] = Number(s.ratio_envelope());
  j["max_abs_payoff"] = Number(s.max_abs_payoff());
  j["max_range"] = Number(s.max_range());
  j["sum_sq_range"] = Number(s.sum_sq_range());
  j["magnitude_tracker"] = Number(s.magnitude().value());
  j["range_tracker"] = Number(s.range_tracker().value());
  Json cum = Json::array();
  for (double v : s.cum_payoff()) cum.push_back(Number(v));
  j["cum_payoff"] = std::move(cum);
  return j;
}

Json OptionalNumber(const std::optional<double>& v) {
  return v ? Number(*v) : Json(nullptr);
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

PayoffSequence ParsePayoffCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError("payoff CSV is empty");
  ++line_no;
  const auto header = SplitCells(line);
  if (header.size() < 3 || header[0] != "t") {
    throw InputError("payoff CSV header must be t,x_1,...,x_N with N >= 2");
  }
  const std::size_t n = header.size() - 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (header[i] != "x_" + std::to_string(i)) {
      throw InputError("payoff CSV header column " + std::to_string(i + 1) +
                       " must be x_" + std::to_string(i));
    }
  }
  PayoffSequence payoffs(n);
  std::vector<double> row(n);
  std::size_t expected_t = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = SplitCells(line);
    if (cells.size() != n + 1) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n + 1) + " columns, got " +
                       std::to_string(cells.size()));
    }
    const double t = ParseCell(cells[0], line_no);
    if (t != static_cast<double>(expected_t)) {
      throw InputError("line " + std::to_string(line_no) + ": expected t = " +
                       std::to_string(expected_t));
    }
    for (std::size_t i = 0; i < n; ++i) row[i] = ParseCell(cells[i + 1], line_no);
    payoffs.Append(row);
    ++expected_t;
  }
  if (payoffs.num_rounds() == 0) throw InputError("payoff CSV has no rounds");
  return payoffs;
}

PayoffSequence ReadPayoffCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return ParsePayoffCsv(in);
}

void WritePayoffCsv(const PayoffSequence& payoffs, std::ostream& out) {
  out << "t";
  for (std::size_t i = 1; i <= payoffs.num_experts(); ++i) out << ",x_" << i;
  out << '\n';
  for (std::size_t t = 0; t < payoffs.num_rounds(); ++t) {
    out << t + 1;
    for (double v : payoffs.round(t)) out << ',' << FormatDouble(v);
    out << '\n';
  }
}

void WriteTraceCsv(const RunTrace& trace, std::ostream& out) {
  const std::size_t n = trace.payoffs.num_experts();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",p_" << i;
  out << ",xhat,Xstar,regret,VarZ,E_t,M_t,Qstar,epoch\n";
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& r = trace.rounds[t];
    out << t + 1;
    for (double v : trace.payoffs.round(t)) out << ',' << FormatDouble(v);
    for (double v : trace.predictions[t].probs()) {
      out << ',' << FormatDouble(v);
    }
    out << ',' << FormatDouble(r.reward) << ',' << FormatDouble(r.best_cum)
        << ',' << FormatDouble(r.regret) << ',' << FormatDouble(r.variance)
        << ',' << FormatDouble(r.range) << ','
        << FormatDouble(r.magnitude.value()) << ',' << FormatDouble(r.q_star)
        << ',' << r.epoch << '\n';
  }
}

Json ReportJson(const BoundReport& report) {
  Json j;
  j["bound"] = BoundName(report.id);
  j["bound_value"] = Number(report.bound_value);
  j["measured"] = Number(report.measured);
  j["slack"] = Number(report.slack);
  j["holds"] = report.holds;
  j["expert"] = report.expert ? Json(*report.expert + 1) : Json(nullptr);
  return j;
}

Json SummaryJson(const RunTrace& trace, const std::string& source,
                 const std::vector<BoundReport>& reports) {
  const AlgorithmSpec& spec = trace.spec;
  Json j;
  j["forecaster"] = trace.forecaster_name;
  j["algorithm"] = AlgorithmName(spec.algorithm);
  j["translation"] = TranslationRuleName(spec.translation);
  Json params;
  params["eta"] = OptionalNumber(spec.eta);
  params["bound_m"] = OptionalNumber(spec.bound_m);
  params["bound_q"] = OptionalNumber(spec.bound_q);
  params["range_e"] = OptionalNumber(spec.range_e);
  j["parameters"] = std::move(params);
  j["source"] = source;
  j["num_experts"] = trace.payoffs.num_experts();
  j["num_rounds"] = trace.payoffs.num_rounds();
  j["game"] = GameKindName(Classify(trace.payoffs));
  j["final"] = StatsJson(trace.stats);
  if (trace.translated_stats) {
    j["translated"] = StatsJson(*trace.translated_stats);
  }
  Json bounds = Json::array();
  for (const BoundReport& r : reports) bounds.push_back(ReportJson(r));
  j["bounds"] = std::move(bounds);
  return j;
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  if (ec) {
    throw InputError("cannot create directory for '" + path +
                     "': " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw InputError("cannot move '" + tmp.string() + "' to '" + path +
                     "': " + ec.message());
  }
}

}  // namespace regretlab::cli
