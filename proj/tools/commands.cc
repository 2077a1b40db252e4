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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "regretlab/errors.h"
#include "trace_io.h"

namespace regretlab::cli {
namespace {

struct Source {
  PayoffSequence payoffs;
  std::string description;
  double magnitude = 0.0;
  double range = 0.0;
};

Source LoadSource(const RunConfig& config) {
  if (config.generator && config.input_path) {
    throw ConfigError("--gen and --input are mutually exclusive");
  }
  if (config.input_path) {
    PayoffSequence payoffs = ReadPayoffCsv(*config.input_path);
    double m = 0.0;
    double e = 0.0;
    for (std::size_t t = 0; t < payoffs.num_rounds(); ++t) {
      for (double v : payoffs.round(t)) m = std::max(m, std::abs(v));
      e = std::max(e, EffectiveRange(payoffs.round(t)));
    }
    return {std::move(payoffs), "file:" + *config.input_path, m, e};
  }
  if (!config.generator) throw ConfigError("either --gen or --input is needed");
  const GeneratorSpec& gen = *config.generator;
  std::ostringstream desc;
  desc << FormatGeneratorSpec(gen) << " N=" << gen.num_experts
       << " n=" << gen.num_rounds << " seed=" << gen.seed;
  return {Generate(gen), desc.str(), DeclaredMagnitude(gen),
          DeclaredRange(gen)};
}

// Runs `body`, mapping configuration and input failures to exit code 2.
template <typename Body>
int Guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const ValidityViolation& e) {
    err << "invalid parameters for this input: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

void PrintReports(const std::string& label,
                  const std::vector<BoundReport>& reports, std::ostream& out) {
  for (const BoundReport& r : reports) {
    out << std::left << std::setw(28) << label << ' ' << std::setw(4)
        << BoundName(r.id) << " bound=" << FormatDouble(r.bound_value)
        << " measured=" << FormatDouble(r.measured)
        << " slack=" << FormatDouble(r.slack) << ' '
        << (r.holds ? "ok" : "VIOLATED") << '\n';
  }
}

void ListFailures(const std::string& label,
                  const std::vector<BoundReport>& reports, std::ostream& err) {
  for (const BoundReport& r : reports) {
    if (r.holds) continue;
    err << "violation: " << label << ' ' << BoundName(r.id)
        << " slack=" << FormatDouble(r.slack) << '\n';
  }
}

std::string Field(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

std::string RunCell(const SweepConfig& config, std::size_t cell,
                    const GeneratorSpec& gen, std::size_t* violations) {
  RunConfig rc;
  rc.algorithm = config.algorithm;
  rc.generator = gen;
  rc.bounds = config.bounds;
  const ExecutedRun run = Execute(rc);
  const RunTrace& trace = run.trace;
  const AlgorithmSpec& spec = trace.spec;

  std::ostringstream row;
  row << cell << ',' << AlgorithmName(spec.algorithm) << ','
      << TranslationRuleName(spec.translation) << ','
      << GeneratorKindName(gen.kind) << ',' << gen.num_experts << ','
      << gen.num_rounds << ',' << FormatDouble(gen.magnitude) << ','
      << gen.seed << ',' << Field(spec.eta) << ',' << Field(spec.bound_m)
      << ',' << Field(spec.bound_q) << ',' << Field(spec.range_e) << ','
      << FormatDouble(trace.stats.regret()) << ','
      << FormatDouble(trace.stats.cum_variance());

  bool holds = true;
  for (BoundId id : AllBounds()) {
    const auto it = std::find_if(
        run.reports.begin(), run.reports.end(),
        [id](const BoundReport& r) { return r.id == id; });
    if (it == run.reports.end()) {
      row << ",,";
    } else {
      row << ',' << FormatDouble(it->bound_value) << ','
          << FormatDouble(it->slack);
      holds = holds && it->holds;
    }
  }

  if (spec.algorithm == Algorithm::kProdQ && spec.bound_m) {
    const double ln_n = std::log(static_cast<double>(gen.num_experts));
    const double n = static_cast<double>(gen.num_rounds);
    row << ','
        << FormatDouble(FirstOrderComparator(trace.stats.a_star_envelope(),
                                             *spec.bound_m, n, ln_n))
        << ',' << FormatDouble(ZeroOrderComparator(*spec.bound_m, n, ln_n));
  } else {
    row << ",,";
  }
  row << ',' << (holds ? "true" : "false");
  if (!holds && violations != nullptr) ++*violations;
  return row.str();
}

}  // namespace

ExecutedRun Execute(const RunConfig& config) {
  Source source = LoadSource(config);
  AlgorithmSpec spec = config.algorithm;
  FillDefaults(spec, source.magnitude, source.range,
               source.payoffs.num_experts(), source.payoffs.num_rounds());

  ExecutedRun run{Run(spec, source.payoffs), {}, std::move(source.description)};
  std::vector<BoundId> ids = config.bounds;
  if (ids.empty()) ids = CompatibleBounds(spec, Classify(run.trace.payoffs));
  VerifyOptions options;
  options.corrupt = config.corrupt;
  for (BoundId id : ids) run.reports.push_back(Verify(run.trace, id, options));
  return run;
}

bool AllHold(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return r.holds; });
}

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    const ExecutedRun run = Execute(config);
    std::ostringstream trace_csv;
    WriteTraceCsv(run.trace, trace_csv);
    const std::string summary =
        SummaryJson(run.trace, run.source, run.reports).dump(2) + "\n";

    const std::filesystem::path dir(config.out_dir);
    WriteFileAtomic((dir / "trace.csv").string(), trace_csv.str());
    WriteFileAtomic((dir / "summary.json").string(), summary);

    out << "wrote " << (dir / "trace.csv").string() << " and "
        << (dir / "summary.json").string() << '\n';
    PrintReports(run.trace.forecaster_name, run.reports, out);
    if (!AllHold(run.reports)) {
      ListFailures(run.trace.forecaster_name, run.reports, err);
      return kExitViolation;
    }
    return kExitOk;
  });
}

int CmdVerify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    std::vector<CatalogEntry> entries;
    if (config.generator || config.input_path) {
      entries.push_back({"", config});
    } else {
      entries = DefaultCatalog(4, 200, 1);
      for (CatalogEntry& e : entries) e.config.corrupt = config.corrupt;
    }
    bool all_hold = true;
    for (const CatalogEntry& entry : entries) {
      const ExecutedRun run = Execute(entry.config);
      const std::string label =
          entry.label.empty() ? run.trace.forecaster_name : entry.label;
      PrintReports(label, run.reports, out);
      if (!AllHold(run.reports)) {
        ListFailures(label, run.reports, err);
        all_hold = false;
      }
    }
    return all_hold ? kExitOk : kExitViolation;
  });
}

std::vector<CatalogEntry> DefaultCatalog(std::size_t num_experts,
                                         std::size_t num_rounds,
                                         std::uint64_t seed) {
  struct Row {
    const char* label;
    Algorithm algorithm;
    TranslationRule translation;
    const char* generator;
    std::vector<BoundId> bounds;
  };
  using B = BoundId;
  const std::vector<Row> rows = {
      {"prod/uniform_signed", Algorithm::kProd, TranslationRule::kNone,
       "uniform_signed:m=1", {B::kB1, B::kB2}},
      {"prodq/leader_flip", Algorithm::kProdQ, TranslationRule::kNone,
       "leader_flip:m=1,period=20", {B::kB3}},
      {"prodq/outlier", Algorithm::kProdQ, TranslationRule::kNone,
       "outlier:m=1,spike=50,rate=0.01", {B::kB3}},
      {"prodm/uniform_signed", Algorithm::kProdM, TranslationRule::kNone,
       "uniform_signed:m=1", {B::kB4}},
      {"prodmq/outlier", Algorithm::kProdMQ, TranslationRule::kNone,
       "outlier:m=1,spike=50,rate=0.01", {B::kB5}},
      {"wm-known/uniform_signed", Algorithm::kWmKnownRange,
       TranslationRule::kNone, "uniform_signed:m=1", {B::kB6}},
      {"wm-unknown/uniform_signed", Algorithm::kWmUnknownRange,
       TranslationRule::kNone, "uniform_signed:m=1",
       {B::kB7, B::kB8, B::kB12}},
      {"prodq[reward]/uniform_signed", Algorithm::kProdQ,
       TranslationRule::kReward, "uniform_signed:m=1", {B::kB9}},
      {"wm-unknown/bernoulli_gain", Algorithm::kWmUnknownRange,
       TranslationRule::kNone, "bernoulli_gain:m=1,p=0.3", {B::kB10}},
      {"wm-unknown/loss_game", Algorithm::kWmUnknownRange,
       TranslationRule::kNone, "loss_game:m=1", {B::kB10}},
      {"prodq[reward]/bernoulli_gain", Algorithm::kProdQ,
       TranslationRule::kReward, "bernoulli_gain:m=1,p=0.3",
       {B::kB9, B::kB11}},
      {"prodq[reward]/loss_game", Algorithm::kProdQ, TranslationRule::kReward,
       "loss_game:m=1", {B::kB11}},
  };
  std::vector<CatalogEntry> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    CatalogEntry entry;
    entry.label = row.label;
    entry.config.algorithm.algorithm = row.algorithm;
    entry.config.algorithm.translation = row.translation;
    entry.config.generator =
        ParseGeneratorSpec(row.generator, num_experts, num_rounds, seed + i);
    entry.config.bounds = row.bounds;
    out.push_back(std::move(entry));
  }
  return out;
}

std::string SweepHeader() {
  std::string header =
      "cell,algorithm,translation,generator,N,n,M,seed,eta,bound_m,bound_q,"
      "range_e,regret,cum_variance";
  for (BoundId id : AllBounds()) {
    const std::string name(BoundName(id));
    header += "," + name + "_bound," + name + "_slack";
  }
  header += ",first_order,zero_order,holds";
  return header;
}

std::vector<std::string> SweepRows(const SweepConfig& config,
                                   std::size_t* violations) {
  std::vector<GeneratorSpec> cells;
  for (std::size_t experts : config.experts) {
    for (std::size_t rounds : config.rounds) {
      for (double m : config.magnitudes) {
        for (std::uint64_t seed : config.seeds) {
          GeneratorSpec gen = config.generator;
          gen.num_experts = experts;
          gen.num_rounds = rounds;
          gen.magnitude = m;
          gen.seed = seed;
          cells.push_back(gen);
        }
      }
    }
  }
  if (cells.empty()) throw ConfigError("sweep grid is empty");

  std::vector<std::string> rows(cells.size());
  std::vector<std::size_t> cell_violations(cells.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        rows[i] = RunCell(config, i, cells[i], &cell_violations[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(cells.size());
      }
    }
  };
  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  if (violations != nullptr) {
    *violations = 0;
    for (std::size_t v : cell_violations) *violations += v;
  }
  return rows;
}

int CmdSweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    std::size_t violations = 0;
    const std::vector<std::string> rows = SweepRows(config, &violations);
    std::string csv = SweepHeader() + "\n";
    for (const std::string& row : rows) csv += row + "\n";
    const std::string path =
        (std::filesystem::path(config.out_dir) / "sweep.csv").string();
    WriteFileAtomic(path, csv);
    out << "wrote " << rows.size() << " cells to " << path << '\n';
    if (violations > 0) {
      err << violations << " cell(s) violate a bound; see the holds column\n";
      return kExitViolation;
    }
    return kExitOk;
  });
}

}  // namespace regretlab::cli
