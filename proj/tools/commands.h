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

#ifndef REGRETLAB_TOOLS_COMMANDS_H_
#define REGRETLAB_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regretlab/adversary.h"
#include "regretlab/bounds.h"
#include "regretlab/run.h"
#include "run_config.h"

namespace regretlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitConfigError = 2,
};

struct ExecutedRun {
  RunTrace trace;
  std::vector<BoundReport> reports;
  std::string source;
};

// Loads or generates payoffs, fills default parameters, runs the forecaster
// and verifies the requested bounds. Throws ConfigError, InputError or
// ValidityViolation.
ExecutedRun Execute(const RunConfig& config);

bool AllHold(const std::vector<BoundReport>& reports);

// Writes <out_dir>/trace.csv and <out_dir>/summary.json.
int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err);

// Prints one line per bound. With neither a generator nor an input file the
// default catalog is verified.
int CmdVerify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CatalogEntry {
  std::string label;
  RunConfig config;
};

// One configuration per bound family, each on a generator that satisfies the
// bound's hypotheses. Together they cover B1 to B12.
std::vector<CatalogEntry> DefaultCatalog(std::size_t num_experts,
                                         std::size_t num_rounds,
                                         std::uint64_t seed);

struct SweepConfig {
  AlgorithmSpec algorithm;
  GeneratorSpec generator;
  std::vector<std::size_t> experts;
  std::vector<std::size_t> rounds;
  std::vector<double> magnitudes;
  std::vector<std::uint64_t> seeds;
  std::vector<BoundId> bounds;
  std::string out_dir;
  std::size_t threads = 0;  // 0 picks the hardware concurrency
};

// CSV header and one row per cell, in cell order. Cells iterate seeds
// fastest, then magnitudes, rounds and experts. Throws on the first failing
// cell.
std::string SweepHeader();
std::vector<std::string> SweepRows(const SweepConfig& config,
                                   std::size_t* violations = nullptr);

// Writes <out_dir>/sweep.csv.
int CmdSweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

}  // namespace regretlab::cli

#endif  // REGRETLAB_TOOLS_COMMANDS_H_
