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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "regretlab/errors.h"
#include "run_config.h"

namespace {

using regretlab::cli::kExitConfigError;

struct Flags {
  std::string algo = "wm-unknown";
  std::optional<double> eta;
  std::optional<double> bound_m;
  std::optional<double> bound_q;
  std::optional<double> range_e;
  std::string translate = "none";
  std::optional<std::string> gen;
  std::optional<std::string> input;
  std::string bounds = "all";
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::size_t num_experts = 4;
  std::size_t num_rounds = 100;
  bool corrupt = false;
  // sweep only
  std::string grid_experts = "2,4,8";
  std::string grid_rounds = "10,100,1000";
  std::string grid_magnitudes = "1";
  std::string seeds = "0";
  std::size_t threads = 0;
};

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--algo", f.algo,
                  "prod | prodq | prodm | prodmq | wm-fixed | wm-known | "
                  "wm-unknown")
      ->capture_default_str();
  cmd->add_option("--eta", f.eta, "learning rate (prod, wm-fixed)");
  cmd->add_option("--bound-m", f.bound_m, "payoff magnitude bound M");
  cmd->add_option("--bound-q", f.bound_q, "quadratic penalty bound Q");
  cmd->add_option("--range-e", f.range_e, "effective range bound E");
  cmd->add_option("--translate", f.translate,
                  "none | reward | min | max | midrange")
      ->capture_default_str();
  cmd->add_option("--bounds", f.bounds, "all, or a list such as B1,B3")
      ->capture_default_str();
  cmd->add_option("--out", f.out,
                  "output directory (default $REGRETLAB_OUT_DIR or "
                  "regretlab_out)");
  cmd->add_flag("--corrupt", f.corrupt,
                "lower the measured reward to force a violation");
}

void AddSource(CLI::App* cmd, Flags& f) {
  cmd->add_option("--gen", f.gen,
                  "generator, e.g. outlier:m=1,spike=50,rate=0.01");
  cmd->add_option("--input", f.input, "payoff CSV with header t,x_1,...,x_N");
  cmd->add_option("--seed", f.seed, "generator seed")->capture_default_str();
  cmd->add_option("-N,--experts", f.num_experts, "number of experts")
      ->capture_default_str();
  cmd->add_option("-n,--rounds", f.num_rounds, "number of rounds")
      ->capture_default_str();
}

regretlab::AlgorithmSpec BuildAlgorithm(const Flags& f) {
  regretlab::AlgorithmSpec spec;
  const auto algo = regretlab::ParseAlgorithm(f.algo);
  if (!algo) throw regretlab::ConfigError("unknown algorithm '" + f.algo + "'");
  const auto rule = regretlab::ParseTranslationRule(f.translate);
  if (!rule) {
    throw regretlab::ConfigError("unknown translation '" + f.translate + "'");
  }
  spec.algorithm = *algo;
  spec.translation = *rule;
  spec.eta = f.eta;
  spec.bound_m = f.bound_m;
  spec.bound_q = f.bound_q;
  spec.range_e = f.range_e;
  return spec;
}

regretlab::cli::RunConfig BuildRunConfig(const Flags& f, bool need_source) {
  regretlab::cli::RunConfig config;
  config.algorithm = BuildAlgorithm(f);
  config.input_path = f.input;
  if (f.gen) {
    config.generator = regretlab::cli::ParseGeneratorSpec(
        *f.gen, f.num_experts, f.num_rounds, f.seed);
  } else if (!f.input && need_source) {
    config.generator = regretlab::cli::ParseGeneratorSpec(
        "uniform_signed", f.num_experts, f.num_rounds, f.seed);
  }
  config.bounds = regretlab::cli::ParseBoundList(f.bounds);
  config.out_dir = regretlab::cli::ResolveOutDir(f.out);
  config.corrupt = f.corrupt;
  return config;
}

regretlab::cli::SweepConfig BuildSweepConfig(const Flags& f) {
  regretlab::cli::SweepConfig config;
  config.algorithm = BuildAlgorithm(f);
  config.generator = regretlab::cli::ParseGeneratorSpec(
      f.gen.value_or("uniform_signed"), 2, 1, 0);
  config.experts = regretlab::cli::ParseSizeList(f.grid_experts);
  config.rounds = regretlab::cli::ParseSizeList(f.grid_rounds);
  config.magnitudes = regretlab::cli::ParseDoubleList(f.grid_magnitudes);
  for (std::size_t s : regretlab::cli::ParseSizeList(f.seeds)) {
    config.seeds.push_back(s);
  }
  config.bounds = regretlab::cli::ParseBoundList(f.bounds);
  config.out_dir = regretlab::cli::ResolveOutDir(f.out);
  config.threads = f.threads;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order regret forecasters and bound verification"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* run = app.add_subcommand(
      "run", "run a forecaster, write trace.csv and summary.json");
  AddCommon(run, f);
  AddSource(run, f);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "check regret bounds; without --gen/--input runs the default catalog");
  AddCommon(verify, f);
  AddSource(verify, f);

  CLI::App* sweep =
      app.add_subcommand("sweep", "grid over N, n, M and seeds into sweep.csv");
  AddCommon(sweep, f);
  sweep->add_option("--gen", f.gen, "generator kind and options");
  sweep->add_option("--grid-N", f.grid_experts, "expert counts")
      ->capture_default_str();
  sweep->add_option("--grid-n", f.grid_rounds, "horizons")
      ->capture_default_str();
  sweep->add_option("--grid-m", f.grid_magnitudes, "magnitudes")
      ->capture_default_str();
  sweep->add_option("--seeds", f.seeds, "seeds")->capture_default_str();
  sweep->add_option("--threads", f.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*run) {
      return regretlab::cli::CmdRun(BuildRunConfig(f, true), std::cout,
                                    std::cerr);
    }
    if (*verify) {
      return regretlab::cli::CmdVerify(BuildRunConfig(f, false), std::cout,
                                       std::cerr);
    }
    return regretlab::cli::CmdSweep(BuildSweepConfig(f), std::cout, std::cerr);
  } catch (const regretlab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const regretlab::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  }
  return kExitConfigError;
}
