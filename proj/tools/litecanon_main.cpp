// Copyright 2026 The LiteCanon Authors
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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "litecanon/pipeline.hpp"

using litecanon::pipeline::ConfigError;
using litecanon::pipeline::PipelineConfig;

int main(int argc, char** argv) {
  CLI::App app{"litecanon - knowledge-base literal typing and canonicalization"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<double> theta, kappa, min_sim;
  std::optional<std::string> strategy, workdir;
  std::optional<int> jobs;

  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--seed", seed, "override the global seed");
  app.add_option("--theta", theta, "override the score threshold");
  app.add_option("--kappa", kappa, "override the exclusion relaxation");
  app.add_option("--strategy", strategy, "independent | hierarchical");
  app.add_option("--jobs", jobs, "parallel training workers");
  app.add_option("--workdir", workdir, "artifact directory");
  app.add_option("--min-sim", min_sim, "matching similarity threshold");

  for (const std::string& stage : litecanon::pipeline::kStages)
    app.add_subcommand(stage, "run the `" + stage + "` stage");

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = PipelineConfig::from_file(config_path);
    if (seed) cfg.seed = *seed;
    if (theta) cfg.theta = *theta;
    if (kappa) cfg.kappa = *kappa;
    if (strategy) cfg.strategy = *strategy;
    if (jobs) cfg.jobs = *jobs;
    if (workdir) cfg.workdir = *workdir;
    if (min_sim) cfg.min_sim = *min_sim;

    for (CLI::App* sub : app.get_subcommands()) {
      std::cerr << "[litecanon] stage " << sub->get_name() << "\n";
      litecanon::pipeline::run_stage(sub->get_name(), cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
