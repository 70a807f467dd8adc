// Copyright 2026 The Epsiplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// epsiplan: choose (epsilon, delta, N) for a differentially private study.
//
//   epsiplan plan <config.json>
//   epsiplan compare <config.json>
//   epsiplan region <config.json> --samples K
//   epsiplan simulate <config.json> --trials T --seed S
//                     [--epsilon X --n N --mu M]
//
// Exit codes: 0 ok/feasible, 1 error, 2 infeasible (or simulated bound
// violated), 3 undetermined.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "epsiplan/cli/commands.h"
#include "epsiplan/cli/config.h"

namespace {

using epsiplan::cli::kExitError;

std::optional<epsiplan::cli::PlanConfig> Load(const std::string& path) {
  absl::StatusOr<epsiplan::cli::PlanConfig> config =
      epsiplan::cli::LoadPlanConfig(path);
  if (!config.ok()) {
    std::cerr << "error: " << config.status().message() << "\n";
    return std::nullopt;
  }
  absl::Status grid = epsiplan::cli::ApplyGridPointsOverride(
      std::getenv("EPSIPLAN_GRID_POINTS"), config->problem.options);
  if (!grid.ok()) {
    std::cerr << "error: " << grid.message() << "\n";
    return std::nullopt;
  }
  return *std::move(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choose differential-privacy parameters for a study"};
  app.require_subcommand(1);

  std::string path;
  int samples = 100;
  epsiplan::cli::SimulateOptions sim;
  double epsilon = 0;
  int64_t n = 0;

  CLI::App* plan = app.add_subcommand("plan", "Solve for a feasible point");
  plan->add_option("config", path, "JSON config")->required();

  CLI::App* compare =
      app.add_subcommand("compare", "Compare against a non-private study");
  compare->add_option("config", path, "JSON config")->required();

  CLI::App* region = app.add_subcommand("region", "Export region curves as CSV");
  region->add_option("config", path, "JSON config")->required();
  region->add_option("--samples", samples, "Number of N samples")
      ->check(CLI::Range(2, 1000000));

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo check of the accuracy bound");
  simulate->add_option("config", path, "JSON config")->required();
  simulate->add_option("--trials", sim.trials, "Number of simulated studies");
  simulate->add_option("--seed", sim.seed, "Generator seed");
  CLI::Option* eps_opt =
      simulate->add_option("--epsilon", epsilon, "Privacy level to simulate");
  CLI::Option* n_opt = simulate->add_option("--n", n, "Study size to simulate");
  simulate->add_option("--mu", sim.mu, "Population proportion")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  std::optional<epsiplan::cli::PlanConfig> config = Load(path);
  if (!config.has_value()) return kExitError;

  if (*plan) return epsiplan::cli::RunPlan(*config, std::cout, std::cerr);
  if (*compare) return epsiplan::cli::RunCompare(*config, std::cout, std::cerr);
  if (*region) {
    return epsiplan::cli::RunRegion(*config, samples, std::cout, std::cerr);
  }
  if (*simulate) {
    if (eps_opt->count() > 0) sim.epsilon = epsilon;
    if (n_opt->count() > 0) sim.n = n;
    return epsiplan::cli::RunSimulate(*config, sim, std::cout, std::cerr);
  }
  return kExitError;
}
