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

// Subcommands of the epsiplan tool. Each writes its machine-readable result
// to `out` (JSON, or CSV for region), a human summary to `err`, and returns
// the process exit code.

#ifndef EPSIPLAN_CLI_COMMANDS_H_
#define EPSIPLAN_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>

#include "epsiplan/cli/config.h"
#include "epsiplan/feasibility.h"
#include "json.hpp"

namespace epsiplan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;  // also: simulated bound violated
inline constexpr int kExitUndetermined = 3;

nlohmann::json OutcomeToJson(const FeasibilityOutcome& outcome);

// Writes `n,eps_accuracy_min,eps_budget_max` rows. Absent and unbounded
// values are both written as empty fields.
void WriteRegionCsv(const RegionTable& table, std::ostream& out);

int RunPlan(const PlanConfig& config, std::ostream& out, std::ostream& err);

int RunCompare(const PlanConfig& config, std::ostream& out, std::ostream& err);

int RunRegion(const PlanConfig& config, int samples, std::ostream& out,
              std::ostream& err);

struct SimulateOptions {
  int64_t trials = 10000;
  uint64_t seed = 42;
  // Both or neither; when neither is set the point comes from RunPlan's
  // solver.
  std::optional<double> epsilon;
  std::optional<int64_t> n;
  double mu = 0.5;
};

int RunSimulate(const PlanConfig& config, const SimulateOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace epsiplan::cli

#endif  // EPSIPLAN_CLI_COMMANDS_H_
