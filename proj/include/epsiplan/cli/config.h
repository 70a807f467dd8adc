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

// JSON planning configuration.
//
//   {
//     "study":    {"kind": "mean_estimation", "target_error": 0.05,
//                  "target_failure": 0.05, "universe_size": 256,
//                  "query_count": 10000},
//     "scenario": "movies",
//     "costs":    {"base_cost": 0.25, "worst_case": 2500,
//                  "exposure_fraction": 0.002},
//     "budget":   {"total": 3e4, "per_person_cap": 10},
//     "sides":    {"n_max": 1000, "enforce_group_privacy_floor": true,
//                  "blatant_threshold_params": {"universe_size": 8000,
//                                               "capture_probability": 0.1},
//                  "eps_max_override": 5, "max_delta_n": 0.01},
//     "delta":    {"mode": "pure" | "fixed" | "searched", "value": 1e-8,
//                  "search_min": 1e-12, "search_max": 1e-2,
//                  "search_points": 11},
//     "solver":   {"grid_points": 2000}
//   }
//
// Only "study" is required. "scenario" supplies base_cost and worst_case and
// may not be combined with either of them in "costs".

#ifndef EPSIPLAN_CLI_CONFIG_H_
#define EPSIPLAN_CLI_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "epsiplan/feasibility.h"
#include "json.hpp"

namespace epsiplan::cli {

struct PlanConfig {
  FeasibilityProblem problem;
  std::optional<std::string> scenario;
  // Which cost fields the file (or its preset) actually provided.
  bool has_base_cost = false;
  bool has_worst_case = false;
  bool has_exposure_fraction = false;
  std::vector<std::string> warnings;
};

// Errors carry the JSON path of the offending field, e.g.
// "study.target_error: must be in (0, 1), got 2".
absl::StatusOr<PlanConfig> ParsePlanConfig(const nlohmann::json& doc);

absl::StatusOr<PlanConfig> LoadPlanConfig(const std::string& path);

// Applies an EPSIPLAN_GRID_POINTS value (may be null) to the solver options.
absl::Status ApplyGridPointsOverride(const char* value, SolverOptions& options);

}  // namespace epsiplan::cli

#endif  // EPSIPLAN_CLI_CONFIG_H_
