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

#ifndef EPSIPLAN_CLI_PRESETS_H_
#define EPSIPLAN_CLI_PRESETS_H_

#include <optional>
#include <span>
#include <string_view>

namespace epsiplan::cli {

// Built-in participant cost scenarios.
struct ScenarioPreset {
  std::string_view name;
  double base_cost;   // E
  double worst_case;  // W
  std::string_view provenance;
};

std::span<const ScenarioPreset> ScenarioPresets();

std::optional<ScenarioPreset> FindScenarioPreset(std::string_view name);

}  // namespace epsiplan::cli

#endif  // EPSIPLAN_CLI_PRESETS_H_
