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

#include "epsiplan/cli/presets.h"

#include <array>

namespace epsiplan::cli {
namespace {

constexpr std::array<ScenarioPreset, 4> kPresets = {{
    {"smoking", 254.8, 1274,
     "insurance premium increase of 1274 for smokers; 20% chance of being "
     "labelled a smoker without participating"},
    {"education", 12.5, 12500,
     "30% pay cut (12500) if grades are published; base cost 0.01 x 12500"},
    {"movies", 0.25, 2500,
     "statutory damages of 2500 for disclosed rental records; base cost "
     "0.0001 x 2500"},
    {"social", 1, 100000,
     "deanonymization of a persona valued at 100000; base cost 0.00001 x "
     "100000"},
}};

}  // namespace

std::span<const ScenarioPreset> ScenarioPresets() { return kPresets; }

std::optional<ScenarioPreset> FindScenarioPreset(std::string_view name) {
  for (const ScenarioPreset& preset : kPresets) {
    if (preset.name == name) return preset;
  }
  return std::nullopt;
}

}  // namespace epsiplan::cli
