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

#include "epsiplan/cli/config.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string_view>

#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "epsiplan/cli/presets.h"

namespace epsiplan::cli {
namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message) {}
};

// Typed access to one JSON object, reporting failures by dotted path.
class Section {
 public:
  Section(const json& node, std::string path,
          std::initializer_list<std::string_view> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
    for (const auto& [key, value] : node_.items()) {
      bool known = false;
      for (std::string_view a : allowed) known |= key == a;
      if (!known) throw ConfigError(Path(key), "unknown key");
    }
  }

  std::string Path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool Has(std::string_view key) const {
    return node_.contains(key) && !node_.at(std::string(key)).is_null();
  }

  const json& Node(std::string_view key) const {
    return node_.at(std::string(key));
  }

  std::optional<double> Real(std::string_view key) const {
    if (!Has(key)) return std::nullopt;
    const json& v = Node(key);
    if (!v.is_number()) throw ConfigError(Path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(Path(key), "must be finite");
    return x;
  }

  // Integers may be written as reals (e.g. 8.7e5) if they are integral.
  std::optional<int64_t> Integer(std::string_view key) const {
    if (!Has(key)) return std::nullopt;
    const json& v = Node(key);
    if (v.is_number_integer()) return v.get<int64_t>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
        return static_cast<int64_t>(x);
      }
    }
    throw ConfigError(Path(key), "expected an integer");
  }

  std::optional<bool> Bool(std::string_view key) const {
    if (!Has(key)) return std::nullopt;
    const json& v = Node(key);
    if (!v.is_boolean()) throw ConfigError(Path(key), "expected true or false");
    return v.get<bool>();
  }

  std::optional<std::string> String(std::string_view key) const {
    if (!Has(key)) return std::nullopt;
    const json& v = Node(key);
    if (!v.is_string()) throw ConfigError(Path(key), "expected a string");
    return v.get<std::string>();
  }

  template <typename T>
  T Require(std::optional<T> value, std::string_view key) const {
    if (!value.has_value()) throw ConfigError(Path(key), "required");
    return *value;
  }

 private:
  const json& node_;
  std::string path_;
};

void Check(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

std::string Got(double x) { return absl::StrFormat(", got %g", x); }

StudySpec ParseStudy(const json& node) {
  Section s(node, "study", {"kind", "target_error", "target_failure",
                            "universe_size", "query_count"});
  StudySpec spec;
  const std::string kind = s.Require(s.String("kind"), "kind");
  std::optional<StudyKind> parsed = ParseStudyKind(kind);
  Check(parsed.has_value(), s.Path("kind"),
        "must be one of mean_estimation, mwem_pure, mwem_approx, got '" + kind +
            "'");
  spec.kind = *parsed;
  spec.target_error = s.Require(s.Real("target_error"), "target_error");
  Check(spec.target_error > 0 && spec.target_error < 1, s.Path("target_error"),
        "must be in (0, 1)" + Got(spec.target_error));
  spec.target_failure = s.Require(s.Real("target_failure"), "target_failure");
  Check(spec.target_failure > 0 && spec.target_failure < 1,
        s.Path("target_failure"), "must be in (0, 1)" + Got(spec.target_failure));
  if (spec.kind != StudyKind::kMeanEstimation) {
    spec.universe_size = s.Require(s.Integer("universe_size"), "universe_size");
    Check(spec.universe_size >= 2, s.Path("universe_size"),
          absl::StrFormat("must be >= 2, got %d", spec.universe_size));
    spec.query_count = s.Require(s.Integer("query_count"), "query_count");
    Check(spec.query_count >= 1, s.Path("query_count"),
          absl::StrFormat("must be >= 1, got %d", spec.query_count));
  }
  return spec;
}

void ParseCosts(const json* node, const std::optional<std::string>& scenario,
                PlanConfig& config) {
  CostProfile& profile = config.problem.profile;
  if (scenario.has_value()) {
    std::optional<ScenarioPreset> preset = FindScenarioPreset(*scenario);
    if (!preset.has_value()) {
      std::vector<std::string> names;
      for (const ScenarioPreset& p : ScenarioPresets()) {
        names.emplace_back(p.name);
      }
      throw ConfigError("scenario", "unknown preset '" + *scenario +
                                        "'; expected one of " +
                                        absl::StrJoin(names, ", "));
    }
    profile.base_cost = preset->base_cost;
    profile.worst_case = preset->worst_case;
    config.has_base_cost = true;
    config.has_worst_case = true;
  }
  if (node == nullptr) return;
  Section s(*node, "costs", {"base_cost", "worst_case", "exposure_fraction"});
  for (std::string_view key : {"base_cost", "worst_case"}) {
    Check(!(scenario.has_value() && s.Has(key)), s.Path(key),
          "conflicts with scenario '" + scenario.value_or("") +
              "'; drop one of them");
  }
  if (std::optional<double> e = s.Real("base_cost")) {
    Check(*e >= 0, s.Path("base_cost"), "must be >= 0" + Got(*e));
    profile.base_cost = *e;
    config.has_base_cost = true;
  }
  if (std::optional<double> w = s.Real("worst_case")) {
    Check(*w >= 0, s.Path("worst_case"), "must be >= 0" + Got(*w));
    profile.worst_case = *w;
    config.has_worst_case = true;
  }
  if (std::optional<double> phi = s.Real("exposure_fraction")) {
    Check(*phi >= 0 && *phi <= 1, s.Path("exposure_fraction"),
          "must be in [0, 1]" + Got(*phi));
    profile.exposure_fraction = *phi;
    config.has_exposure_fraction = true;
  }
}

BudgetPolicy ParseBudget(const json& node) {
  Section s(node, "budget", {"total", "per_person_cap"});
  BudgetPolicy policy;
  policy.total = s.Real("total");
  policy.per_person_cap = s.Real("per_person_cap");
  if (policy.total) {
    Check(*policy.total >= 0, s.Path("total"), "must be >= 0" + Got(*policy.total));
  }
  if (policy.per_person_cap) {
    Check(*policy.per_person_cap >= 0, s.Path("per_person_cap"),
          "must be >= 0" + Got(*policy.per_person_cap));
  }
  Check(policy.total || policy.per_person_cap, "budget",
        "needs total, per_person_cap, or both");
  return policy;
}

SideConstraints ParseSides(const json& node) {
  Section s(node, "sides",
            {"n_max", "enforce_group_privacy_floor", "blatant_threshold_params",
             "eps_max_override", "max_delta_n"});
  SideConstraints sides;
  sides.n_max = s.Integer("n_max");
  if (sides.n_max) {
    Check(*sides.n_max >= 1, s.Path("n_max"),
          absl::StrFormat("must be >= 1, got %d", *sides.n_max));
  }
  sides.enforce_group_privacy_floor =
      s.Bool("enforce_group_privacy_floor").value_or(false);
  if (s.Has("blatant_threshold_params")) {
    Section b(s.Node("blatant_threshold_params"),
              s.Path("blatant_threshold_params"),
              {"universe_size", "capture_probability"});
    BlatantParams params;
    params.universe_size = b.Require(b.Integer("universe_size"), "universe_size");
    params.capture_probability =
        b.Require(b.Real("capture_probability"), "capture_probability");
    absl::StatusOr<double> ceiling =
        BlatantEpsilonCeiling(params.universe_size, params.capture_probability);
    Check(ceiling.ok(), b.Path("capture_probability"),
          std::string(ceiling.status().message()));
    sides.blatant = params;
  }
  sides.eps_max_override = s.Real("eps_max_override");
  if (sides.eps_max_override) {
    Check(*sides.eps_max_override > 0, s.Path("eps_max_override"),
          "must be positive" + Got(*sides.eps_max_override));
  }
  if (std::optional<double> cap = s.Real("max_delta_n")) {
    Check(*cap > 0, s.Path("max_delta_n"), "must be positive" + Got(*cap));
    sides.max_delta_n = *cap;
  }
  return sides;
}

DeltaMode ParseDelta(const json& node) {
  Section s(node, "delta",
            {"mode", "value", "search_min", "search_max", "search_points"});
  const std::string mode = s.String("mode").value_or("pure");
  DeltaMode delta;
  if (mode == "pure") {
    delta = DeltaMode::Pure();
  } else if (mode == "fixed") {
    const double value = s.Require(s.Real("value"), "value");
    Check(value >= 0 && value < 1, s.Path("value"),
          "must be in [0, 1)" + Got(value));
    delta = DeltaMode::Fixed(value);
  } else if (mode == "searched") {
    delta = DeltaMode::Searched();
    delta.search_min = s.Real("search_min").value_or(delta.search_min);
    delta.search_max = s.Real("search_max").value_or(delta.search_max);
    delta.search_points = static_cast<int>(
        s.Integer("search_points").value_or(delta.search_points));
    Check(delta.search_min > 0 && delta.search_min < 1, s.Path("search_min"),
          "must be in (0, 1)" + Got(delta.search_min));
    Check(delta.search_max >= delta.search_min && delta.search_max < 1,
          s.Path("search_max"),
          "must be in [search_min, 1)" + Got(delta.search_max));
    Check(delta.search_points >= 1, s.Path("search_points"), "must be >= 1");
  } else {
    throw ConfigError(s.Path("mode"),
                      "must be pure, fixed or searched, got '" + mode + "'");
  }
  return delta;
}

}  // namespace

absl::StatusOr<PlanConfig> ParsePlanConfig(const json& doc) {
  try {
    Section root(doc, "",
                 {"study", "scenario", "costs", "budget", "sides", "delta",
                  "solver"});
    PlanConfig config;
    Check(root.Has("study"), "study", "required");
    config.problem.spec = ParseStudy(root.Node("study"));
    config.scenario = root.String("scenario");
    ParseCosts(root.Has("costs") ? &root.Node("costs") : nullptr,
               config.scenario, config);
    if (root.Has("budget")) config.problem.policy = ParseBudget(root.Node("budget"));
    if (root.Has("sides")) config.problem.sides = ParseSides(root.Node("sides"));
    if (root.Has("delta")) {
      config.problem.delta_mode = ParseDelta(root.Node("delta"));
    } else if (config.problem.spec.kind == StudyKind::kMwemApprox) {
      config.problem.delta_mode = DeltaMode::Searched();
    }
    if (root.Has("solver")) {
      Section s(root.Node("solver"), "solver", {"grid_points"});
      if (std::optional<int64_t> points = s.Integer("grid_points")) {
        Check(*points >= 2 && *points <= 1000000, s.Path("grid_points"),
              "must be in [2, 1e6]");
        config.problem.options.grid_points = static_cast<int>(*points);
      }
    }

    // Cross-field checks that the per-field parsing cannot see.
    const SideConstraints& sides = config.problem.sides;
    if (sides.blatant && sides.eps_max_override) {
      const double ceiling = *BlatantEpsilonCeiling(
          sides.blatant->universe_size, sides.blatant->capture_probability);
      Check(*sides.eps_max_override <= ceiling, "sides.eps_max_override",
            absl::StrFormat("must not exceed the blatant ceiling %g", ceiling));
    }
    const DeltaMode& mode = config.problem.delta_mode;
    const bool pure_only =
        mode.kind == DeltaMode::Kind::kPure ||
        (mode.kind == DeltaMode::Kind::kFixed && mode.value == 0);
    if (config.problem.spec.kind == StudyKind::kMwemApprox) {
      Check(!pure_only, "delta.mode", "mwem_approx needs a positive delta");
    } else {
      Check(pure_only, "delta.mode",
            std::string(StudyKindName(config.problem.spec.kind)) +
                " is a pure-privacy study; use mode pure");
    }
    config.warnings = CostProfileWarnings(config.problem.profile);
    return config;
  } catch (const ConfigError& e) {
    return absl::InvalidArgumentError(e.what());
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

absl::StatusOr<PlanConfig> LoadPlanConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(path + ": " + e.what());
  }
  return ParsePlanConfig(doc);
}

absl::Status ApplyGridPointsOverride(const char* value, SolverOptions& options) {
  if (value == nullptr || *value == '\0') return absl::OkStatus();
  char* end = nullptr;
  const long long points = std::strtoll(value, &end, 10);
  if (*end != '\0' || points < 2 || points > 1000000) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "EPSIPLAN_GRID_POINTS must be an integer in [2, 1e6], got '%s'", value));
  }
  options.grid_points = static_cast<int>(points);
  return absl::OkStatus();
}

}  // namespace epsiplan::cli
