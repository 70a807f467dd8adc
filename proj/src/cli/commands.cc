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

#include "epsiplan/cli/commands.h"

#include <cmath>
#include <string>

#include "absl/strings/str_format.h"
#include "epsiplan/accuracy.h"
#include "epsiplan/economics.h"
#include "epsiplan/simulation.h"

namespace epsiplan::cli {
namespace {

using nlohmann::json;

json OptionalNumber(const std::optional<double>& x) {
  return x.has_value() ? json(*x) : json(nullptr);
}

json PointToJson(const StudyPoint& point) {
  return {{"epsilon", point.epsilon}, {"delta", point.delta}, {"n", point.n}};
}

json ResidualToJson(const ConstraintResidual& r) {
  json j = {{"name", r.name},   {"relation", r.relation},
            {"value", r.value}, {"limit", r.limit},
            {"slack", r.slack}, {"satisfied", r.satisfied}};
  if (r.raw.has_value()) j["raw"] = *r.raw;
  if (r.informational) j["informational"] = true;
  return j;
}

json TraceToJson(const SearchTrace& trace) {
  json scans = json::array();
  for (const DeltaScan& s : trace.scans) {
    json j = {{"delta", s.delta},
              {"n_cap", s.n_cap},
              {"n_cap_reason", s.n_cap_reason},
              {"grid_size", s.grid_size},
              {"feasible", s.feasible},
              {"accuracy_unattainable", s.accuracy_unattainable},
              {"budget_unattainable", s.budget_unattainable},
              {"window_empty", s.window_empty},
              {"non_finite", s.non_finite}};
    j["feasible_n_min"] = s.feasible_n_min ? json(*s.feasible_n_min) : json(nullptr);
    j["feasible_n_max"] = s.feasible_n_max ? json(*s.feasible_n_max) : json(nullptr);
    scans.push_back(std::move(j));
  }
  return {{"scans", scans},
          {"refinement_evaluations", trace.refinement_evaluations}};
}

json WarningsToJson(const PlanConfig& config) {
  json warnings = json::array();
  for (const std::string& w : config.warnings) warnings.push_back(w);
  return warnings;
}

void PrintWarnings(const PlanConfig& config, std::ostream& err) {
  for (const std::string& w : config.warnings) err << "warning: " << w << "\n";
}

// Re-checks a solver point before it is printed.
bool Revalidate(const FeasibilityProblem& problem, const StudyPoint& point) {
  absl::StatusOr<std::vector<ConstraintResidual>> residuals =
      EvaluateConstraints(problem, point);
  return residuals.ok() && AllSatisfied(*residuals);
}

std::string FormatCsvNumber(const std::optional<double>& x) {
  if (!x.has_value() || !std::isfinite(*x)) return "";
  return absl::StrFormat("%.17g", *x);
}

}  // namespace

json OutcomeToJson(const FeasibilityOutcome& outcome) {
  json doc;
  doc["status"] = std::string(FeasibilityStatusName(outcome.status));
  if (outcome.point.has_value()) {
    doc["epsilon"] = outcome.point->epsilon;
    doc["delta"] = outcome.point->delta;
    doc["n"] = outcome.point->n;
  } else {
    doc["epsilon"] = nullptr;
    doc["delta"] = nullptr;
    doc["n"] = nullptr;
  }
  doc["per_person_payment"] = OptionalNumber(outcome.per_person_payment);
  doc["total_cost"] = OptionalNumber(outcome.total_cost);
  json diagnostics = json::array();
  for (const ConstraintResidual& r : outcome.diagnostics) {
    diagnostics.push_back(ResidualToJson(r));
  }
  doc["diagnostics"] = diagnostics;
  doc["diagnostic_point"] = outcome.diagnostic_point
                                ? PointToJson(*outcome.diagnostic_point)
                                : json(nullptr);
  doc["search"] = TraceToJson(outcome.trace);
  return doc;
}

void WriteRegionCsv(const RegionTable& table, std::ostream& out) {
  out << "n,eps_accuracy_min,eps_budget_max\n";
  for (const CurveRow& row : table.rows) {
    out << row.n << ',' << FormatCsvNumber(row.eps_accuracy_min) << ','
        << FormatCsvNumber(row.eps_budget_max) << '\n';
  }
}

int RunPlan(const PlanConfig& config, std::ostream& out, std::ostream& err) {
  PrintWarnings(config, err);
  absl::StatusOr<FeasibilityOutcome> outcome = Solve(config.problem);
  if (!outcome.ok()) {
    err << "error: " << outcome.status().message() << "\n";
    return kExitError;
  }
  if (outcome->status == FeasibilityStatus::kFeasible &&
      !Revalidate(config.problem, *outcome->point)) {
    outcome->status = FeasibilityStatus::kUndetermined;
    outcome->point.reset();
    outcome->per_person_payment.reset();
    outcome->total_cost.reset();
  }
  json doc = OutcomeToJson(*outcome);
  doc["warnings"] = WarningsToJson(config);
  out << doc.dump(2) << "\n";

  switch (outcome->status) {
    case FeasibilityStatus::kFeasible:
      err << absl::StrFormat(
          "feasible: epsilon=%.6g delta=%.3g N=%d, pay %.6g each, total %.6g\n",
          outcome->point->epsilon, outcome->point->delta, outcome->point->n,
          *outcome->per_person_payment, *outcome->total_cost);
      return kExitOk;
    case FeasibilityStatus::kInfeasible:
      err << "infeasible: no (epsilon, N) in the searched range meets every "
             "constraint\n";
      for (const ConstraintResidual& r : outcome->diagnostics) {
        if (r.satisfied) continue;
        err << absl::StrFormat("  %s = %.6g %s %.6g violated", r.name, r.value,
                               r.relation, r.limit);
        if (r.raw.has_value() && *r.raw != r.value) {
          err << absl::StrFormat(" (unclamped %.6g)", *r.raw);
        }
        err << "\n";
      }
      return kExitInfeasible;
    case FeasibilityStatus::kUndetermined:
      err << "undetermined: numerical evaluation failed during the search\n";
      return kExitUndetermined;
  }
  return kExitError;
}

int RunCompare(const PlanConfig& config, std::ostream& out, std::ostream& err) {
  const StudySpec& spec = config.problem.spec;
  if (spec.kind != StudyKind::kMeanEstimation) {
    err << "error: compare supports mean_estimation studies only\n";
    return kExitError;
  }
  if (!config.has_worst_case || !config.has_exposure_fraction ||
      !config.has_base_cost) {
    err << "error: compare needs costs.base_cost, costs.worst_case and "
           "costs.exposure_fraction (or a scenario plus exposure_fraction)\n";
    return kExitError;
  }
  PrintWarnings(config, err);
  const CostProfile& profile = config.problem.profile;
  absl::StatusOr<double> rhs = PrivateCheaperThreshold(spec, profile);
  absl::StatusOr<NonprivateSize> size = NonprivateMinN(spec);
  absl::StatusOr<double> budget = NonprivateBudget(spec, profile);
  absl::StatusOr<int64_t> min_n = MeanMinN(spec);
  for (const absl::Status& s :
       {rhs.status(), size.status(), budget.status(), min_n.status()}) {
    if (!s.ok()) {
      err << "error: " << s.message() << "\n";
      return kExitError;
    }
  }
  const double epsilon_floor = spec.target_error / 6.0;
  const bool sufficient = epsilon_floor <= *rhs;

  // Exact answer: cheapest private study within the non-private budget.
  FeasibilityProblem at_nonprivate = config.problem;
  at_nonprivate.policy = BudgetPolicy{*budget, std::nullopt};
  absl::StatusOr<FeasibilityOutcome> solved = Solve(at_nonprivate);
  if (!solved.ok()) {
    err << "error: " << solved.status().message() << "\n";
    return kExitError;
  }
  const bool solver_feasible =
      solved->status == FeasibilityStatus::kFeasible &&
      Revalidate(at_nonprivate, *solved->point);

  std::string verdict = "inconclusive";
  if (sufficient) {
    verdict = "private_cheaper";
  } else if (solver_feasible) {
    verdict = "private_cheaper_by_solver";
  }

  const double reference_cost =
      MarginalCost(PrivacyLevel::Pure(epsilon_floor), profile) *
      static_cast<double>(*min_n);
  json doc = {
      {"private_sufficiently_cheaper", sufficient},
      {"sufficient_condition",
       {{"epsilon_floor", epsilon_floor}, {"rhs", *rhs}}},
      {"nonprivate_n_bound", size->bound},
      {"nonprivate_n", size->n},
      {"nonprivate_budget", *budget},
      {"private_min_cost",
       solver_feasible ? json(*solved->total_cost) : json(nullptr)},
      {"private_point",
       solver_feasible ? PointToJson(*solved->point) : json(nullptr)},
      {"reference_point",
       {{"epsilon", epsilon_floor},
        {"n", *min_n},
        {"total_cost", reference_cost}}},
      {"solver_status", std::string(FeasibilityStatusName(solved->status))},
      {"verdict", verdict},
      {"warnings", WarningsToJson(config)},
  };
  out << doc.dump(2) << "\n";
  err << absl::StrFormat(
      "non-private: N' >= %.2f, budget %.6g; private: %s (verdict %s)\n",
      size->bound, *budget,
      solver_feasible ? absl::StrFormat("min cost %.6g", *solved->total_cost)
                      : std::string("no point within that budget"),
      verdict);
  return kExitOk;
}

int RunRegion(const PlanConfig& config, int samples, std::ostream& out,
              std::ostream& err) {
  PrintWarnings(config, err);
  absl::StatusOr<RegionTable> table = RegionExport(config.problem, samples);
  if (!table.ok()) {
    err << "error: " << table.status().message() << "\n";
    return kExitError;
  }
  WriteRegionCsv(*table, out);
  err << absl::StrFormat("region: %d rows at delta=%g\n", table->rows.size(),
                         table->delta);
  return kExitOk;
}

int RunSimulate(const PlanConfig& config, const SimulateOptions& options,
                std::ostream& out, std::ostream& err) {
  if (config.problem.spec.kind != StudyKind::kMeanEstimation) {
    err << "error: simulate supports mean_estimation studies only\n";
    return kExitError;
  }
  if (options.epsilon.has_value() != options.n.has_value()) {
    err << "error: pass both --epsilon and --n, or neither to use the plan "
           "point\n";
    return kExitError;
  }
  SimulationConfig sim;
  sim.population_mean = options.mu;
  sim.target_error = config.problem.spec.target_error;
  sim.trials = options.trials;
  sim.seed = options.seed;
  std::string source = "flags";
  if (options.epsilon.has_value()) {
    sim.epsilon = *options.epsilon;
    sim.n = *options.n;
  } else {
    absl::StatusOr<FeasibilityOutcome> solved = Solve(config.problem);
    if (!solved.ok()) {
      err << "error: " << solved.status().message() << "\n";
      return kExitError;
    }
    if (solved->status != FeasibilityStatus::kFeasible) {
      err << "error: the plan has no feasible point; pass --epsilon and --n\n";
      return kExitError;
    }
    sim.epsilon = solved->point->epsilon;
    sim.n = solved->point->n;
    source = "plan";
  }
  absl::StatusOr<SimulationReport> report = RunMeanStudy(sim);
  if (!report.ok()) {
    err << "error: " << report.status().message() << "\n";
    return kExitError;
  }
  json doc = {
      {"point",
       {{"epsilon", sim.epsilon}, {"n", sim.n}, {"mu", sim.population_mean},
        {"source", source}}},
      {"target_error", sim.target_error},
      {"seed", sim.seed},
      {"trials", report->trials},
      {"failures", report->failures},
      {"empirical_rate", report->empirical_rate},
      {"analytic_bound", report->analytic_bound.value},
      {"analytic_bound_raw", report->analytic_bound.raw},
      {"analytic_bound_clamped", report->analytic_bound.clamped},
      {"stderr", report->stderr_rate},
      {"verdict", std::string(SimulationVerdictName(report->verdict))},
  };
  out << doc.dump(2) << "\n";
  err << absl::StrFormat("simulate: %d/%d failures (rate %.6g) vs bound %.6g: %s\n",
                         report->failures, report->trials,
                         report->empirical_rate, report->analytic_bound.value,
                         std::string(SimulationVerdictName(report->verdict)));
  return report->verdict == SimulationVerdict::kConsistentWithBound
             ? kExitOk
             : kExitInfeasible;
}

}  // namespace epsiplan::cli
