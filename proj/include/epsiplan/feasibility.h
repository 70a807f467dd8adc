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

// Feasibility of a private study over (epsilon, delta, N).
//
// For a fixed N every constraint is monotone in epsilon: the failure bound
// falls as epsilon grows and the payment rises. The accuracy constraint
// therefore gives a minimal epsilon eps_acc(N), the budget gives a maximal
// eps_bud(N), and N is feasible exactly when
//
//   max(eps_acc(N), floor(N)) <= min(eps_bud(N), ceiling).
//
// Solve() scans N on a log grid, refines the feasibility boundaries and the
// cheapest bracket by integer bisection, and re-verifies the returned point
// against every exact constraint.

#ifndef EPSIPLAN_FEASIBILITY_H_
#define EPSIPLAN_FEASIBILITY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "epsiplan/accuracy.h"
#include "epsiplan/economics.h"

namespace epsiplan {

// Parameters of the record-publishing mechanism that is technically private
// for large epsilon; used to cap epsilon.
struct BlatantParams {
  int64_t universe_size = 0;       // |X|
  double capture_probability = 0;  // p*, in (1/|X|, 1)
};

struct SideConstraints {
  std::optional<int64_t> n_max;
  bool enforce_group_privacy_floor = false;  // epsilon >= 1/N
  std::optional<BlatantParams> blatant;
  std::optional<double> eps_max_override;
  // Keeps delta well below 1/N: delta * N <= max_delta_n whenever delta > 0.
  double max_delta_n = 0.01;
};

struct DeltaMode {
  enum class Kind { kPure, kFixed, kSearched };

  Kind kind = Kind::kPure;
  double value = 0;  // kFixed only
  // kSearched: log-spaced grid [search_min, search_max].
  double search_min = 1e-12;
  double search_max = 1e-2;
  int search_points = 11;

  static DeltaMode Pure() { return {}; }
  static DeltaMode Fixed(double delta) {
    DeltaMode mode;
    mode.kind = Kind::kFixed;
    mode.value = delta;
    return mode;
  }
  static DeltaMode Searched() {
    DeltaMode mode;
    mode.kind = Kind::kSearched;
    return mode;
  }
};

std::string_view DeltaModeName(DeltaMode::Kind kind);

inline constexpr int kDefaultGridPoints = 2000;

struct SolverOptions {
  int grid_points = kDefaultGridPoints;
  // Without n_max, N is searched up to this multiple of the smallest N at
  // which the accuracy target is reachable with epsilon <= 1.
  double n_cap_factor = 1e3;
};

struct FeasibilityProblem {
  StudySpec spec;
  CostProfile profile;
  BudgetPolicy policy;
  SideConstraints sides;
  DeltaMode delta_mode;
  SolverOptions options;
};

absl::Status ValidateProblem(const FeasibilityProblem& problem);

// The candidate deltas the problem asks to consider, in ascending order.
std::vector<double> DeltaCandidates(const DeltaMode& mode);

enum class FeasibilityStatus { kFeasible, kInfeasible, kUndetermined };

std::string_view FeasibilityStatusName(FeasibilityStatus status);

struct StudyPoint {
  double epsilon = 0;
  double delta = 0;
  int64_t n = 1;
};

// One constraint evaluated at a point. `slack` is positive when the
// constraint holds with room to spare, whatever the direction of `relation`.
struct ConstraintResidual {
  std::string name;
  std::string relation;  // "<=" or ">="
  double value = 0;
  double limit = 0;
  double slack = 0;
  bool satisfied = false;
  // Unclamped expression, for probability bounds that were clamped.
  std::optional<double> raw;
  // Components reported for context; they do not decide feasibility.
  bool informational = false;
};

// Scan certificate for one delta.
struct DeltaScan {
  double delta = 0;
  int64_t n_cap = 1;
  std::string n_cap_reason;
  int64_t grid_size = 0;
  int64_t feasible = 0;
  int64_t accuracy_unattainable = 0;  // no epsilon meets alpha at this N
  int64_t budget_unattainable = 0;    // even epsilon = 0 breaks the budget
  int64_t window_empty = 0;           // both bounds exist but do not overlap
  int64_t non_finite = 0;
  std::optional<int64_t> feasible_n_min;
  std::optional<int64_t> feasible_n_max;
};

struct SearchTrace {
  std::vector<DeltaScan> scans;
  int64_t refinement_evaluations = 0;
};

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kUndetermined;
  // For kFeasible the chosen point; otherwise absent.
  std::optional<StudyPoint> point;
  std::optional<double> per_person_payment;
  std::optional<double> total_cost;
  // Constraints at the chosen point, or at the closest grid point when
  // infeasible.
  std::vector<ConstraintResidual> diagnostics;
  std::optional<StudyPoint> diagnostic_point;
  SearchTrace trace;
};

absl::StatusOr<FeasibilityOutcome> Solve(const FeasibilityProblem& problem);

// Evaluates every exact constraint of `problem` at `point` from scratch.
absl::StatusOr<std::vector<ConstraintResidual>> EvaluateConstraints(
    const FeasibilityProblem& problem, const StudyPoint& point);

// True when every non-informational residual is satisfied.
bool AllSatisfied(const std::vector<ConstraintResidual>& residuals);

// max(ln(p* |X|), ln((|X| - 1) / (|X| (1 - p*)))): the epsilon above which
// publishing a targeted record with probability p* counts as private.
absl::StatusOr<double> BlatantEpsilonCeiling(int64_t universe_size,
                                             double capture_probability);

// 1/N: below this, the output barely depends on the whole database.
double GroupPrivacyFloor(int64_t n);

// Minimal epsilon meeting the accuracy target at (delta, n); std::nullopt if
// none does. Closed form for mean estimation, bisection for MWEM.
absl::StatusOr<std::optional<double>> AccuracyEpsilonMin(const StudySpec& spec,
                                                         double delta,
                                                         int64_t n);

// Maximal epsilon the budget allows at (delta, n); +infinity when the budget
// never binds, std::nullopt when even epsilon = 0 is over budget.
std::optional<double> BudgetEpsilonMax(const CostProfile& profile,
                                       const BudgetPolicy& policy, double delta,
                                       int64_t n);

// One row of the constant-accuracy / constant-budget curves.
struct CurveRow {
  int64_t n = 1;
  std::optional<double> eps_accuracy_min;
  std::optional<double> eps_budget_max;  // may be +infinity
};

struct RegionTable {
  double delta = 0;
  std::vector<CurveRow> rows;
};

// Samples both curves on `samples` log-spaced N values over the solver's
// search range. Searched-delta problems use the delta picked by Solve(), or
// the largest grid delta when no point is feasible.
absl::StatusOr<RegionTable> RegionExport(const FeasibilityProblem& problem,
                                         int samples);

}  // namespace epsiplan

#endif  // EPSIPLAN_FEASIBILITY_H_
