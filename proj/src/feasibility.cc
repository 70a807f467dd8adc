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

#include "epsiplan/feasibility.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <tuple>

#include "absl/strings/str_format.h"

namespace epsiplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bisection stops once the bracket is within this fraction of its upper end,
// or after kMaxBisectionSteps halvings.
constexpr double kBisectionRelTol = 1e-10;
constexpr int kMaxBisectionSteps = 60;
// Geometric bracketing never leaves [kTinyEpsilon, kHugeEpsilon].
constexpr double kTinyEpsilon = 1e-300;
constexpr double kHugeEpsilon = 1e300;

// Largest N the solver will consider; keeps N exactly representable as a
// double.
constexpr int64_t kMaxStudySize = int64_t{1} << 50;

bool WithinTolerance(double slack, double limit) {
  return slack >= -kResidualTolerance * std::max(1.0, std::abs(limit));
}

// Smallest epsilon >= 0 with satisfied(epsilon), for a predicate that is
// false below some root and true above it. Returns the satisfying end of the
// final bracket.
std::optional<double> SmallestSatisfying(
    const std::function<bool(double)>& satisfied) {
  if (satisfied(0)) return 0.0;
  double hi = 1;
  if (satisfied(hi)) {
    while (hi > kTinyEpsilon && satisfied(hi / 2)) hi /= 2;
  } else {
    while (!satisfied(hi)) {
      hi *= 2;
      if (hi > kHugeEpsilon) return std::nullopt;
    }
  }
  double lo = hi / 2;
  for (int i = 0; i < kMaxBisectionSteps && hi - lo > kBisectionRelTol * hi;
       ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (satisfied(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Largest epsilon >= 0 with satisfied(epsilon), for a predicate that is true
// below some root and false above it. +infinity when it never turns false.
std::optional<double> LargestSatisfying(
    const std::function<bool(double)>& satisfied) {
  if (!satisfied(0)) return std::nullopt;
  double lo = 1;
  if (satisfied(lo)) {
    while (satisfied(lo * 2)) {
      lo *= 2;
      if (lo > kHugeEpsilon) return kInf;
    }
  } else {
    while (!satisfied(lo)) {
      lo /= 2;
      if (lo < kTinyEpsilon) return 0.0;
    }
  }
  double hi = lo * 2;
  for (int i = 0; i < kMaxBisectionSteps && hi - lo > kBisectionRelTol * hi;
       ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (satisfied(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Strictly increasing integers from 1 to cap, log-spaced, min(points, cap) of
// them.
std::vector<int64_t> LogGrid(int64_t cap, int points) {
  std::vector<int64_t> grid;
  const int64_t count = std::min<int64_t>(points, cap);
  if (count <= 1) return {cap};
  const double log_cap = std::log(static_cast<double>(cap));
  grid.reserve(count);
  int64_t prev = 0;
  for (int64_t i = 0; i < count; ++i) {
    int64_t n = std::llround(std::exp(log_cap * static_cast<double>(i) /
                                      static_cast<double>(count - 1)));
    if (i == count - 1) n = cap;
    n = std::max(n, prev + 1);
    n = std::min(n, cap - (count - 1 - i));
    grid.push_back(n);
    prev = n;
  }
  return grid;
}

double SanityCeiling(const SideConstraints& sides) {
  double ceiling = kInf;
  if (sides.blatant.has_value()) {
    absl::StatusOr<double> blatant = BlatantEpsilonCeiling(
        sides.blatant->universe_size, sides.blatant->capture_probability);
    if (blatant.ok()) ceiling = std::min(ceiling, *blatant);
  }
  if (sides.eps_max_override.has_value()) {
    ceiling = std::min(ceiling, *sides.eps_max_override);
  }
  return ceiling;
}

// The epsilon window at one (delta, N).
struct Window {
  int64_t n = 1;
  std::optional<double> accuracy_min;
  std::optional<double> budget_max;
  double lower = kInf;  // max(accuracy_min, floor)
  double upper = -kInf;  // min(budget_max, ceiling)
  bool delta_ok = true;
  bool non_finite = false;
  bool feasible = false;
  double cost = kInf;  // total cost at epsilon = lower

  // How far the window is from opening; 0 when feasible.
  double Gap() const {
    if (feasible) return 0;
    if (!accuracy_min.has_value() || !budget_max.has_value() || !delta_ok) {
      return kInf;
    }
    return lower - upper;
  }
};

class WindowEvaluator {
 public:
  WindowEvaluator(const FeasibilityProblem& problem, double delta)
      : problem_(problem),
        delta_(delta),
        ceiling_(SanityCeiling(problem.sides)) {}

  Window Evaluate(int64_t n) {
    ++evaluations_;
    Window w;
    w.n = n;
    absl::StatusOr<std::optional<double>> acc =
        AccuracyEpsilonMin(problem_.spec, delta_, n);
    if (!acc.ok()) {
      w.non_finite = true;
      return w;
    }
    w.accuracy_min = *acc;
    w.budget_max =
        BudgetEpsilonMax(problem_.profile, problem_.policy, delta_, n);
    const double floor = problem_.sides.enforce_group_privacy_floor
                             ? GroupPrivacyFloor(n)
                             : 0.0;
    if (w.accuracy_min.has_value()) {
      w.lower = std::max(*w.accuracy_min, floor);
    }
    if (w.budget_max.has_value()) {
      w.upper = std::min(*w.budget_max, ceiling_);
    }
    if (std::isnan(w.lower) || std::isnan(w.upper)) {
      w.non_finite = true;
      return w;
    }
    if (delta_ > 0) {
      w.delta_ok = delta_ * static_cast<double>(n) <=
                   problem_.sides.max_delta_n;
    }
    w.feasible = w.delta_ok && w.accuracy_min.has_value() &&
                 w.budget_max.has_value() && w.lower <= w.upper;
    if (w.feasible) {
      w.cost = MarginalCost({w.lower, delta_}, problem_.profile) *
               static_cast<double>(n);
      if (!std::isfinite(w.cost)) {
        w.non_finite = true;
        w.feasible = false;
      }
    }
    return w;
  }

  int64_t evaluations() const { return evaluations_; }

 private:
  const FeasibilityProblem& problem_;
  double delta_;
  double ceiling_;
  int64_t evaluations_ = 0;
};

struct SearchRange {
  int64_t cap = 1;
  std::string reason;
};

// Upper end of the N search for one delta.
absl::StatusOr<SearchRange> ComputeSearchRange(const FeasibilityProblem& problem,
                                               double delta) {
  SearchRange range;
  if (problem.sides.n_max.has_value()) {
    range.cap = *problem.sides.n_max;
    range.reason = "n_max";
  } else {
    // Smallest N whose accuracy target is reachable with epsilon <= 1.
    auto reachable = [&](int64_t n) -> absl::StatusOr<bool> {
      absl::StatusOr<std::optional<double>> eps =
          AccuracyEpsilonMin(problem.spec, delta, n);
      if (!eps.ok()) return eps.status();
      return eps->has_value() && **eps <= 1.0;
    };
    int64_t hi = 1;
    while (true) {
      absl::StatusOr<bool> ok = reachable(hi);
      if (!ok.ok()) return ok.status();
      if (*ok) break;
      if (hi >= kMaxStudySize) {
        return absl::OutOfRangeError(
            "accuracy target unreachable at epsilon <= 1 for any N <= 2^50");
      }
      hi = std::min(hi * 2, kMaxStudySize);
    }
    int64_t lo = hi / 2;  // unreachable (or 0)
    while (hi - lo > 1) {
      const int64_t mid = lo + (hi - lo) / 2;
      absl::StatusOr<bool> ok = reachable(mid);
      if (!ok.ok()) return ok.status();
      if (*ok) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double scaled =
        std::ceil(static_cast<double>(hi) * problem.options.n_cap_factor);
    range.cap = scaled >= static_cast<double>(kMaxStudySize)
                    ? kMaxStudySize
                    : std::max<int64_t>(1, static_cast<int64_t>(scaled));
    range.reason = absl::StrFormat(
        "%g x smallest N reaching the accuracy target at epsilon <= 1 (%d)",
        problem.options.n_cap_factor, hi);
  }
  if (delta > 0) {
    const double delta_cap = std::floor(problem.sides.max_delta_n / delta);
    if (delta_cap < static_cast<double>(range.cap)) {
      range.cap = static_cast<int64_t>(std::max(0.0, delta_cap));
      range.reason = absl::StrFormat("delta * N <= %g", problem.sides.max_delta_n);
    }
  }
  return range;
}

// Ordering of feasible candidates: cheaper, then smaller epsilon, then
// smaller N, then smaller delta.
bool Better(const Window& a, double delta_a, const Window& b, double delta_b) {
  return std::tie(a.cost, a.lower, a.n, delta_a) <
         std::tie(b.cost, b.lower, b.n, delta_b);
}

// First integer in (infeasible_n, feasible_n] or [feasible_n, infeasible_n)
// at which feasibility flips, assuming one flip inside the bracket. Returns
// the feasible side.
Window RefineBoundary(WindowEvaluator& eval, const Window& feasible,
                      const Window& infeasible) {
  int64_t good = feasible.n;
  int64_t bad = infeasible.n;
  Window best = feasible;
  while (std::abs(good - bad) > 1) {
    const int64_t mid = std::min(good, bad) + std::abs(good - bad) / 2;
    Window w = eval.Evaluate(mid);
    if (w.feasible) {
      good = mid;
      best = w;
    } else {
      bad = mid;
    }
  }
  return best;
}

// Integer bisection on the sign of cost(n + 1) - cost(n) within [lo, hi].
Window RefineMinimum(WindowEvaluator& eval, int64_t lo, int64_t hi) {
  std::map<int64_t, Window> memo;
  auto at = [&](int64_t n) -> const Window& {
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, eval.Evaluate(n)).first;
    return it->second;
  };
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (at(mid).cost <= at(mid + 1).cost) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return at(lo);
}

std::vector<ConstraintResidual> Diagnose(const FeasibilityProblem& problem,
                                         const StudyPoint& point) {
  absl::StatusOr<std::vector<ConstraintResidual>> residuals =
      EvaluateConstraints(problem, point);
  if (!residuals.ok()) return {};
  return *std::move(residuals);
}

ConstraintResidual UpperLimit(std::string name, double value, double limit) {
  ConstraintResidual r;
  r.name = std::move(name);
  r.relation = "<=";
  r.value = value;
  r.limit = limit;
  r.slack = limit - value;
  r.satisfied = WithinTolerance(r.slack, limit);
  return r;
}

ConstraintResidual LowerLimit(std::string name, double value, double limit) {
  ConstraintResidual r;
  r.name = std::move(name);
  r.relation = ">=";
  r.value = value;
  r.limit = limit;
  r.slack = value - limit;
  r.satisfied = WithinTolerance(r.slack, limit);
  return r;
}

}  // namespace

std::string_view DeltaModeName(DeltaMode::Kind kind) {
  switch (kind) {
    case DeltaMode::Kind::kPure:
      return "pure";
    case DeltaMode::Kind::kFixed:
      return "fixed";
    case DeltaMode::Kind::kSearched:
      return "searched";
  }
  return "unknown";
}

std::string_view FeasibilityStatusName(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible:
      return "feasible";
    case FeasibilityStatus::kInfeasible:
      return "infeasible";
    case FeasibilityStatus::kUndetermined:
      return "undetermined";
  }
  return "unknown";
}

absl::StatusOr<double> BlatantEpsilonCeiling(int64_t universe_size,
                                             double capture_probability) {
  if (universe_size < 2) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "universe_size must be >= 2, got %d", universe_size));
  }
  const double size = static_cast<double>(universe_size);
  if (!(capture_probability > 1.0 / size && capture_probability < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "capture_probability must be in (1/|X|, 1) = (%g, 1), got %g",
        1.0 / size, capture_probability));
  }
  return std::max(std::log(capture_probability * size),
                  std::log((size - 1) / (size * (1 - capture_probability))));
}

double GroupPrivacyFloor(int64_t n) { return 1.0 / static_cast<double>(n); }

absl::StatusOr<std::optional<double>> AccuracyEpsilonMin(const StudySpec& spec,
                                                         double delta,
                                                         int64_t n) {
  if (spec.kind == StudyKind::kMeanEstimation) {
    if (delta != 0) {
      return absl::InvalidArgumentError(
          "mean_estimation is analysed at delta = 0");
    }
    return MeanEpsilonAtN(spec, n);
  }
  if (absl::Status s = ValidateStudySpec(spec); !s.ok()) return s;
  absl::Status failure;
  auto satisfied = [&](double epsilon) {
    absl::StatusOr<ProbabilityBound> bound =
        FailureBound({epsilon, delta}, n, spec);
    if (!bound.ok()) {
      failure = bound.status();
      return false;
    }
    return bound->value <= spec.target_failure;
  };
  std::optional<double> epsilon = SmallestSatisfying(satisfied);
  if (!failure.ok()) return failure;
  return epsilon;
}

std::optional<double> BudgetEpsilonMax(const CostProfile& profile,
                                       const BudgetPolicy& policy, double delta,
                                       int64_t n) {
  auto satisfied = [&](double epsilon) {
    return CheckBudget({epsilon, delta}, n, profile, policy).satisfied;
  };
  if (profile.base_cost == 0) {
    return satisfied(0) ? std::optional<double>(kInf) : std::nullopt;
  }
  return LargestSatisfying(satisfied);
}

absl::Status ValidateProblem(const FeasibilityProblem& problem) {
  if (absl::Status s = ValidateStudySpec(problem.spec); !s.ok()) return s;
  if (absl::Status s = ValidateCostProfile(problem.profile); !s.ok()) return s;
  if (absl::Status s = ValidateBudgetPolicy(problem.policy); !s.ok()) return s;

  const DeltaMode& mode = problem.delta_mode;
  switch (mode.kind) {
    case DeltaMode::Kind::kPure:
      break;
    case DeltaMode::Kind::kFixed:
      if (!(mode.value >= 0 && mode.value < 1)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "fixed delta must be in [0, 1), got %g", mode.value));
      }
      break;
    case DeltaMode::Kind::kSearched:
      if (!(mode.search_min > 0 && mode.search_min <= mode.search_max &&
            mode.search_max < 1)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "delta search range must satisfy 0 < min <= max < 1, got [%g, %g]",
            mode.search_min, mode.search_max));
      }
      if (mode.search_points < 1) {
        return absl::InvalidArgumentError("delta search needs >= 1 point");
      }
      break;
  }
  const bool pure_only = mode.kind == DeltaMode::Kind::kPure ||
                         (mode.kind == DeltaMode::Kind::kFixed && mode.value == 0);
  if (problem.spec.kind == StudyKind::kMwemApprox && pure_only) {
    return absl::InvalidArgumentError(
        "mwem_approx needs a positive delta (fixed or searched)");
  }
  if (problem.spec.kind != StudyKind::kMwemApprox && !pure_only) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s is a pure-privacy study; delta must be pure or fixed at 0",
        std::string(StudyKindName(problem.spec.kind))));
  }

  const SideConstraints& sides = problem.sides;
  if (sides.n_max.has_value() && *sides.n_max < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n_max must be >= 1, got %d", *sides.n_max));
  }
  if (sides.n_max.has_value() && *sides.n_max > kMaxStudySize) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n_max must be <= 2^50, got %d", *sides.n_max));
  }
  std::optional<double> blatant;
  if (sides.blatant.has_value()) {
    absl::StatusOr<double> ceiling = BlatantEpsilonCeiling(
        sides.blatant->universe_size, sides.blatant->capture_probability);
    if (!ceiling.ok()) return ceiling.status();
    blatant = *ceiling;
  }
  if (sides.eps_max_override.has_value()) {
    if (!(*sides.eps_max_override > 0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "eps_max_override must be positive, got %g", *sides.eps_max_override));
    }
    if (blatant.has_value() && *sides.eps_max_override > *blatant) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "eps_max_override (%g) exceeds the blatant-mechanism ceiling (%g)",
          *sides.eps_max_override, *blatant));
    }
  }
  if (!(sides.max_delta_n > 0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "max_delta_n must be positive, got %g", sides.max_delta_n));
  }
  if (problem.options.grid_points < 2) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid_points must be >= 2, got %d", problem.options.grid_points));
  }
  if (!(problem.options.n_cap_factor >= 1)) {
    return absl::InvalidArgumentError("n_cap_factor must be >= 1");
  }
  return absl::OkStatus();
}

std::vector<double> DeltaCandidates(const DeltaMode& mode) {
  switch (mode.kind) {
    case DeltaMode::Kind::kPure:
      return {0.0};
    case DeltaMode::Kind::kFixed:
      return {mode.value};
    case DeltaMode::Kind::kSearched:
      break;
  }
  if (mode.search_points == 1 || mode.search_min == mode.search_max) {
    return {mode.search_min};
  }
  std::vector<double> deltas;
  const double lo = std::log10(mode.search_min);
  const double hi = std::log10(mode.search_max);
  for (int i = 0; i < mode.search_points; ++i) {
    const double t = static_cast<double>(i) / (mode.search_points - 1);
    deltas.push_back(std::pow(10.0, lo + (hi - lo) * t));
  }
  deltas.back() = mode.search_max;
  deltas.front() = mode.search_min;
  return deltas;
}

absl::StatusOr<std::vector<ConstraintResidual>> EvaluateConstraints(
    const FeasibilityProblem& problem, const StudyPoint& point) {
  if (point.n < 1) {
    return absl::InvalidArgumentError("study size must be >= 1");
  }
  const PrivacyLevel level{point.epsilon, point.delta};
  std::vector<ConstraintResidual> out;

  absl::StatusOr<ProbabilityBound> bound =
      FailureBound(level, point.n, problem.spec);
  if (!bound.ok()) return bound.status();
  ConstraintResidual accuracy =
      UpperLimit("accuracy", bound->value, problem.spec.target_failure);
  accuracy.raw = bound->raw;
  out.push_back(accuracy);

  if (problem.spec.kind == StudyKind::kMeanEstimation) {
    const MeanFailureTerms terms = MeanFailureComponents(
        point.epsilon, point.n, problem.spec.target_error);
    ConstraintResidual sampling = UpperLimit(
        "accuracy.sampling_term", terms.sampling.value,
        problem.spec.target_failure);
    sampling.raw = terms.sampling.raw;
    sampling.informational = true;
    out.push_back(sampling);
    ConstraintResidual noise = UpperLimit(
        "accuracy.noise_term", terms.noise.value, problem.spec.target_failure);
    noise.raw = terms.noise.raw;
    noise.informational = true;
    out.push_back(noise);
  }

  const BudgetCheck budget =
      CheckBudget(level, point.n, problem.profile, problem.policy);
  if (problem.policy.total.has_value()) {
    out.push_back(
        UpperLimit("budget.total", budget.total_cost, *problem.policy.total));
  }
  if (problem.policy.per_person_cap.has_value()) {
    out.push_back(UpperLimit("budget.per_person", budget.per_person_payment,
                             *problem.policy.per_person_cap));
  }

  const SideConstraints& sides = problem.sides;
  if (sides.n_max.has_value()) {
    out.push_back(UpperLimit("n_max", static_cast<double>(point.n),
                             static_cast<double>(*sides.n_max)));
  }
  if (sides.enforce_group_privacy_floor) {
    out.push_back(LowerLimit("epsilon.group_privacy_floor", point.epsilon,
                             GroupPrivacyFloor(point.n)));
  }
  if (sides.blatant.has_value()) {
    absl::StatusOr<double> ceiling = BlatantEpsilonCeiling(
        sides.blatant->universe_size, sides.blatant->capture_probability);
    if (!ceiling.ok()) return ceiling.status();
    out.push_back(UpperLimit("epsilon.blatant_ceiling", point.epsilon, *ceiling));
  }
  if (sides.eps_max_override.has_value()) {
    out.push_back(UpperLimit("epsilon.max_override", point.epsilon,
                             *sides.eps_max_override));
  }
  if (point.delta > 0) {
    out.push_back(UpperLimit("delta.times_n",
                             point.delta * static_cast<double>(point.n),
                             sides.max_delta_n));
  }
  return out;
}

bool AllSatisfied(const std::vector<ConstraintResidual>& residuals) {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const ConstraintResidual& r) {
                       return r.informational || r.satisfied;
                     });
}

absl::StatusOr<FeasibilityOutcome> Solve(const FeasibilityProblem& problem) {
  if (absl::Status s = ValidateProblem(problem); !s.ok()) return s;

  FeasibilityOutcome outcome;
  std::optional<Window> best;
  double best_delta = 0;
  // Closest miss, for diagnostics when nothing is feasible.
  std::optional<Window> closest;
  double closest_delta = 0;
  bool any_non_finite = false;

  for (double delta : DeltaCandidates(problem.delta_mode)) {
    DeltaScan scan;
    scan.delta = delta;
    absl::StatusOr<SearchRange> range = ComputeSearchRange(problem, delta);
    if (!range.ok()) {
      scan.n_cap = 0;
      scan.n_cap_reason = std::string(range.status().message());
      ++scan.non_finite;
      any_non_finite = true;
      outcome.trace.scans.push_back(std::move(scan));
      continue;
    }
    scan.n_cap = range->cap;
    scan.n_cap_reason = range->reason;
    if (range->cap < 1) {
      outcome.trace.scans.push_back(std::move(scan));
      continue;
    }

    WindowEvaluator eval(problem, delta);
    const std::vector<int64_t> grid =
        LogGrid(range->cap, problem.options.grid_points);
    std::vector<Window> windows;
    windows.reserve(grid.size());
    for (int64_t n : grid) windows.push_back(eval.Evaluate(n));
    scan.grid_size = static_cast<int64_t>(windows.size());

    std::optional<size_t> best_index;
    for (size_t i = 0; i < windows.size(); ++i) {
      const Window& w = windows[i];
      if (w.non_finite) {
        ++scan.non_finite;
        any_non_finite = true;
      } else if (w.feasible) {
        ++scan.feasible;
        if (!best_index.has_value() ||
            Better(w, delta, windows[*best_index], delta)) {
          best_index = i;
        }
      } else if (!w.accuracy_min.has_value()) {
        ++scan.accuracy_unattainable;
      } else if (!w.budget_max.has_value()) {
        ++scan.budget_unattainable;
      } else {
        ++scan.window_empty;
      }
      if (!w.feasible && !w.non_finite &&
          (!closest.has_value() || w.Gap() <= closest->Gap())) {
        closest = w;
        closest_delta = delta;
      }
    }

    // Candidates: the grid optimum, every refined feasibility boundary, and
    // the local minimum of cost around the grid optimum.
    std::vector<Window> candidates;
    if (best_index.has_value()) candidates.push_back(windows[*best_index]);
    for (size_t i = 0; i + 1 < windows.size(); ++i) {
      const Window& a = windows[i];
      const Window& b = windows[i + 1];
      if (a.feasible == b.feasible || a.non_finite || b.non_finite) continue;
      candidates.push_back(a.feasible ? RefineBoundary(eval, a, b)
                                      : RefineBoundary(eval, b, a));
    }
    if (best_index.has_value()) {
      const size_t i = *best_index;
      const int64_t lo = i > 0 && windows[i - 1].feasible ? windows[i - 1].n
                                                          : windows[i].n;
      const int64_t hi = i + 1 < windows.size() && windows[i + 1].feasible
                             ? windows[i + 1].n
                             : windows[i].n;
      if (hi > lo) candidates.push_back(RefineMinimum(eval, lo, hi));
    }
    for (const Window& c : candidates) {
      if (!c.feasible) continue;
      scan.feasible_n_min =
          std::min(scan.feasible_n_min.value_or(c.n), c.n);
      scan.feasible_n_max =
          std::max(scan.feasible_n_max.value_or(c.n), c.n);
      if (!best.has_value() || Better(c, delta, *best, best_delta)) {
        best = c;
        best_delta = delta;
      }
    }
    for (const Window& w : windows) {
      if (!w.feasible) continue;
      scan.feasible_n_min = std::min(scan.feasible_n_min.value_or(w.n), w.n);
      scan.feasible_n_max = std::max(scan.feasible_n_max.value_or(w.n), w.n);
    }
    outcome.trace.refinement_evaluations +=
        eval.evaluations() - static_cast<int64_t>(windows.size());
    outcome.trace.scans.push_back(std::move(scan));
  }

  if (best.has_value()) {
    const StudyPoint point{best->lower, best_delta, best->n};
    outcome.diagnostics = Diagnose(problem, point);
    if (outcome.diagnostics.empty() || !AllSatisfied(outcome.diagnostics)) {
      // The search and the independent re-check disagree.
      outcome.status = FeasibilityStatus::kUndetermined;
      outcome.diagnostic_point = point;
      return outcome;
    }
    outcome.status = FeasibilityStatus::kFeasible;
    outcome.point = point;
    outcome.diagnostic_point = point;
    outcome.per_person_payment =
        MarginalCost({point.epsilon, point.delta}, problem.profile);
    outcome.total_cost =
        *outcome.per_person_payment * static_cast<double>(point.n);
    return outcome;
  }

  outcome.status = any_non_finite ? FeasibilityStatus::kUndetermined
                                  : FeasibilityStatus::kInfeasible;
  if (closest.has_value()) {
    // Probe the most accuracy-friendly epsilon the budget and ceilings allow.
    double epsilon = 0;
    if (std::isfinite(closest->upper) && closest->upper >= 0) {
      epsilon = closest->upper;
    } else if (std::isfinite(closest->lower)) {
      epsilon = closest->lower;
    } else if (problem.sides.enforce_group_privacy_floor) {
      epsilon = GroupPrivacyFloor(closest->n);
    }
    const StudyPoint point{epsilon, closest_delta, closest->n};
    outcome.diagnostic_point = point;
    outcome.diagnostics = Diagnose(problem, point);
  }
  return outcome;
}

absl::StatusOr<RegionTable> RegionExport(const FeasibilityProblem& problem,
                                         int samples) {
  if (absl::Status s = ValidateProblem(problem); !s.ok()) return s;
  if (samples < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("samples must be >= 2, got %d", samples));
  }
  RegionTable table;
  const std::vector<double> deltas = DeltaCandidates(problem.delta_mode);
  table.delta = deltas.back();
  if (problem.delta_mode.kind == DeltaMode::Kind::kSearched) {
    absl::StatusOr<FeasibilityOutcome> solved = Solve(problem);
    if (!solved.ok()) return solved.status();
    if (solved->point.has_value()) table.delta = solved->point->delta;
  }
  absl::StatusOr<SearchRange> range = ComputeSearchRange(problem, table.delta);
  if (!range.ok()) return range.status();
  if (range->cap < 1) return table;
  for (int64_t n : LogGrid(range->cap, samples)) {
    CurveRow row;
    row.n = n;
    absl::StatusOr<std::optional<double>> acc =
        AccuracyEpsilonMin(problem.spec, table.delta, n);
    if (!acc.ok()) return acc.status();
    row.eps_accuracy_min = *acc;
    row.eps_budget_max =
        BudgetEpsilonMax(problem.profile, problem.policy, table.delta, n);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace epsiplan
