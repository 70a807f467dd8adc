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
#include <limits>

#include "gtest/gtest.h"
#include "oracles.h"

namespace epsiplan {
namespace {

constexpr double kSoundnessTolerance = 1e-9;

FeasibilityProblem MeanProblem(double base_cost, double worst_case,
                               double budget) {
  FeasibilityProblem p;
  p.spec = StudySpec::MeanEstimation(0.05, 0.05);
  p.profile = {base_cost, worst_case, 0.002};
  p.policy.total = budget;
  return p;
}

FeasibilityProblem EducationConstrained() {
  FeasibilityProblem p;
  p.spec = StudySpec::MeanEstimation(0.05, 0.05);
  p.profile = {12.5, 12500, 0};
  p.policy.per_person_cap = 10;
  p.sides.n_max = 1000;
  p.sides.enforce_group_privacy_floor = true;
  p.sides.blatant = BlatantParams{8000, 0.1};
  return p;
}

bool Within(double value, double limit) {
  return value <= limit + kSoundnessTolerance * std::max(1.0, std::abs(limit));
}

// Re-checks every exact constraint with the long-double oracles.
void ExpectSound(const FeasibilityProblem& p, const StudyPoint& x) {
  const StudySpec& s = p.spec;
  oracle::Real bound = 0;
  switch (s.kind) {
    case StudyKind::kMeanEstimation:
      bound = oracle::MeanBound(x.epsilon, x.n, s.target_error);
      EXPECT_EQ(x.delta, 0.0);
      break;
    case StudyKind::kMwemPure:
      bound = oracle::MwemPure(x.epsilon, x.n, s.target_error, s.universe_size,
                               s.query_count);
      EXPECT_EQ(x.delta, 0.0);
      break;
    case StudyKind::kMwemApprox:
      bound = oracle::MwemApprox(x.epsilon, x.delta, x.n, s.target_error,
                                 s.universe_size, s.query_count);
      break;
  }
  EXPECT_TRUE(Within(static_cast<double>(bound), s.target_failure))
      << "accuracy " << static_cast<double>(bound);
  const double per_person = static_cast<double>(oracle::Marginal(
      x.epsilon, x.delta, p.profile.base_cost, p.profile.worst_case));
  if (p.policy.total) {
    EXPECT_TRUE(Within(per_person * static_cast<double>(x.n), *p.policy.total))
        << "total " << per_person * static_cast<double>(x.n);
  }
  if (p.policy.per_person_cap) {
    EXPECT_TRUE(Within(per_person, *p.policy.per_person_cap));
  }
  if (p.sides.n_max) EXPECT_LE(x.n, *p.sides.n_max);
  EXPECT_GE(x.n, 1);
  if (p.sides.enforce_group_privacy_floor) {
    EXPECT_TRUE(Within(1.0 / static_cast<double>(x.n), x.epsilon));
  }
  if (p.sides.blatant) {
    EXPECT_TRUE(Within(x.epsilon,
                       static_cast<double>(oracle::BlatantCeiling(
                           p.sides.blatant->universe_size,
                           p.sides.blatant->capture_probability))));
  }
  if (p.sides.eps_max_override) {
    EXPECT_TRUE(Within(x.epsilon, *p.sides.eps_max_override));
  }
  if (x.delta > 0) {
    EXPECT_TRUE(Within(x.delta * static_cast<double>(x.n), p.sides.max_delta_n));
  }
}

TEST(SideConstraintTest, BlatantCeiling) {
  EXPECT_NEAR(*BlatantEpsilonCeiling(1000000, 0.99), 13.80546, 1e-5);
  EXPECT_NEAR(*BlatantEpsilonCeiling(8000, 0.1), 6.6846117, 1e-6);
  EXPECT_NEAR(std::log((1e6 - 1) / (1e6 * 0.01)), 4.60517, 1e-5);
  EXPECT_FALSE(BlatantEpsilonCeiling(1, 0.5).ok());
  EXPECT_FALSE(BlatantEpsilonCeiling(100, 0.001).ok());
  EXPECT_FALSE(BlatantEpsilonCeiling(100, 1).ok());
}

TEST(SideConstraintTest, BlatantMatchesOracle) {
  oracle::Gen gen(41);
  for (int i = 0; i < 500; ++i) {
    const int64_t x = gen.LogInt(2, 1000000000);
    const double p =
        gen.Uniform(1.0 / static_cast<double>(x), 1.0) * (1 - 1e-9) + 1e-12;
    if (!(p > 1.0 / static_cast<double>(x) && p < 1)) continue;
    EXPECT_NEAR(*BlatantEpsilonCeiling(x, p),
                static_cast<double>(oracle::BlatantCeiling(x, p)), 1e-10);
  }
}

TEST(SideConstraintTest, GroupPrivacyFloor) {
  EXPECT_DOUBLE_EQ(GroupPrivacyFloor(1000), 0.001);
  EXPECT_DOUBLE_EQ(GroupPrivacyFloor(1), 1.0);
}

TEST(ValidateProblemTest, RejectsBadInput) {
  FeasibilityProblem p = MeanProblem(0.25, 2500, 3e4);
  EXPECT_TRUE(ValidateProblem(p).ok());
  p.policy = {};
  EXPECT_FALSE(ValidateProblem(p).ok());
  p = MeanProblem(0.25, 2500, 3e4);
  p.delta_mode = DeltaMode::Fixed(1e-8);
  EXPECT_FALSE(ValidateProblem(p).ok());  // mean study is pure
  p = MeanProblem(0.25, 2500, 3e4);
  p.sides.n_max = 0;
  EXPECT_FALSE(ValidateProblem(p).ok());
  p = MeanProblem(0.25, 2500, 3e4);
  p.options.grid_points = 1;
  EXPECT_FALSE(ValidateProblem(p).ok());
}

TEST(DeltaCandidatesTest, Modes) {
  EXPECT_EQ(DeltaCandidates(DeltaMode::Pure()), std::vector<double>{0.0});
  EXPECT_EQ(DeltaCandidates(DeltaMode::Fixed(1e-8)),
            std::vector<double>{1e-8});
  std::vector<double> grid = DeltaCandidates(DeltaMode::Searched());
  ASSERT_EQ(grid.size(), 11u);
  EXPECT_NEAR(grid.front(), 1e-12, 1e-24);
  EXPECT_NEAR(grid.back(), 1e-2, 1e-14);
  for (size_t i = 1; i < grid.size(); ++i) {
    EXPECT_NEAR(grid[i] / grid[i - 1], 10, 1e-9);
  }
}

TEST(AccuracyEpsilonMinTest, MeanUsesClosedForm) {
  StudySpec spec = StudySpec::MeanEstimation(0.05, 0.05);
  EXPECT_NEAR(**AccuracyEpsilonMin(spec, 0, 20000), 0.0079274440, 1e-9);
  EXPECT_FALSE(AccuracyEpsilonMin(spec, 0, 1000)->has_value());
}

TEST(AccuracyEpsilonMinTest, MwemBisectionMatchesOracleInversion) {
  oracle::Gen gen(42);
  for (int i = 0; i < 200; ++i) {
    const double t = gen.Uniform(0.02, 0.4);
    const int64_t x = gen.LogInt(2, 1 << 20);
    const int64_t c = gen.LogInt(1, 100000);
    const int64_t n = gen.LogInt(1000, 1000000000);
    const double delta = gen.LogUniform(1e-12, 1e-3);
    for (StudyKind kind : {StudyKind::kMwemPure, StudyKind::kMwemApprox}) {
      StudySpec spec = StudySpec::Mwem(kind, t, 0.05, x, c);
      const double d = kind == StudyKind::kMwemPure ? 0 : delta;
      std::optional<double> eps = *AccuracyEpsilonMin(spec, d, n);
      ASSERT_TRUE(eps.has_value());
      auto ok = [&](oracle::Real e) {
        const oracle::Real b =
            kind == StudyKind::kMwemPure
                ? oracle::MwemPure(e, n, t, x, c)
                : oracle::MwemApprox(e, d, n, t, x, c);
        return b <= 0.05L;
      };
      const double want = static_cast<double>(oracle::BisectUp(ok, 0, 1e12));
      EXPECT_NEAR(*eps, want, 1e-8 * want);
      EXPECT_TRUE(ok(*eps));
    }
  }
}

TEST(BudgetEpsilonMaxTest, MatchesInverseOfMarginalCost) {
  oracle::Gen gen(43);
  for (int i = 0; i < 500; ++i) {
    CostProfile profile{gen.LogUniform(1e-3, 1e3), gen.LogUniform(1, 1e6), 0};
    const int64_t n = gen.LogInt(1, 100000000);
    const double budget = gen.LogUniform(1, 1e8);
    BudgetPolicy policy{budget, std::nullopt};
    std::optional<double> eps = BudgetEpsilonMax(profile, policy, 0, n);
    const double want =
        std::log1p(budget / (static_cast<double>(n) * profile.base_cost));
    ASSERT_TRUE(eps.has_value());
    EXPECT_NEAR(*eps, want, 1e-8 * want);
  }
  // Free participants: no budget limit on epsilon.
  EXPECT_TRUE(std::isinf(
      *BudgetEpsilonMax({0, 10, 0}, {1.0, std::nullopt}, 0, 1000)));
  // Delta alone blows the budget.
  EXPECT_FALSE(
      BudgetEpsilonMax({1, 1e6, 0}, {1.0, std::nullopt}, 1e-2, 1000)
          .has_value());
}

TEST(SolveTest, ScenarioGate) {
  struct Case {
    const char* name;
    double e, w;
    FeasibilityStatus want;
  };
  const Case cases[] = {
      {"smoking", 254.8, 1274, FeasibilityStatus::kInfeasible},
      {"education", 12.5, 12500, FeasibilityStatus::kFeasible},
      {"movies", 0.25, 2500, FeasibilityStatus::kFeasible},
      {"social", 1, 100000, FeasibilityStatus::kFeasible},
  };
  for (const Case& c : cases) {
    FeasibilityProblem p = MeanProblem(c.e, c.w, 3e4);
    absl::StatusOr<FeasibilityOutcome> out = Solve(p);
    ASSERT_TRUE(out.ok()) << c.name;
    EXPECT_EQ(out->status, c.want) << c.name;
    if (out->status == FeasibilityStatus::kFeasible) {
      ExpectSound(p, *out->point);
    } else {
      EXPECT_FALSE(out->point.has_value());
      EXPECT_FALSE(out->diagnostics.empty());
    }
  }
}

TEST(SolveTest, SmokingThresholdMatchesLimitCost) {
  // Cost decreases toward (2/T) ln(1/alpha) E as N grows, so the feasibility
  // threshold in E sits near B / ((2/T) ln(1/alpha)) = 250.36.
  const double limit_e = 3e4 / (2 / 0.05 * std::log(1 / 0.05));
  EXPECT_NEAR(limit_e, 250.36, 0.01);
  EXPECT_EQ(Solve(MeanProblem(limit_e * 0.99, 1274, 3e4))->status,
            FeasibilityStatus::kFeasible);
  EXPECT_EQ(Solve(MeanProblem(limit_e * 1.0001, 1274, 3e4))->status,
            FeasibilityStatus::kInfeasible);
}

TEST(SolveTest, EducationWithSideConstraintsIsInfeasible) {
  FeasibilityProblem p = EducationConstrained();
  FeasibilityOutcome out = *Solve(p);
  EXPECT_EQ(out.status, FeasibilityStatus::kInfeasible);
  ASSERT_TRUE(out.diagnostic_point.has_value());
  EXPECT_EQ(out.diagnostic_point->n, 1000);
  bool saw_sampling = false;
  for (const ConstraintResidual& r : out.diagnostics) {
    if (r.name != "accuracy.sampling_term") continue;
    saw_sampling = true;
    EXPECT_EQ(r.value, 1.0);
    ASSERT_TRUE(r.raw.has_value());
    EXPECT_NEAR(*r.raw, 2 * std::exp(-1000 * 0.05 * 0.05 / 12), 1e-12);
    EXPECT_NEAR(*r.raw, 1.624, 1e-3);
    EXPECT_GT(r.value, r.limit);
  }
  EXPECT_TRUE(saw_sampling);
}

TEST(SolveTest, EducationInfeasibilityByBruteForce) {
  // No N <= 1000 has a nonempty window: the sampling term alone is >= alpha.
  for (int64_t n = 1; n <= 1000; ++n) {
    ASSERT_GT(2 * std::exp(-static_cast<double>(n) * 0.05 * 0.05 / 12), 0.05);
  }
}

TEST(SolveTest, ReevaluationAgrees) {
  FeasibilityProblem p = MeanProblem(0.25, 2500, 3e4);
  FeasibilityOutcome out = *Solve(p);
  ASSERT_EQ(out.status, FeasibilityStatus::kFeasible);
  std::vector<ConstraintResidual> r = *EvaluateConstraints(p, *out.point);
  EXPECT_TRUE(AllSatisfied(r));
  EXPECT_NEAR(*out.total_cost,
              *out.per_person_payment * static_cast<double>(out.point->n),
              1e-9 * *out.total_cost);
  EXPECT_LE(*out.total_cost, 3e4);
}

TEST(SolveTest, ReferenceMoviesPointIsFeasible) {
  // The optimizer returns a cheaper point, but (T/6, mean_min_n) must pass too.
  FeasibilityProblem p = MeanProblem(0.25, 2500, 3e4);
  StudyPoint reference{0.05 / 6, 0, 19653};
  EXPECT_TRUE(AllSatisfied(*EvaluateConstraints(p, reference)));
  ExpectSound(p, reference);
  FeasibilityOutcome out = *Solve(p);
  EXPECT_LE(*out.total_cost,
            MarginalCost(PrivacyLevel::Pure(0.05 / 6), p.profile) * 19653);
}

TEST(SolveTest, Deterministic) {
  FeasibilityProblem p = MeanProblem(12.5, 12500, 3e4);
  FeasibilityOutcome a = *Solve(p);
  FeasibilityOutcome b = *Solve(p);
  ASSERT_EQ(a.status, b.status);
  EXPECT_EQ(a.point->n, b.point->n);
  EXPECT_EQ(a.point->epsilon, b.point->epsilon);
  EXPECT_EQ(a.trace.refinement_evaluations, b.trace.refinement_evaluations);
}

TEST(SolveTest, MwemPureSocialFeasible) {
  FeasibilityProblem p;
  p.spec = StudySpec::Mwem(StudyKind::kMwemPure, 0.2, 0.05, 256, 10000);
  p.profile = {1, 100000, 0};
  p.policy.total = 2e6;
  FeasibilityOutcome out = *Solve(p);
  ASSERT_EQ(out.status, FeasibilityStatus::kFeasible);
  ExpectSound(p, *out.point);
}

TEST(SolveTest, MwemApproxFixedDeltaRespectsDeltaCap) {
  FeasibilityProblem p;
  p.spec = StudySpec::Mwem(StudyKind::kMwemApprox, 0.05, 0.05, 32768, 200000);
  p.profile = {1, 1e6, 0};
  p.policy.total = 2e6;
  p.delta_mode = DeltaMode::Fixed(1e-8);
  // delta * N <= 0.01 caps N at 1e6, where the bound needs too much epsilon.
  EXPECT_EQ(Solve(p)->status, FeasibilityStatus::kInfeasible);
  p.sides.max_delta_n = 1.0;
  FeasibilityOutcome relaxed = *Solve(p);
  ASSERT_EQ(relaxed.status, FeasibilityStatus::kFeasible);
  ExpectSound(p, *relaxed.point);
}

TEST(SolveTest, MwemApproxSearchedDelta) {
  FeasibilityProblem p;
  p.spec = StudySpec::Mwem(StudyKind::kMwemApprox, 0.05, 0.05, 32768, 200000);
  p.profile = {1, 1e6, 0};
  p.policy.total = 2e6;
  p.delta_mode = DeltaMode::Searched();
  FeasibilityOutcome out = *Solve(p);
  ASSERT_EQ(out.status, FeasibilityStatus::kFeasible);
  EXPECT_GT(out.point->delta, 0);
  EXPECT_LE(*out.total_cost, 2e6);
  ExpectSound(p, *out.point);
  EXPECT_EQ(out.trace.scans.size(), 11u);
}

TEST(SolveTest, NMaxRespected) {
  FeasibilityProblem p = MeanProblem(0.25, 2500, 3e4);
  p.sides.n_max = 25000;
  FeasibilityOutcome out = *Solve(p);
  ASSERT_EQ(out.status, FeasibilityStatus::kFeasible);
  EXPECT_LE(out.point->n, 25000);
  ExpectSound(p, *out.point);
}

// Random problem generator shared by the solver property tests.
FeasibilityProblem RandomProblem(oracle::Gen& gen, bool small_n_max) {
  FeasibilityProblem p;
  const int kind = static_cast<int>(gen.Int(0, 4));
  if (kind <= 2) {
    p.spec = StudySpec::MeanEstimation(gen.Uniform(0.02, 0.3),
                                       gen.Uniform(0.005, 0.3));
  } else {
    p.spec = StudySpec::Mwem(
        kind == 3 ? StudyKind::kMwemPure : StudyKind::kMwemApprox,
        gen.Uniform(0.05, 0.4), gen.Uniform(0.005, 0.3), gen.LogInt(2, 100000),
        gen.LogInt(1, 10000));
    if (kind == 4) {
      p.delta_mode = gen.Int(0, 1) ? DeltaMode::Fixed(gen.LogUniform(1e-10, 1e-4))
                                   : DeltaMode::Searched();
      p.delta_mode.search_points = 4;
    }
  }
  p.profile = {gen.LogUniform(1e-3, 100), gen.LogUniform(1, 1e6), 0};
  if (gen.Int(0, 3) > 0) p.policy.total = gen.LogUniform(1, 1e7);
  if (!p.policy.total || gen.Int(0, 2) == 0) {
    p.policy.per_person_cap = gen.LogUniform(1e-3, 100);
  }
  if (small_n_max) {
    p.sides.n_max = gen.LogInt(1, 5000);
  } else if (gen.Int(0, 2) == 0) {
    p.sides.n_max = gen.LogInt(1, 100000000);
  }
  p.sides.enforce_group_privacy_floor = gen.Int(0, 1) == 1;
  if (gen.Int(0, 2) == 0) {
    const int64_t x = gen.LogInt(10, 1000000);
    p.sides.blatant = BlatantParams{
        x, gen.Uniform(2.0 / static_cast<double>(x), 0.999)};
  }
  if (gen.Int(0, 3) == 0) {
    double cap = gen.LogUniform(0.01, 10);
    // An override above the blatant ceiling is a config error.
    if (p.sides.blatant) {
      cap = std::min(cap, *BlatantEpsilonCeiling(
                              p.sides.blatant->universe_size,
                              p.sides.blatant->capture_probability));
    }
    p.sides.eps_max_override = cap;
  }
  p.options.grid_points = 300;
  return p;
}

TEST(SolverPropertyTest, FeasiblePointsReValidate) {
  oracle::Gen gen(44);
  int feasible = 0;
  for (int i = 0; i < 300; ++i) {
    FeasibilityProblem p = RandomProblem(gen, false);
    absl::StatusOr<FeasibilityOutcome> out = Solve(p);
    ASSERT_TRUE(out.ok()) << out.status();
    ASSERT_NE(out->status, FeasibilityStatus::kUndetermined);
    if (out->status != FeasibilityStatus::kFeasible) continue;
    ++feasible;
    SCOPED_TRACE(testing::Message() << "case " << i);
    ExpectSound(p, *out->point);
    EXPECT_TRUE(AllSatisfied(*EvaluateConstraints(p, *out->point)));
  }
  EXPECT_GT(feasible, 30);
}

// Minimal cost over every N <= n_max, epsilon at the lower window edge,
// computed from the oracles alone. Infinity when nothing is feasible.
double BruteForceMinCost(const FeasibilityProblem& p) {
  double best = std::numeric_limits<double>::infinity();
  const StudySpec& s = p.spec;
  const double ceiling =
      std::min(p.sides.blatant
                   ? static_cast<double>(oracle::BlatantCeiling(
                         p.sides.blatant->universe_size,
                         p.sides.blatant->capture_probability))
                   : std::numeric_limits<double>::infinity(),
               p.sides.eps_max_override.value_or(
                   std::numeric_limits<double>::infinity()));
  for (int64_t n = 1; n <= *p.sides.n_max; ++n) {
    const oracle::Real nn = n;
    const oracle::Real sampling =
        2 * std::exp(-nn * s.target_error * s.target_error / 12);
    if (sampling >= s.target_failure) continue;
    oracle::Real eps = 2 / (s.target_error * nn) *
                       std::log(1 / (s.target_failure - sampling));
    if (p.sides.enforce_group_privacy_floor) eps = std::max(eps, 1 / nn);
    if (eps > ceiling * (1 + 1e-12)) continue;
    const oracle::Real per =
        oracle::Marginal(eps, 0, p.profile.base_cost, p.profile.worst_case);
    if (p.policy.total && per * nn > *p.policy.total * (1 + 1e-12)) continue;
    if (p.policy.per_person_cap &&
        per > *p.policy.per_person_cap * (1 + 1e-12)) {
      continue;
    }
    best = std::min(best, static_cast<double>(per * nn));
  }
  return best;
}

TEST(SolverPropertyTest, AgreesWithBruteForceOnSmallRanges) {
  oracle::Gen gen(45);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    FeasibilityProblem p = RandomProblem(gen, true);
    if (p.spec.kind != StudyKind::kMeanEstimation) continue;
    // Loosen the accuracy target so that small N can be feasible.
    p.spec.target_error = gen.Uniform(0.1, 0.5);
    p.options.grid_points = 2000;
    SCOPED_TRACE(testing::Message() << "case " << i);
    FeasibilityOutcome out = *Solve(p);
    const double brute = BruteForceMinCost(p);
    if (std::isinf(brute)) {
      EXPECT_EQ(out.status, FeasibilityStatus::kInfeasible);
      continue;
    }
    ++compared;
    ASSERT_EQ(out.status, FeasibilityStatus::kFeasible);
    EXPECT_LE(*out.total_cost, brute * (1 + 1e-6) + 1e-12);
    EXPECT_GE(*out.total_cost, brute * (1 - 1e-6) - 1e-12);
  }
  EXPECT_GT(compared, 20);
}

TEST(SolverPropertyTest, SufficientWindowImpliesFeasible) {
  oracle::Gen gen(46);
  int checked = 0;
  for (int i = 0; i < 500 && checked < 150; ++i) {
    const double t = gen.Uniform(0.02, 0.3);
    const double alpha = gen.Uniform(0.005, 0.3);
    const double budget = gen.LogUniform(10, 1e7);
    const double base = gen.LogUniform(1e-3, 1e3);
    FeasibilityProblem p;
    p.spec = StudySpec::MeanEstimation(t, alpha);
    p.profile = {base, 1, 0};
    p.policy.total = budget;
    p.options.grid_points = 300;
    std::optional<EpsilonInterval> window =
        *MeanEpsilonWindow(p.spec, budget, base);
    if (!window.has_value()) continue;
    ++checked;
    FeasibilityOutcome out = *Solve(p);
    ASSERT_EQ(out.status, FeasibilityStatus::kFeasible)
        << "T=" << t << " alpha=" << alpha << " B=" << budget << " E=" << base;
    // The solver can only improve on the reference point (T/6, min N).
    const double reference = MarginalCost(PrivacyLevel::Pure(t / 6), p.profile) *
                             static_cast<double>(oracle::MeanMinNReal(t, alpha));
    EXPECT_LE(*out.total_cost, reference * (1 + 1e-9));
  }
  EXPECT_GE(checked, 50);
}

TEST(RegionExportTest, SampleCountAndOrdering) {
  FeasibilityProblem p = MeanProblem(0.25, 2500, 3e4);
  RegionTable two = *RegionExport(p, 2);
  EXPECT_EQ(two.rows.size(), 2u);
  RegionTable table = *RegionExport(p, 100);
  ASSERT_EQ(table.rows.size(), 100u);
  bool some_feasible = false;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (i > 0) EXPECT_GT(table.rows[i].n, table.rows[i - 1].n);
    const CurveRow& r = table.rows[i];
    if (r.eps_accuracy_min && r.eps_budget_max &&
        *r.eps_accuracy_min <= *r.eps_budget_max) {
      some_feasible = true;
    }
  }
  EXPECT_TRUE(some_feasible);
  EXPECT_FALSE(RegionExport(p, 1).ok());
}

TEST(RegionExportTest, FreeParticipantsHaveNoBudgetCurve) {
  FeasibilityProblem p = MeanProblem(0, 2500, 3e4);
  RegionTable table = *RegionExport(p, 50);
  for (const CurveRow& r : table.rows) {
    EXPECT_TRUE(!r.eps_budget_max.has_value() || std::isinf(*r.eps_budget_max));
  }
}

TEST(RegionExportTest, EducationWindowsNeverOpen) {
  RegionTable table = *RegionExport(EducationConstrained(), 200);
  ASSERT_FALSE(table.rows.empty());
  for (const CurveRow& r : table.rows) {
    EXPECT_LE(r.n, 1000);
    if (r.eps_accuracy_min && r.eps_budget_max) {
      EXPECT_GT(*r.eps_accuracy_min, *r.eps_budget_max);
    }
  }
}

TEST(RegionExportTest, CurvesAreNonIncreasingInN) {
  oracle::Gen gen(47);
  for (int i = 0; i < 60; ++i) {
    FeasibilityProblem p = RandomProblem(gen, false);
    absl::StatusOr<RegionTable> table = RegionExport(p, 200);
    ASSERT_TRUE(table.ok()) << table.status();
    std::optional<double> prev_acc, prev_bud;
    for (const CurveRow& r : table->rows) {
      if (prev_acc) {
        ASSERT_TRUE(r.eps_accuracy_min.has_value());
        EXPECT_LE(*r.eps_accuracy_min, *prev_acc * (1 + 1e-9));
      }
      if (prev_bud && r.eps_budget_max && !std::isinf(*prev_bud)) {
        EXPECT_LE(*r.eps_budget_max, *prev_bud * (1 + 1e-9) + 1e-300);
      }
      if (r.eps_accuracy_min) prev_acc = r.eps_accuracy_min;
      if (r.eps_budget_max) prev_bud = r.eps_budget_max;
    }
  }
}

}  // namespace
}  // namespace epsiplan
