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

// Participant compensation and analyst budget arithmetic. Currency is an
// abstract nonnegative real.

#ifndef EPSIPLAN_ECONOMICS_H_
#define EPSIPLAN_ECONOMICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "epsiplan/accuracy.h"

namespace epsiplan {

struct CostProfile {
  double base_cost = 0;          // E: expected cost even without participating
  double worst_case = 0;         // W: cost of full public disclosure
  double exposure_fraction = 0;  // phi: share of non-private participants exposed
};

absl::Status ValidateCostProfile(const CostProfile& profile);

// Non-fatal observations about a profile, e.g. W < E.
std::vector<std::string> CostProfileWarnings(const CostProfile& profile);

// At least one limit must be set; when both are set both bind.
struct BudgetPolicy {
  std::optional<double> total;           // B
  std::optional<double> per_person_cap;  // B0
};

absl::Status ValidateBudgetPolicy(const BudgetPolicy& policy);

// (e^eps - 1) E + delta W: what each participant must be paid.
double MarginalCost(const PrivacyLevel& level, const CostProfile& profile);

// [e^-eps E, e^eps E], the range of a participant's expected cost once they
// join an eps-private study. Pure privacy only.
absl::StatusOr<EpsilonInterval> ExpectedCostBounds(const PrivacyLevel& level,
                                                   double base_cost);

struct BudgetCheck {
  bool satisfied = false;
  double per_person_payment = 0;
  double total_cost = 0;
  // Slack (limit - value) for each limit present in the policy.
  std::optional<double> total_slack;
  std::optional<double> per_person_slack;
};

// A limit counts as met when value <= limit + kResidualTolerance * max(1,
// limit).
BudgetCheck CheckBudget(const PrivacyLevel& level, int64_t n,
                        const CostProfile& profile, const BudgetPolicy& policy);

struct NonprivateSize {
  double bound = 0;  // (1 / (8 T^2)) ln(1 / (2 alpha)), floored at 0
  int64_t n = 1;     // ceil(bound), at least one participant
};

// Minimum size of a non-private mean-estimation study, from the lower
// Chernoff bound at mu = 1/4.
absl::StatusOr<NonprivateSize> NonprivateMinN(const StudySpec& spec);

// phi W N', using the real-valued N' bound.
absl::StatusOr<double> NonprivateBudget(const StudySpec& spec,
                                        const CostProfile& profile);

// Right-hand side ln(1 + phi W ln(1/(2 alpha)) / (96 E ln(3/alpha))) of the
// sufficient condition T/6 <= rhs. Requires E > 0.
absl::StatusOr<double> PrivateCheaperThreshold(const StudySpec& spec,
                                               const CostProfile& profile);

// True when the sufficient condition holds, so the private study is cheaper
// than the non-private one. False is inconclusive.
absl::StatusOr<bool> PrivateCheaper(const StudySpec& spec,
                                    const CostProfile& profile);

}  // namespace epsiplan

#endif  // EPSIPLAN_ECONOMICS_H_
