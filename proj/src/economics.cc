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

#include "epsiplan/economics.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace epsiplan {
namespace {

bool NonnegativeFinite(double x) { return x >= 0 && std::isfinite(x); }

bool WithinLimit(double value, double limit) {
  return value <= limit + kResidualTolerance * std::max(1.0, limit);
}

absl::Status RequireMeanEstimation(const StudySpec& spec) {
  if (spec.kind != StudyKind::kMeanEstimation) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "the non-private comparison applies to mean_estimation studies, got %s",
        std::string(StudyKindName(spec.kind))));
  }
  return ValidateStudySpec(spec);
}

}  // namespace

absl::Status ValidateCostProfile(const CostProfile& profile) {
  if (!NonnegativeFinite(profile.base_cost)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "base_cost must be finite and >= 0, got %g", profile.base_cost));
  }
  if (!NonnegativeFinite(profile.worst_case)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "worst_case must be finite and >= 0, got %g", profile.worst_case));
  }
  if (!(profile.exposure_fraction >= 0 && profile.exposure_fraction <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "exposure_fraction must be in [0, 1], got %g",
        profile.exposure_fraction));
  }
  return absl::OkStatus();
}

std::vector<std::string> CostProfileWarnings(const CostProfile& profile) {
  std::vector<std::string> warnings;
  if (profile.worst_case < profile.base_cost) {
    warnings.push_back(absl::StrFormat(
        "worst_case (%g) is below base_cost (%g); full disclosure is expected "
        "to cost at least the base cost",
        profile.worst_case, profile.base_cost));
  }
  return warnings;
}

absl::Status ValidateBudgetPolicy(const BudgetPolicy& policy) {
  if (!policy.total.has_value() && !policy.per_person_cap.has_value()) {
    return absl::InvalidArgumentError(
        "budget needs a total, a per_person_cap, or both");
  }
  if (policy.total.has_value() && !NonnegativeFinite(*policy.total)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "total budget must be finite and >= 0, got %g", *policy.total));
  }
  if (policy.per_person_cap.has_value() &&
      !NonnegativeFinite(*policy.per_person_cap)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "per_person_cap must be finite and >= 0, got %g",
        *policy.per_person_cap));
  }
  return absl::OkStatus();
}

double MarginalCost(const PrivacyLevel& level, const CostProfile& profile) {
  // Free participants stay free at any epsilon (avoids inf * 0).
  const double pure_part =
      profile.base_cost == 0 ? 0.0 : std::expm1(level.epsilon) * profile.base_cost;
  const double delta_part =
      level.delta == 0 ? 0.0 : level.delta * profile.worst_case;
  return pure_part + delta_part;
}

absl::StatusOr<EpsilonInterval> ExpectedCostBounds(const PrivacyLevel& level,
                                                   double base_cost) {
  if (absl::Status s = ValidatePrivacyLevel(level); !s.ok()) return s;
  if (level.delta != 0) {
    return absl::InvalidArgumentError(
        "the participation-cost envelope holds for pure privacy only; use "
        "MarginalCost for delta > 0");
  }
  if (!NonnegativeFinite(base_cost)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "base cost must be finite and >= 0, got %g", base_cost));
  }
  return EpsilonInterval{std::exp(-level.epsilon) * base_cost,
                         std::exp(level.epsilon) * base_cost};
}

BudgetCheck CheckBudget(const PrivacyLevel& level, int64_t n,
                        const CostProfile& profile, const BudgetPolicy& policy) {
  BudgetCheck check;
  check.per_person_payment = MarginalCost(level, profile);
  check.total_cost = check.per_person_payment * static_cast<double>(n);
  check.satisfied = true;
  if (policy.total.has_value()) {
    check.total_slack = *policy.total - check.total_cost;
    check.satisfied &= WithinLimit(check.total_cost, *policy.total);
  }
  if (policy.per_person_cap.has_value()) {
    check.per_person_slack = *policy.per_person_cap - check.per_person_payment;
    check.satisfied &=
        WithinLimit(check.per_person_payment, *policy.per_person_cap);
  }
  return check;
}

absl::StatusOr<NonprivateSize> NonprivateMinN(const StudySpec& spec) {
  if (absl::Status s = RequireMeanEstimation(spec); !s.ok()) return s;
  const double t = spec.target_error;
  NonprivateSize size;
  size.bound =
      std::max(0.0, std::log(1.0 / (2.0 * spec.target_failure)) / (8.0 * t * t));
  size.n = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(size.bound)));
  return size;
}

absl::StatusOr<double> NonprivateBudget(const StudySpec& spec,
                                        const CostProfile& profile) {
  absl::StatusOr<NonprivateSize> size = NonprivateMinN(spec);
  if (!size.ok()) return size.status();
  if (absl::Status s = ValidateCostProfile(profile); !s.ok()) return s;
  return profile.exposure_fraction * profile.worst_case * size->bound;
}

absl::StatusOr<double> PrivateCheaperThreshold(const StudySpec& spec,
                                               const CostProfile& profile) {
  if (absl::Status s = RequireMeanEstimation(spec); !s.ok()) return s;
  if (absl::Status s = ValidateCostProfile(profile); !s.ok()) return s;
  if (!(profile.base_cost > 0)) {
    return absl::InvalidArgumentError(
        "the cheaper-than-non-private condition needs base_cost > 0");
  }
  const double alpha = spec.target_failure;
  // A negative log means the non-private study needs nobody (alpha >= 1/2).
  const double nonprivate_log = std::max(0.0, std::log(1.0 / (2.0 * alpha)));
  return std::log1p(profile.exposure_fraction * profile.worst_case *
                    nonprivate_log /
                    (96.0 * profile.base_cost * std::log(3.0 / alpha)));
}

absl::StatusOr<bool> PrivateCheaper(const StudySpec& spec,
                                    const CostProfile& profile) {
  absl::StatusOr<double> rhs = PrivateCheaperThreshold(spec, profile);
  if (!rhs.ok()) return rhs.status();
  return spec.target_error / 6.0 <= *rhs;
}

}  // namespace epsiplan
