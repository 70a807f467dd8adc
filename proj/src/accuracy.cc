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

#include "epsiplan/accuracy.h"

#include <cmath>
#include <limits>
#include <string>

#include "absl/strings/str_format.h"

namespace epsiplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status RequireKind(const StudySpec& spec, StudyKind kind) {
  if (spec.kind != kind) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "expected a %s study, got %s", std::string(StudyKindName(kind)),
        std::string(StudyKindName(spec.kind))));
  }
  return ValidateStudySpec(spec);
}

absl::Status RequirePositiveN(int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("study size must be >= 1, got %d", n));
  }
  return absl::OkStatus();
}

// 32 |C| ln|X| / T^2, shared by both MWEM bounds.
double MwemPrefactor(const StudySpec& spec) {
  const double log_universe = std::log(static_cast<double>(spec.universe_size));
  return 32.0 * static_cast<double>(spec.query_count) * log_universe /
         (spec.target_error * spec.target_error);
}

}  // namespace

std::string_view StudyKindName(StudyKind kind) {
  switch (kind) {
    case StudyKind::kMeanEstimation:
      return "mean_estimation";
    case StudyKind::kMwemPure:
      return "mwem_pure";
    case StudyKind::kMwemApprox:
      return "mwem_approx";
  }
  return "unknown";
}

std::optional<StudyKind> ParseStudyKind(std::string_view name) {
  for (StudyKind kind : {StudyKind::kMeanEstimation, StudyKind::kMwemPure,
                         StudyKind::kMwemApprox}) {
    if (StudyKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

absl::Status ValidateStudySpec(const StudySpec& spec) {
  if (!(spec.target_error > 0 && spec.target_error < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target_error must be in (0, 1), got %g", spec.target_error));
  }
  if (!(spec.target_failure > 0 && spec.target_failure < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target_failure must be in (0, 1), got %g", spec.target_failure));
  }
  if (spec.kind != StudyKind::kMeanEstimation) {
    if (spec.universe_size < 2) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "universe_size must be >= 2 for MWEM studies, got %d",
          spec.universe_size));
    }
    if (spec.query_count < 1) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "query_count must be >= 1 for MWEM studies, got %d",
          spec.query_count));
    }
  }
  return absl::OkStatus();
}

absl::Status ValidatePrivacyLevel(const PrivacyLevel& level) {
  if (!(level.epsilon >= 0) || !std::isfinite(level.epsilon)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon must be finite and nonnegative, got %g", level.epsilon));
  }
  if (!(level.delta >= 0 && level.delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must be in [0, 1), got %g", level.delta));
  }
  return absl::OkStatus();
}

MeanFailureTerms MeanFailureComponents(double epsilon, int64_t n,
                                       double target_error) {
  const double half_error = target_error / 2.0;
  MeanFailureTerms terms;
  // Sampling error: Chernoff at deviation T/2 with mu <= 1.
  absl::StatusOr<ProbabilityBound> sampling = ChernoffUpper(n, half_error, 1.0);
  terms.sampling = sampling.ok() ? *sampling : ProbabilityBound::FromRaw(NAN);
  // Noise: Laplace tail at T/2 with sensitivity 1/N.
  absl::StatusOr<LaplaceScale> scale =
      LaplaceScale::Create(1.0 / static_cast<double>(n), epsilon);
  terms.noise = scale.ok() ? LaplaceTail(half_error, *scale)
                           : ProbabilityBound::FromRaw(1.0);
  terms.total = terms.sampling + terms.noise;
  return terms;
}

absl::StatusOr<ProbabilityBound> MeanFailureBound(const PrivacyLevel& level,
                                                  int64_t n,
                                                  const StudySpec& spec) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMeanEstimation); !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidatePrivacyLevel(level); !s.ok()) return s;
  if (level.delta != 0) {
    return absl::InvalidArgumentError(
        "the mean-estimation bound is for pure epsilon-privacy (delta = 0)");
  }
  if (absl::Status s = RequirePositiveN(n); !s.ok()) return s;
  return MeanFailureComponents(level.epsilon, n, spec.target_error).total;
}

absl::StatusOr<int64_t> MeanMinN(const StudySpec& spec) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMeanEstimation); !s.ok()) {
    return s;
  }
  const double t = spec.target_error;
  const double bound = 12.0 / (t * t) * std::log(3.0 / spec.target_failure);
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(bound)));
}

absl::StatusOr<std::optional<EpsilonInterval>> MeanEpsilonWindow(
    const StudySpec& spec, double budget, double base_cost) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMeanEstimation); !s.ok()) {
    return s;
  }
  if (!(budget > 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("budget must be positive, got %g", budget));
  }
  if (!(base_cost >= 0) || !std::isfinite(base_cost)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "base cost must be finite and nonnegative, got %g", base_cost));
  }
  const double t = spec.target_error;
  const double lower = t / 6.0;
  double upper = kInf;
  if (base_cost > 0) {
    upper = std::log1p(budget * t * t /
                       (12.0 * base_cost * std::log(3.0 / spec.target_failure)));
  }
  if (upper < lower) return std::optional<EpsilonInterval>();
  return std::optional<EpsilonInterval>(EpsilonInterval{lower, upper});
}

absl::StatusOr<double> MeanMaxBaseCost(const StudySpec& spec, double budget) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMeanEstimation); !s.ok()) {
    return s;
  }
  if (!(budget > 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("budget must be positive, got %g", budget));
  }
  const double t = spec.target_error;
  return budget * t * t /
         (12.0 * std::log(3.0 / spec.target_failure) * std::expm1(t / 6.0));
}

absl::StatusOr<std::optional<double>> MeanEpsilonAtN(const StudySpec& spec,
                                                     int64_t n) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMeanEstimation); !s.ok()) {
    return s;
  }
  if (absl::Status s = RequirePositiveN(n); !s.ok()) return s;
  const double t = spec.target_error;
  const double alpha = spec.target_failure;
  const double nd = static_cast<double>(n);
  const double slack =
      alpha - MeanFailureComponents(0, n, t).sampling.raw;
  if (!(slack > 0)) return std::optional<double>();
  double epsilon = 2.0 / (t * nd) * std::log(1.0 / slack);
  // The closed form can land a rounding error above alpha; step up until the
  // evaluated bound agrees.
  double step = epsilon * 4 * std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 64 && MeanFailureComponents(epsilon, n, t).total.raw > alpha;
       ++i) {
    epsilon += step;
    step *= 2;
  }
  return std::optional<double>(epsilon);
}

absl::StatusOr<ProbabilityBound> MwemPureFailure(const PrivacyLevel& level,
                                                 int64_t n,
                                                 const StudySpec& spec) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMwemPure); !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidatePrivacyLevel(level); !s.ok()) return s;
  if (level.delta != 0) {
    return absl::InvalidArgumentError(
        "pure MWEM is evaluated at delta = 0; use mwem_approx for delta > 0");
  }
  if (absl::Status s = RequirePositiveN(n); !s.ok()) return s;
  const double t = spec.target_error;
  const double log_universe = std::log(static_cast<double>(spec.universe_size));
  const double exponent =
      level.epsilon * static_cast<double>(n) * t * t * t / (128.0 * log_universe);
  return ProbabilityBound::FromRaw(MwemPrefactor(spec) * std::exp(-exponent));
}

absl::StatusOr<ProbabilityBound> MwemApproxFailure(const PrivacyLevel& level,
                                                   int64_t n,
                                                   const StudySpec& spec) {
  if (absl::Status s = RequireKind(spec, StudyKind::kMwemApprox); !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidatePrivacyLevel(level); !s.ok()) return s;
  if (!(level.delta > 0)) {
    return absl::InvalidArgumentError(
        "(epsilon, delta)-MWEM needs delta in (0, 1)");
  }
  if (absl::Status s = RequirePositiveN(n); !s.ok()) return s;
  const double t = spec.target_error;
  const double log_universe = std::log(static_cast<double>(spec.universe_size));
  const double denominator =
      8.0 * std::sqrt(log_universe * std::log(1.0 / level.delta));
  const double exponent =
      level.epsilon * static_cast<double>(n) * t * t / denominator;
  return ProbabilityBound::FromRaw(MwemPrefactor(spec) * std::exp(-exponent));
}

absl::StatusOr<ProbabilityBound> FailureBound(const PrivacyLevel& level,
                                              int64_t n, const StudySpec& spec) {
  switch (spec.kind) {
    case StudyKind::kMeanEstimation:
      return MeanFailureBound(level, n, spec);
    case StudyKind::kMwemPure:
      return MwemPureFailure(level, n, spec);
    case StudyKind::kMwemApprox:
      return MwemApproxFailure(level, n, spec);
  }
  return absl::InternalError("unknown study kind");
}

}  // namespace epsiplan
