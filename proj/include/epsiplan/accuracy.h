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

// Analyst-side accuracy functions A(epsilon, N): the probability that a
// mechanism misses its target error T, for each supported study kind.

#ifndef EPSIPLAN_ACCURACY_H_
#define EPSIPLAN_ACCURACY_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "epsiplan/dp_core.h"

namespace epsiplan {

enum class StudyKind {
  // Proportion estimation through the Laplace mechanism (sensitivity 1/N).
  kMeanEstimation,
  // Pure epsilon-private MWEM answering a class of counting queries.
  kMwemPure,
  // (epsilon, delta)-private MWEM.
  kMwemApprox,
};

std::string_view StudyKindName(StudyKind kind);
std::optional<StudyKind> ParseStudyKind(std::string_view name);

struct StudySpec {
  StudyKind kind = StudyKind::kMeanEstimation;
  double target_error = 0.05;    // T
  double target_failure = 0.05;  // alpha
  // Only read for the MWEM kinds.
  int64_t universe_size = 0;  // |X|
  int64_t query_count = 0;    // |C|

  static StudySpec MeanEstimation(double target_error, double target_failure) {
    return {StudyKind::kMeanEstimation, target_error, target_failure, 0, 0};
  }
  static StudySpec Mwem(StudyKind kind, double target_error,
                        double target_failure, int64_t universe_size,
                        int64_t query_count) {
    return {kind, target_error, target_failure, universe_size, query_count};
  }
};

absl::Status ValidateStudySpec(const StudySpec& spec);

// delta == 0 is pure epsilon-privacy.
struct PrivacyLevel {
  double epsilon = 0;
  double delta = 0;

  static PrivacyLevel Pure(double epsilon) { return {epsilon, 0}; }
};

absl::Status ValidatePrivacyLevel(const PrivacyLevel& level);

// Closed interval of epsilon values; `upper` may be +infinity.
struct EpsilonInterval {
  double lower = 0;
  double upper = 0;
};

// The two error sources of the noisy-proportion study, bounded separately.
struct MeanFailureTerms {
  ProbabilityBound sampling;  // 2 exp(-N T^2 / 12)
  ProbabilityBound noise;     // exp(-T N epsilon / 2); 1 when epsilon == 0
  ProbabilityBound total;
};

// Evaluates both terms for the mean-estimation study. No validation beyond
// what the arithmetic needs; callers pass checked inputs.
MeanFailureTerms MeanFailureComponents(double epsilon, int64_t n,
                                       double target_error);

absl::StatusOr<ProbabilityBound> MeanFailureBound(const PrivacyLevel& level,
                                                  int64_t n,
                                                  const StudySpec& spec);

// Smallest N satisfying the sufficient condition 3 exp(-N T^2/12) <= alpha,
// i.e. ceil((12 / T^2) ln(3 / alpha)).
absl::StatusOr<int64_t> MeanMinN(const StudySpec& spec);

// Window [T/6, ln(1 + B T^2 / (12 E ln(3/alpha)))] from the closed-form
// sufficient condition. std::nullopt means the sufficient condition fails;
// that does not prove infeasibility.
absl::StatusOr<std::optional<EpsilonInterval>> MeanEpsilonWindow(
    const StudySpec& spec, double budget, double base_cost);

// Largest base cost E for which the window above is nonempty at `budget`.
absl::StatusOr<double> MeanMaxBaseCost(const StudySpec& spec, double budget);

// Minimal epsilon meeting the exact mean-estimation bound at n, or
// std::nullopt when the sampling term alone already reaches alpha. The
// returned value is verified against MeanFailureBound.
absl::StatusOr<std::optional<double>> MeanEpsilonAtN(const StudySpec& spec,
                                                     int64_t n);

absl::StatusOr<ProbabilityBound> MwemPureFailure(const PrivacyLevel& level,
                                                 int64_t n,
                                                 const StudySpec& spec);

absl::StatusOr<ProbabilityBound> MwemApproxFailure(const PrivacyLevel& level,
                                                   int64_t n,
                                                   const StudySpec& spec);

// Dispatches on spec.kind.
absl::StatusOr<ProbabilityBound> FailureBound(const PrivacyLevel& level,
                                              int64_t n, const StudySpec& spec);

}  // namespace epsiplan

#endif  // EPSIPLAN_ACCURACY_H_
