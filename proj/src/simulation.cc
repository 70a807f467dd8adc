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

#include "epsiplan/simulation.h"

#include <cmath>
#include <random>

#include "absl/strings/str_format.h"
#include "epsiplan/accuracy.h"

namespace epsiplan {

absl::Status ValidateSimulationConfig(const SimulationConfig& config) {
  if (!(config.population_mean >= 0 && config.population_mean <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "population_mean must be in [0, 1], got %g", config.population_mean));
  }
  if (config.n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n must be >= 1, got %d", config.n));
  }
  if (!(config.epsilon > 0) || !std::isfinite(config.epsilon)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon must be finite and positive, got %g", config.epsilon));
  }
  if (!(config.target_error > 0 && config.target_error < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target_error must be in (0, 1), got %g", config.target_error));
  }
  if (config.trials < kMinTrials) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "trials must be >= %d, got %d", kMinTrials, config.trials));
  }
  return absl::OkStatus();
}

std::string_view SimulationVerdictName(SimulationVerdict verdict) {
  switch (verdict) {
    case SimulationVerdict::kConsistentWithBound:
      return "consistent_with_bound";
    case SimulationVerdict::kBoundViolated:
      return "bound_violated";
  }
  return "unknown";
}

SimulationReport Judge(int64_t failures, int64_t trials,
                       const ProbabilityBound& bound) {
  SimulationReport report;
  report.trials = trials;
  report.failures = failures;
  report.empirical_rate =
      static_cast<double>(failures) / static_cast<double>(trials);
  report.analytic_bound = bound;
  const double p = report.empirical_rate;
  report.stderr_rate = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  report.verdict =
      report.empirical_rate > bound.value + kStandardErrorBand * report.stderr_rate
          ? SimulationVerdict::kBoundViolated
          : SimulationVerdict::kConsistentWithBound;
  return report;
}

absl::StatusOr<SimulationReport> RunMeanStudy(const SimulationConfig& config) {
  if (absl::Status s = ValidateSimulationConfig(config); !s.ok()) return s;
  absl::StatusOr<LaplaceScale> scale =
      LaplaceScale::Create(1.0 / static_cast<double>(config.n), config.epsilon);
  if (!scale.ok()) return scale.status();

  const double mu = config.population_mean;
  const double nd = static_cast<double>(config.n);
  int64_t failures = 0;
  for (int64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng = Rng::ForStream(config.seed, static_cast<uint64_t>(trial));
    // The count of ones among n Bernoulli(mu) records.
    std::binomial_distribution<int64_t> ones(config.n, mu);
    const double sample_mean = static_cast<double>(ones(rng.engine())) / nd;
    const double release = sample_mean + SampleLaplace(*scale, rng);
    if (std::abs(release - mu) >= config.target_error) ++failures;
  }
  const ProbabilityBound bound =
      MeanFailureComponents(config.epsilon, config.n, config.target_error).total;
  return Judge(failures, config.trials, bound);
}

absl::StatusOr<MomentReport> VerifyLaplaceMoments(const LaplaceScale& scale,
                                                  int64_t draws, uint64_t seed) {
  if (draws < 100000) {
    return absl::InvalidArgumentError(
        absl::StrFormat("moment checks need >= 1e5 draws, got %d", draws));
  }
  Rng rng(seed);
  // Welford's update keeps the variance accurate over 1e6+ draws.
  double mean = 0;
  double m2 = 0;
  for (int64_t i = 1; i <= draws; ++i) {
    const double x = SampleLaplace(scale, rng);
    const double d = x - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (x - mean);
  }
  const double b2 = scale.scale() * scale.scale();
  const double nd = static_cast<double>(draws);
  MomentReport report;
  report.draws = draws;
  report.mean = mean;
  report.variance = m2 / (nd - 1);
  report.expected_variance = 2 * b2;
  report.mean_stderr = std::sqrt(2 * b2 / nd);
  // Var(x^2) = E x^4 - (E x^2)^2 = 24 b^4 - 4 b^4.
  report.variance_stderr = b2 * std::sqrt(20.0 / nd);
  report.mean_ok =
      std::abs(report.mean) <= kStandardErrorBand * report.mean_stderr;
  report.variance_ok = std::abs(report.variance - report.expected_variance) <=
                       kStandardErrorBand * report.variance_stderr;
  return report;
}

}  // namespace epsiplan
