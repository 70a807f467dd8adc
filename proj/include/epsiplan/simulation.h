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

// Monte Carlo check of the analytic failure bound of the noisy-proportion
// study.

#ifndef EPSIPLAN_SIMULATION_H_
#define EPSIPLAN_SIMULATION_H_

#include <cstdint>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "epsiplan/dp_core.h"

namespace epsiplan {

inline constexpr int64_t kMinTrials = 100;
// Width of the acceptance band, in binomial standard errors.
inline constexpr double kStandardErrorBand = 4.0;

struct SimulationConfig {
  double population_mean = 0.5;  // mu
  int64_t n = 1;
  double epsilon = 1;
  double target_error = 0.05;  // T
  int64_t trials = 10000;
  uint64_t seed = 0;
};

absl::Status ValidateSimulationConfig(const SimulationConfig& config);

enum class SimulationVerdict { kConsistentWithBound, kBoundViolated };

std::string_view SimulationVerdictName(SimulationVerdict verdict);

struct SimulationReport {
  int64_t trials = 0;
  int64_t failures = 0;
  double empirical_rate = 0;
  ProbabilityBound analytic_bound;
  // Standard error of the empirical rate, sqrt(p (1 - p) / trials).
  double stderr_rate = 0;
  SimulationVerdict verdict = SimulationVerdict::kConsistentWithBound;
};

// Runs `trials` independent noisy-proportion studies: n Bernoulli(mu)
// records, sample mean plus Lap(1 / (n epsilon)) noise. A trial fails when
// the release misses mu by at least T. Trial i draws from
// Rng::ForStream(seed, i), so the report does not depend on execution order.
absl::StatusOr<SimulationReport> RunMeanStudy(const SimulationConfig& config);

// Compares an empirical failure count with an analytic bound.
SimulationReport Judge(int64_t failures, int64_t trials,
                       const ProbabilityBound& bound);

struct MomentReport {
  int64_t draws = 0;
  double mean = 0;
  double variance = 0;
  double expected_variance = 0;  // 2 b^2
  double mean_stderr = 0;        // sqrt(2 b^2 / draws)
  double variance_stderr = 0;    // b^2 sqrt(20 / draws)
  bool mean_ok = false;
  bool variance_ok = false;

  bool ok() const { return mean_ok && variance_ok; }
};

// Sample mean and variance of `draws` Laplace samples against their exact
// values, each within kStandardErrorBand standard errors.
absl::StatusOr<MomentReport> VerifyLaplaceMoments(const LaplaceScale& scale,
                                                  int64_t draws, uint64_t seed);

}  // namespace epsiplan

#endif  // EPSIPLAN_SIMULATION_H_
