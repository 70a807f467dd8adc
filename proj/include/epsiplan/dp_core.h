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

#ifndef EPSIPLAN_DP_CORE_H_
#define EPSIPLAN_DP_CORE_H_

#include <cstdint>
#include <random>

#include "absl/status/statusor.h"

namespace epsiplan {

// Absolute tolerance applied to constraint residuals when comparing an
// evaluated quantity against its threshold.
inline constexpr double kResidualTolerance = 1e-12;

// A probability produced by an analytic bound. Bounds such as the two-sided
// Chernoff bound can exceed 1; `value` is always in [0, 1] and `raw` keeps the
// unclamped expression for diagnostics.
struct ProbabilityBound {
  double value = 1.0;
  double raw = 1.0;
  bool clamped = false;

  static ProbabilityBound FromRaw(double raw);

  // Sum of the raw expressions, re-clamped.
  friend ProbabilityBound operator+(const ProbabilityBound& a,
                                    const ProbabilityBound& b) {
    return FromRaw(a.raw + b.raw);
  }
};

// Noise scale c / epsilon of the Laplace mechanism for a c-sensitive
// statistic.
class LaplaceScale {
 public:
  // Both arguments must be finite and strictly positive.
  static absl::StatusOr<LaplaceScale> Create(double sensitivity,
                                             double epsilon);

  double sensitivity() const { return sensitivity_; }
  double epsilon() const { return epsilon_; }
  double scale() const { return scale_; }

 private:
  LaplaceScale(double sensitivity, double epsilon)
      : sensitivity_(sensitivity),
        epsilon_(epsilon),
        scale_(sensitivity / epsilon) {}

  double sensitivity_;
  double epsilon_;
  double scale_;
};

// Seedable 64-bit generator shared by the Laplace and Bernoulli samplers.
// Not thread-safe; give each thread its own instance.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Independent stream derived from (seed, stream) by SplitMix64 mixing, so
  // that trial i of a simulation is reproducible regardless of scheduling.
  static Rng ForStream(uint64_t seed, uint64_t stream);

  // Uniform double in the open interval (0, 1), built from the top 53 bits.
  double UniformOpen();

  Engine& engine() { return engine_; }

 private:
  Engine engine_;
};

uint64_t SplitMix64(uint64_t x);

// Draws Lap(scale.scale()) noise by inverse-CDF transform of one uniform.
double SampleLaplace(const LaplaceScale& scale, Rng& rng);

// Pr[|nu| >= threshold] <= exp(-threshold / scale) for nu ~ Lap(scale).
// `threshold` must be >= 0.
ProbabilityBound LaplaceTail(double threshold, const LaplaceScale& scale);

// Two-sided Chernoff upper bound 2 exp(-n d^2 / (3 mu)) on
// Pr[|Y - mu| >= d] for the mean Y of n i.i.d. 0/1 variables.
absl::StatusOr<ProbabilityBound> ChernoffUpper(int64_t n, double deviation,
                                               double mu);

// Lower bound (1/2) exp(-2 n d^2 / mu) on the same deviation probability.
// Only valid for mu <= 1/4.
absl::StatusOr<ProbabilityBound> ChernoffLower(int64_t n, double deviation,
                                               double mu);

}  // namespace epsiplan

#endif  // EPSIPLAN_DP_CORE_H_
