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

#include "epsiplan/dp_core.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace epsiplan {

ProbabilityBound ProbabilityBound::FromRaw(double raw) {
  ProbabilityBound bound;
  bound.raw = raw;
  bound.value = std::clamp(raw, 0.0, 1.0);
  bound.clamped = bound.value != raw;
  return bound;
}

absl::StatusOr<LaplaceScale> LaplaceScale::Create(double sensitivity,
                                                  double epsilon) {
  if (!std::isfinite(sensitivity) || sensitivity <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sensitivity must be finite and positive, got %g", sensitivity));
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon must be finite and positive, got %g", epsilon));
  }
  return LaplaceScale(sensitivity, epsilon);
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::ForStream(uint64_t seed, uint64_t stream) {
  return Rng(SplitMix64(SplitMix64(seed) ^ SplitMix64(~stream)));
}

double Rng::UniformOpen() {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double SampleLaplace(const LaplaceScale& scale, Rng& rng) {
  const double u = rng.UniformOpen();
  const double b = scale.scale();
  if (u < 0.5) return b * std::log(2.0 * u);
  return -b * std::log(2.0 * (1.0 - u));
}

ProbabilityBound LaplaceTail(double threshold, const LaplaceScale& scale) {
  return ProbabilityBound::FromRaw(std::exp(-threshold / scale.scale()));
}

absl::StatusOr<ProbabilityBound> ChernoffUpper(int64_t n, double deviation,
                                               double mu) {
  if (n < 1) {
    return absl::InvalidArgumentError(absl::StrFormat("n must be >= 1, got %d", n));
  }
  if (!(deviation >= 0 && deviation <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("deviation must be in [0, 1], got %g", deviation));
  }
  if (!(mu > 0 && mu <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mu must be in (0, 1], got %g", mu));
  }
  const double nd = static_cast<double>(n);
  return ProbabilityBound::FromRaw(
      2.0 * std::exp(-nd * deviation * deviation / (3.0 * mu)));
}

absl::StatusOr<ProbabilityBound> ChernoffLower(int64_t n, double deviation,
                                               double mu) {
  if (n < 1) {
    return absl::InvalidArgumentError(absl::StrFormat("n must be >= 1, got %d", n));
  }
  if (!(deviation >= 0 && deviation <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("deviation must be in [0, 1], got %g", deviation));
  }
  if (!(mu > 0 && mu <= 0.25)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "the lower Chernoff bound requires mu in (0, 1/4], got %g", mu));
  }
  const double nd = static_cast<double>(n);
  return ProbabilityBound::FromRaw(
      0.5 * std::exp(-2.0 * nd * deviation * deviation / mu));
}

}  // namespace epsiplan
