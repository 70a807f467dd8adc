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

#include "epsiplan/accuracy.h"
#include "gtest/gtest.h"

namespace epsiplan {
namespace {

SimulationConfig Config(double mu, int64_t n, double eps, double t) {
  SimulationConfig c;
  c.population_mean = mu;
  c.n = n;
  c.epsilon = eps;
  c.target_error = t;
  c.trials = 10000;
  c.seed = 42;
  return c;
}

TEST(SimulationConfigTest, Validation) {
  SimulationConfig c = Config(0.5, 1000, 0.1, 0.05);
  EXPECT_TRUE(ValidateSimulationConfig(c).ok());
  c.trials = 50;
  EXPECT_FALSE(ValidateSimulationConfig(c).ok());
  EXPECT_FALSE(RunMeanStudy(c).ok());
  c = Config(1.5, 1000, 0.1, 0.05);
  EXPECT_FALSE(ValidateSimulationConfig(c).ok());
  c = Config(0.5, 0, 0.1, 0.05);
  EXPECT_FALSE(ValidateSimulationConfig(c).ok());
  c = Config(0.5, 10, 0, 0.05);
  EXPECT_FALSE(ValidateSimulationConfig(c).ok());
}

TEST(JudgeTest, FourStandardErrorBand) {
  ProbabilityBound bound = ProbabilityBound::FromRaw(0.05);
  SimulationReport ok = Judge(500, 10000, bound);
  EXPECT_DOUBLE_EQ(ok.empirical_rate, 0.05);
  EXPECT_NEAR(ok.stderr_rate, std::sqrt(0.05 * 0.95 / 10000), 1e-15);
  EXPECT_EQ(ok.verdict, SimulationVerdict::kConsistentWithBound);
  // 0.05 + 4 * 0.0023 is about 0.0594.
  EXPECT_EQ(Judge(580, 10000, bound).verdict,
            SimulationVerdict::kConsistentWithBound);
  EXPECT_EQ(Judge(650, 10000, bound).verdict,
            SimulationVerdict::kBoundViolated);
}

TEST(RunMeanStudyTest, PlannedMoviesPoint) {
  absl::StatusOr<SimulationReport> r =
      RunMeanStudy(Config(0.5, 20000, 0.0083333, 0.05));
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->analytic_bound.value, 0.0465118192, 1e-9);
  EXPECT_EQ(r->verdict, SimulationVerdict::kConsistentWithBound);
  EXPECT_LE(r->empirical_rate, 0.0465118192 + 4 * r->stderr_rate);
  EXPECT_DOUBLE_EQ(r->empirical_rate,
                   static_cast<double>(r->failures) / r->trials);
}

TEST(RunMeanStudyTest, LargeEpsilonAndNNeverFail) {
  SimulationConfig c = Config(0.5, 1000000, 1000, 0.05);
  c.trials = 1000;
  SimulationReport r = *RunMeanStudy(c);
  EXPECT_EQ(r.failures, 0);
}

TEST(RunMeanStudyTest, DegeneratePopulationOnlyNoiseFails) {
  // With mu = 0 the sample mean is exactly 0; failures come from the noise
  // tail P(|Y| >= T) = exp(-T N eps).
  SimulationConfig c = Config(0, 100, 0.1, 0.05);
  SimulationReport r = *RunMeanStudy(c);
  LaplaceScale scale = *LaplaceScale::Create(1.0 / 100, 0.1);
  const double tail = LaplaceTail(0.05, scale).value;
  EXPECT_NEAR(tail, std::exp(-0.5), 1e-12);
  EXPECT_NEAR(r.empirical_rate, tail, 4 * std::sqrt(tail * (1 - tail) / 1e4));
  EXPECT_LE(r.empirical_rate, tail + 4 * r.stderr_rate);
}

TEST(RunMeanStudyTest, ReproducibleForSameSeed) {
  SimulationConfig c = Config(0.3, 5000, 0.05, 0.02);
  SimulationReport a = *RunMeanStudy(c);
  SimulationReport b = *RunMeanStudy(c);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.empirical_rate, b.empirical_rate);
  c.seed = 43;
  SimulationReport other = *RunMeanStudy(c);
  EXPECT_EQ(other.trials, a.trials);
}

TEST(RunMeanStudyTest, InflatedEpsilonStaysConsistent) {
  SimulationReport r = *RunMeanStudy(Config(0.5, 20000, 0.83333, 0.05));
  EXPECT_EQ(r.verdict, SimulationVerdict::kConsistentWithBound);
}

TEST(RunMeanStudyTest, ValidationGridAllConsistent) {
  for (double mu : {0.1, 0.5}) {
    for (int64_t n : {int64_t{1000}, int64_t{20000}}) {
      for (double t : {0.02, 0.05}) {
        double previous_rate = 1;
        double previous_se = 0;
        for (double eps : {0.01, 0.1, 1.0}) {
          SimulationReport r = *RunMeanStudy(Config(mu, n, eps, t));
          EXPECT_EQ(r.verdict, SimulationVerdict::kConsistentWithBound)
              << "mu=" << mu << " n=" << n << " eps=" << eps << " T=" << t;
          // Non-increasing in epsilon up to two standard errors.
          EXPECT_LE(r.empirical_rate,
                    previous_rate + 2 * std::max(r.stderr_rate, previous_se));
          previous_rate = r.empirical_rate;
          previous_se = r.stderr_rate;
        }
      }
    }
  }
}

TEST(RunMeanStudyTest, RateNonIncreasingInN) {
  for (double eps : {0.01, 0.1, 1.0}) {
    SimulationReport small = *RunMeanStudy(Config(0.5, 1000, eps, 0.05));
    SimulationReport large = *RunMeanStudy(Config(0.5, 20000, eps, 0.05));
    EXPECT_LE(large.empirical_rate,
              small.empirical_rate +
                  2 * std::max(small.stderr_rate, large.stderr_rate));
  }
}

TEST(LaplaceMomentsTest, UnitScale) {
  MomentReport r = *VerifyLaplaceMoments(*LaplaceScale::Create(1, 1), 1000000, 42);
  EXPECT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r.expected_variance, 2.0);
  EXPECT_GE(r.variance, 1.98);
  EXPECT_LE(r.variance, 2.02);
  EXPECT_NEAR(r.mean, 0, 4 * r.mean_stderr);
}

TEST(LaplaceMomentsTest, HalfScale) {
  MomentReport r =
      *VerifyLaplaceMoments(*LaplaceScale::Create(1, 2), 200000, 7);
  EXPECT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r.expected_variance, 0.5);
  EXPECT_NEAR(r.variance, 0.5, 4 * r.variance_stderr);
}

TEST(LaplaceMomentsTest, RejectsTooFewDraws) {
  EXPECT_FALSE(VerifyLaplaceMoments(*LaplaceScale::Create(1, 1), 1000, 1).ok());
}

TEST(LaplaceMomentsTest, ManySeeds) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(
        VerifyLaplaceMoments(*LaplaceScale::Create(0.01, 0.3), 100000, seed)
            ->ok())
        << "seed " << seed;
  }
}

}  // namespace
}  // namespace epsiplan
