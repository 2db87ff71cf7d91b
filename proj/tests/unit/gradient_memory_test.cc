// Copyright 2026 The ldpol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "ldpol/error.hpp"
#include "ldpol/gradient_memory.hpp"
#include "oracles.hpp"

namespace ldpol {
namespace {

double MaxRel(const Vector& a, const Vector& b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(b[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return diff / std::max(scale, 1e-300);
}

Sample RandomRidgeSample(CounterStream& rng, std::size_t n) {
  return Sample{testing::uniform_vector(rng, n, -1, 1), testing::uniform(rng, -2, 2)};
}

TEST(ReplayMemory, Examples) {
  ReplayMemory mem(1, Loss::Ridge(1.0), INFINITY);
  EXPECT_THROW(mem.average_gradient(Vector{0.0}), Error);
  mem.append(Sample{{1.0}, 2.0});
  EXPECT_EQ(mem.count(), 1u);
  EXPECT_DOUBLE_EQ(mem.average_gradient(Vector{0.0})[0], -4.0);
  mem.append(Sample{{1.0}, 0.0});
  EXPECT_DOUBLE_EQ(mem.average_gradient(Vector{0.0})[0], -2.0);
  EXPECT_THROW(mem.append(Sample{{1.0, 2.0}, 0.0}), DimensionError);
}

TEST(ReplayMemory, IdenticalSamplesGiveSingleGradient) {
  ReplayMemory mem(2, Loss::Logistic(0.1), INFINITY);
  Sample xi{{0.3, -0.7}, 1.0};
  mem.append(xi);
  mem.append(xi);
  Vector th{0.2, 0.5};
  Vector a = mem.average_gradient(th);
  Vector b = logistic_grad(th, xi, 0.1);
  EXPECT_NEAR(a[0], b[0], 1e-15);
  EXPECT_NEAR(a[1], b[1], 1e-15);
}

TEST(ReplayMemory, ClipsEachSampleBeforeAveraging) {
  ReplayMemory mem(1, Loss::Ridge(0.0), 1.0);
  mem.append(Sample{{1.0}, 10.0});  // gradient -20, clipped to -1
  mem.append(Sample{{1.0}, 0.25});  // gradient -0.5
  EXPECT_DOUBLE_EQ(mem.average_gradient(Vector{0.0})[0], -0.75);
}

TEST(ReplayMemory, RunningMeanIdentityAtFixedTheta) {
  auto rng = testing::test_stream(301);
  const std::size_t n = 3;
  Loss loss = Loss::Logistic(0.05);
  ReplayMemory mem(n, loss, INFINITY);
  Vector th = testing::uniform_vector(rng, n, -1, 1);
  Vector running(n, 0.0);
  for (int t = 0; t < 1000; ++t) {
    Sample xi{testing::uniform_vector(rng, n, -1, 1), static_cast<double>(rng() % 2)};
    Vector g = logistic_grad(th, xi, 0.05);
    for (std::size_t j = 0; j < n; ++j) running[j] = (t * running[j] + g[j]) / (t + 1);
    mem.append(xi);
    if (t % 50 == 0 || t == 999) {
      Vector d = mem.average_gradient(th);
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(d[j], running[j], 1e-12);
    }
  }
}

TEST(AffineAggregate, MatchesReplayHundredSamples) {
  auto rng = testing::test_stream(302);
  const std::size_t n = 4;
  ReplayMemory rep(n, Loss::Ridge(0.3), INFINITY);
  AffineAggregate aff(n, 0.3);
  for (int k = 0; k < 100; ++k) {
    Sample xi = RandomRidgeSample(rng, n);
    rep.append(xi);
    aff.append(xi);
  }
  EXPECT_EQ(aff.count(), 100u);
  EXPECT_EQ(aff.a_sum().size(), n * n);
  for (int q = 0; q < 20; ++q) {
    Vector th = testing::uniform_vector(rng, n, -3, 3);
    EXPECT_LE(MaxRel(aff.average_gradient(th), rep.average_gradient(th)), 1e-10);
  }
}

TEST(AffineAggregate, RejectsSamplesThatCouldBeClipped) {
  DataBounds b;
  b.dim = 1;
  b.feature_norm2 = 1.0;
  b.feature_norm1 = 1.0;
  b.theta_norm2 = 1.0;
  b.theta_norm1 = 1.0;
  AffineAggregate aff(1, 0.1, 0.5, b);
  EXPECT_THROW(aff.append(Sample{{1.0}, 5.0}), Error);
}

TEST(GradientMemoryProperty, AffineEqualsReplay) {
  auto rng = testing::test_stream(303);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 1 + c % 6;
    const double alpha = testing::uniform(rng, 0.01, 1.0);
    ReplayMemory rep(n, Loss::Ridge(alpha), INFINITY);
    AffineAggregate aff(n, alpha);
    const int len = 1 + static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) {
      Sample xi = RandomRidgeSample(rng, n);
      rep.append(xi);
      aff.append(xi);
    }
    Vector th = testing::uniform_vector(rng, n, -3, 3);
    EXPECT_LE(MaxRel(aff.average_gradient(th), rep.average_gradient(th)), 1e-10);
  }
}

TEST(Interpolation, NodeReproducesStoredValue) {
  InterpState s;
  s.theta_prev = {1.0, 2.0};
  s.theta_prev2 = {0.0, 2.0};
  s.d_prev = {0.5, -1.0};
  s.d_prev2 = {0.1, -0.7};
  s.count = 2;
  // theta_t = theta_{t-1}; zero new gradients
  Vector d = avg_grad_interpolated(s, Vector{1.0, 2.0}, Vector{0.0, 0.0}, Vector{0.0, 0.0});
  EXPECT_DOUBLE_EQ(d[0], 0.5 * 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(d[1], -1.0 * 2.0 / 3.0);
  EXPECT_EQ(s.count, 3u);
}

TEST(Interpolation, RequiresWarmup) {
  InterpState s;
  s.theta_prev = {0.0};
  s.theta_prev2 = {0.0};
  s.d_prev = {0.0};
  s.d_prev2 = {0.0};
  s.count = 1;
  EXPECT_THROW(avg_grad_interpolated(s, Vector{0.0}, Vector{0.0}, Vector{0.0}), Error);
}

// Diagonal-feature ridge stream: each gradient coordinate depends only on
// that coordinate of theta, so the interpolation is exact.
TEST(Interpolation, ExactOnScalarRidgeOverThousandSteps) {
  auto rng = testing::test_stream(304);
  Loss loss = Loss::Ridge(0.2);
  ReplayMemory rep(1, loss, INFINITY);
  InterpolatedMemory interp(1, loss, INFINITY);
  Vector th{0.3};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Sample xi = RandomRidgeSample(rng, 1);
    rep.append(xi);
    interp.append(xi);
    Vector a(1), b = rep.average_gradient(th);
    interp.average_gradient(th, a);
    worst = std::max(worst, std::abs(a[0] - b[0]));
    th[0] -= 0.05 * b[0] + 0.01 * testing::uniform(rng, -1, 1);
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Interpolation, LogisticDeviationIsReportedNotAsserted) {
  auto rng = testing::test_stream(305);
  Loss loss = Loss::Logistic(0.01);
  ReplayMemory rep(2, loss, INFINITY);
  InterpolatedMemory interp(2, loss, INFINITY);
  Vector th{0.1, -0.1};
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    Sample xi{testing::uniform_vector(rng, 2, -1, 1), static_cast<double>(rng() % 2)};
    rep.append(xi);
    interp.append(xi);
    Vector a(2), b = rep.average_gradient(th);
    interp.average_gradient(th, a);
    worst = std::max(worst, MaxRel(a, b));
    th[0] -= 0.1 * b[0];
    th[1] -= 0.1 * b[1];
  }
  RecordProperty("logistic_interp_max_rel_dev", std::to_string(worst));
  EXPECT_TRUE(std::isfinite(worst));
}

TEST(GradientMemory, EngineNamesRoundTrip) {
  for (MemoryEngine e : {MemoryEngine::kReplay, MemoryEngine::kAffine, MemoryEngine::kInterpolated})
    EXPECT_EQ(parse_memory_engine(to_string(e)), e);
  EXPECT_THROW(parse_memory_engine("bogus"), ConfigError);
}

TEST(GradientMemory, AffineTenThousandStepsFiveDims) {
  auto rng = testing::test_stream(306);
  const std::size_t n = 5;
  Loss loss = Loss::Ridge(0.1);
  GradientMemory rep(MemoryEngine::kReplay, n, loss, INFINITY);
  GradientMemory aff(MemoryEngine::kAffine, n, loss, INFINITY);
  Vector th = testing::uniform_vector(rng, n, -1, 1);
  Vector a(n), b(n);
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 10000; ++t) {
    Sample xi = RandomRidgeSample(rng, n);
    rep.append(xi);
    aff.append(xi);
    if (t % 100 == 99) {
      rep.average_gradient(th, a);
      aff.average_gradient(th, b);
      worst = std::max(worst, MaxRel(b, a));
      for (std::size_t j = 0; j < n; ++j) th[j] -= 0.1 * a[j];
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LE(worst, 1e-10);
  EXPECT_LT(secs, 10.0);
  EXPECT_EQ(aff.count(), 10000u);
}

}  // namespace
}  // namespace ldpol
