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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ldpol/error.hpp"
#include "ldpol/schedules.hpp"
#include "oracles.hpp"

namespace ldpol {
namespace {

bool HasViolation(const CheckResult& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

TheoryInputs TwoNode(double mu, double L) {
  TheoryInputs in;
  in.pc.mu = mu;
  in.pc.L = L;
  in.pc.D = 1.0;
  in.pc.kappa = 1.0;
  in.pc.C = 1.0;
  in.pc.D0 = 2.0;
  in.delta2 = -0.8;
  in.deltaN = -0.8;
  in.m = 2;
  in.sigma_max = 1.0;
  in.varsigma_max = 0.1;
  in.varsigma_min = 0.1;
  in.init_error = 1.0;
  return in;
}

TEST(Schedules, ReferenceValuesAndAblation) {
  Schedules s{0.1, 0.7, 1.0, 0.8, Regime::kTheorem1};
  EXPECT_DOUBLE_EQ(s.gamma(0), 0.1);
  EXPECT_DOUBLE_EQ(s.lambda(0), 1.0);
  EXPECT_NEAR(s.gamma(99), 0.1 / std::pow(100.0, 0.7), 1e-15);
  Schedules z{0.3, 0.0, 1.0, 0.8, Regime::kTheorem1};
  EXPECT_DOUBLE_EQ(z.gamma(1000), 0.3);
  Schedules a{0.3, 0.7, 1.0, 0.8, Regime::kAblationConstantGamma};
  EXPECT_DOUBLE_EQ(a.gamma(12345), 0.3);
  EXPECT_LT(a.lambda(12345), 1.0);
}

TEST(Schedules, RegimeNames) {
  for (Regime r : {Regime::kTheorem1, Regime::kTheorem2, Regime::kTheorem3, Regime::kTheorem4,
                   Regime::kAblationConstantGamma})
    EXPECT_EQ(parse_regime(to_string(r)), r);
  EXPECT_THROW(parse_regime("theorem9"), ConfigError);
}

TEST(Theorem1, TwoNodeExample) {
  TheoryInputs in = TwoNode(1.0, 1.0);
  Schedules s{0.4, 0.7, 0.03, 0.8, Regime::kTheorem1};
  CheckResult r = check_theorem1(in, s);
  EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0]);
  EXPECT_NEAR(r.certificate.constants.at("lambda0_bound"), 0.4 * 0.8 / 9.0, 1e-12);
  EXPECT_NEAR(r.certificate.beta, 0.2, 1e-12);
  EXPECT_NEAR(r.certificate.beta_regret, 0.1, 1e-12);
  for (const char* k : {"c1", "c2", "c3", "c4", "c5", "c6"})
    EXPECT_TRUE(r.certificate.constants.count(k)) << k;
  s.lambda0 = 0.04;
  EXPECT_TRUE(HasViolation(check_theorem1(in, s), "lambda0"));
}

TEST(Theorem1, Boundaries) {
  TheoryInputs in = TwoNode(1.0, 1.0);
  Schedules s{0.4, 0.7, 0.03, 0.7, Regime::kTheorem1};
  EXPECT_TRUE(HasViolation(check_theorem1(in, s), "u < v"));
  s.v = 0.8;
  in.varsigma_max = 0.2;
  CheckResult r = check_theorem1(in, s);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(HasViolation(r, "equality"));
  EXPECT_FALSE(r.warnings.empty());
  in.varsigma_max = 0.19;
  r = check_theorem1(in, s);
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.warnings.empty());
  s.gamma0 = 1.0;
  EXPECT_TRUE(HasViolation(check_theorem1(in, s), "gamma0"));
}

TEST(Theorem2, Examples) {
  TheoryInputs in = TwoNode(0.0, 1.0);
  in.pc.kappa = 1.0;
  in.pc.D = 1.0;
  Schedules s{0.4, 0.7, 0.06, 0.85, Regime::kTheorem2};
  CheckResult r = check_theorem2(in, s);
  EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0]);
  EXPECT_NEAR(r.certificate.constants.at("lambda0_bound"), 0.064, 1e-12);
  EXPECT_NEAR(r.certificate.beta_regret, 0.075, 1e-12);
  s.v = 0.8;
  EXPECT_FALSE(check_theorem2(in, s).ok);
}

TEST(Theorem3, T0Example) {
  TheoryInputs in = TwoNode(1.0, 1.0);
  Schedules s{1.0, 0.3, 0.1, 0.4, Regime::kTheorem3};
  EXPECT_EQ(compute_t0(in, s), 18);
  s.gamma0 = 0.4;
  s.lambda0 = 0.03;
  EXPECT_EQ(compute_t0(in, s), 0);
  s.v = 0.3;
  EXPECT_THROW(compute_t0(in, s), ConfigError);
}

constexpr long kScanCap = 10000000;

long ScanT0(const TheoryInputs& in, const Schedules& s) {
  const double mu = in.pc.mu, L = in.pc.L;
  const double ratio = -in.delta2 * mu / (mu * mu + 8 * L * L);
  for (long t = 0; t < kScanCap; ++t) {
    const double g = s.gamma(t), l = s.lambda(t);
    if (g <= 1.0 / (-3.0 * in.deltaN) && l / g <= ratio) return t;
  }
  return -1;
}

long ScanT0Tilde(const TheoryInputs& in, const Schedules& s) {
  const double k = in.pc.L * in.pc.L + 2 * (in.pc.kappa * in.pc.kappa + in.pc.D * in.pc.D);
  const double expo = (3 * s.v - 1) / 2 - s.u;
  for (long t = 0; t < kScanCap; ++t) {
    const double g = s.gamma(t);
    const double a = std::pow(t + 1.0, expo - (s.v - s.u));
    if (3 * g * in.deltaN >= -1.0 && s.lambda(t) * k <= -in.delta2 * g * a) return t;
  }
  return -1;
}

TEST(ScheduleProperty, T0MatchesScanAndSubstitutionHolds) {
  auto rng = testing::test_stream(501);
  for (int c = 0; c < 1000; ++c) {
    TheoryInputs in = TwoNode(testing::uniform(rng, 0.05, 1.0), 1.0);
    in.pc.L = testing::uniform(rng, in.pc.mu, 2.0);
    in.deltaN = -testing::uniform(rng, 0.3, 0.99);
    in.delta2 = in.deltaN * testing::uniform(rng, 0.1, 1.0);
    Schedules s;
    s.regime = Regime::kTheorem3;
    s.u = testing::uniform(rng, 0.05, 0.4);
    s.v = testing::uniform(rng, s.u + 0.03, 0.49);
    s.gamma0 = testing::uniform(rng, 0.1, 2.0);
    s.lambda0 = testing::uniform(rng, 0.001, 0.3);
    const long t0 = compute_t0(in, s);
    if (t0 > 200000) continue;
    EXPECT_EQ(t0, ScanT0(in, s)) << c;
    const double ratio = -in.delta2 * in.pc.mu / (in.pc.mu * in.pc.mu + 8 * in.pc.L * in.pc.L);
    if (c % 50 == 0) {
      for (long t = t0; t <= t0 + 10000; ++t) {
        ASSERT_LE(s.gamma(t), 1.0 / (-3.0 * in.deltaN) * (1 + 1e-12));
        ASSERT_LE(s.lambda(t) / s.gamma(t), ratio * (1 + 1e-12));
      }
    }
  }
}

TEST(Theorem4, T0TildeMatchesScan) {
  TheoryInputs in = TwoNode(1.0, 1.0);
  in.pc.kappa = 1.0;
  in.pc.D = 1.0;
  Schedules s{1.0, 0.7, 0.1, 0.85, Regime::kTheorem4};
  EXPECT_EQ(compute_t0_tilde(in, s), ScanT0Tilde(in, s));
  EXPECT_EQ(compute_t0_tilde(in, s), 3);
  s.gamma0 = 0.4;
  s.lambda0 = 0.05;
  EXPECT_LE(compute_t0_tilde(in, s), 1);
  s.v = (2 * 0.7 + 1) / 3;
  EXPECT_THROW(compute_t0_tilde(in, s), ConfigError);
  s.v = (2 * 0.7 + 1) / 3 + 1e-9;
  s.gamma0 = 0.1;
  s.lambda0 = 0.5;
  EXPECT_EQ(compute_t0_tilde(in, s), std::numeric_limits<long>::max());
  auto rng = testing::test_stream(502);
  for (int c = 0; c < 1000; ++c) {
    Schedules q;
    q.regime = Regime::kTheorem4;
    q.u = testing::uniform(rng, 0.55, 0.9);
    q.v = testing::uniform(rng, (2 * q.u + 1) / 3 + 0.02, 0.999);
    q.gamma0 = testing::uniform(rng, 0.1, 2.0);
    q.lambda0 = testing::uniform(rng, 0.001, 0.5);
    const long t = compute_t0_tilde(in, q);
    if (t > 200000) continue;
    EXPECT_EQ(t, ScanT0Tilde(in, q)) << c;
  }
}

TEST(Certificates, MonotoneInExponents) {
  TheoryInputs in = TwoNode(1.0, 1.0);
  Schedules s{0.4, 0.75, 0.02, 0.8, Regime::kTheorem1};
  double prev = 1.0;
  for (double vs : {0.05, 0.1, 0.15, 0.2}) {
    in.varsigma_max = vs;
    const double b = check_theorem1(in, s).certificate.beta;
    EXPECT_LE(b, prev);
    prev = b;
  }
  in.varsigma_max = 0.01;
  prev = 1.0;
  for (double v : {0.76, 0.8, 0.9, 0.95}) {
    s.v = v;
    const double b = check_theorem1(in, s).certificate.beta;
    EXPECT_LE(b, prev);
    prev = b;
  }
}

TEST(ScheduleProperty, CheckersAreTotal) {
  auto rng = testing::test_stream(503);
  for (int c = 0; c < 1000; ++c) {
    TheoryInputs in;
    in.pc.mu = testing::uniform(rng, -1, 2);
    in.pc.L = testing::uniform(rng, -1, 2);
    in.pc.D = testing::uniform(rng, -1, 2);
    in.pc.kappa = testing::uniform(rng, -1, 2);
    in.delta2 = testing::uniform(rng, -2, 1);
    in.deltaN = testing::uniform(rng, -2, 1);
    in.m = static_cast<int>(rng() % 4);
    in.sigma_max = testing::uniform(rng, -1, 2);
    in.varsigma_max = testing::uniform(rng, -1, 1);
    in.noise_enabled = rng() % 2 == 0;
    Schedules s;
    s.gamma0 = testing::uniform(rng, -1, 2);
    s.u = testing::uniform(rng, -0.5, 1.5);
    s.lambda0 = testing::uniform(rng, -1, 2);
    s.v = testing::uniform(rng, -0.5, 1.5);
    s.regime = static_cast<Regime>(rng() % 5);
    EXPECT_NO_THROW({
      CheckResult r = check_regime(in, s);
      EXPECT_EQ(r.ok, r.violations.empty());
    });
  }
}

}  // namespace
}  // namespace ldpol
