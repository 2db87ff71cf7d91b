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

#include "ldpol/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldpol/error.hpp"

namespace ldpol {
namespace {

constexpr double kEqualityTol = 1e-12;

// (2u+1)/3, nudged up so v within rounding of it counts as on the boundary.
double OpenLowerBound(double u) { return (2.0 * u + 1.0) / 3.0 + kEqualityTol; }
constexpr double kNearBoundary = 0.02;

std::string Fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void Violate(CheckResult& r, std::string what) {
  r.ok = false;
  r.violations.push_back(std::move(what));
}

void CheckGraph(const TheoryInputs& in, CheckResult& r) {
  if (in.m < 2) Violate(r, "needs m >= 2 learners (delta_2 undefined)");
  if (!(in.delta2 < 0.0)) Violate(r, "delta_2 < 0");
  if (!(in.deltaN > -1.0)) Violate(r, "delta_N > -1");
}

void CheckGamma0(const TheoryInputs& in, const Schedules& s, CheckResult& r) {
  if (!(s.gamma0 > 0.0)) Violate(r, "gamma0 > 0");
  if (in.deltaN < 0.0) {
    const double bound = 1.0 / (-3.0 * in.deltaN);
    r.certificate.constants["gamma0_bound"] = bound;
    if (!(s.gamma0 <= bound)) {
      Violate(r, "gamma0 <= 1/(-3 delta_N) = " + Fmt(bound) + " (gamma0 = " +
                     Fmt(s.gamma0) + ")");
    }
  }
}

double Varsigma(const TheoryInputs& in) {
  return in.noise_enabled ? in.varsigma_max : 0.0;
}

double SigmaPlus(const TheoryInputs& in) {
  return in.noise_enabled ? in.sigma_max : 0.0;
}

struct TheoremOneConstants {
  double c1, c2, c3, c4, c5, c6;
};

TheoremOneConstants ComputeC(const TheoryInputs& in, const Schedules& s,
                             double c3_scale) {
  const double mu = in.pc.mu, L = in.pc.L;
  const double k2d2 = in.pc.kappa * in.pc.kappa + in.pc.D * in.pc.D;
  const double vs = Varsigma(in), sp = SigmaPlus(in);
  const double g0 = s.gamma0, l0 = s.lambda0, u = s.u, v = s.v;
  const double m = in.m;
  TheoremOneConstants c{};
  c.c1 = 32.0 * k2d2 * (2.0 / (mu * mu) + 1.0 / (L * L));
  c.c2 = 8.0 * c.c1 / (3.0 * mu * l0 * (1.0 - v) * std::pow(2.0, v - 1.0));
  const double lead = c3_scale * 32.0 * (1.0 - v) * (1.0 - v) / (mu * l0);
  c.c3 = std::max(lead * std::pow(2.0, 1.0 - v), 1.0);
  const double damp = 1.0 + 3.0 * l0 * mu / 16.0;
  const double e = 2.0 * u - 2.0 * vs - 1.0;
  c.c4 = lead / 3.0 * in.init_error +
         c.c3 * (c.c1 * (1.0 + (8.0 * (1.0 - v) + 8.0) / (3.0 * l0 * mu * (1.0 - v))) +
                 3.0 * m * sp * sp * damp * (g0 * g0 + g0 * g0 / e) +
                 6.0 * m * k2d2 * damp * (l0 * l0 + l0 * l0 / (2.0 * v - 1.0)));
  c.c5 = 3.0 * m * sp * sp * damp * (g0 * g0 / (std::pow(2.0, 1.0 - 2.0 * u + 2.0 * vs) * e));
  c.c6 = 6.0 * m * k2d2 * damp * (l0 * l0 / (std::pow(2.0, 1.0 - 2.0 * v) * (2.0 * v - 1.0)));
  return c;
}

}  // namespace

Regime parse_regime(const std::string& s) {
  if (s == "theorem1") return Regime::kTheorem1;
  if (s == "theorem2") return Regime::kTheorem2;
  if (s == "theorem3") return Regime::kTheorem3;
  if (s == "theorem4") return Regime::kTheorem4;
  if (s == "ablation_constant_gamma") return Regime::kAblationConstantGamma;
  throw ConfigError("unknown regime '" + s + "'");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kTheorem1: return "theorem1";
    case Regime::kTheorem2: return "theorem2";
    case Regime::kTheorem3: return "theorem3";
    case Regime::kTheorem4: return "theorem4";
    case Regime::kAblationConstantGamma: return "ablation_constant_gamma";
  }
  return "?";
}

double Schedules::gamma(Round t) const {
  if (regime == Regime::kAblationConstantGamma) return gamma0;
  return gamma0 / std::pow(static_cast<double>(t) + 1.0, u);
}

double Schedules::lambda(Round t) const {
  return lambda0 / std::pow(static_cast<double>(t) + 1.0, v);
}

void check_assumption4(const TheoryInputs& in, const Schedules& s,
                       CheckResult& r) {
  if (!in.noise_enabled) {
    r.warnings.push_back("DP noise disabled: noise growth condition not applicable");
    return;
  }
  if (!(in.varsigma_min > 0.0 && in.varsigma_max < 0.5)) {
    Violate(r, "noise exponents must lie in (0, 1/2)");
  }
  if (!(in.sigma_max > 0.0)) Violate(r, "noise scale sigma > 0");
  const double gap = s.u - (in.varsigma_max + 0.5);
  if (std::fabs(gap) <= kEqualityTol) {
    Violate(r, "max varsigma + 1/2 < u fails with equality (" +
                   Fmt(in.varsigma_max) + " + 0.5 = " + Fmt(s.u) + ")");
    r.warnings.push_back("noise growth sits on the boundary max varsigma + 1/2 = u");
  } else if (gap < 0.0) {
    Violate(r, "max varsigma + 1/2 < u (" + Fmt(in.varsigma_max + 0.5) +
                   " >= " + Fmt(s.u) + ")");
  } else if (gap < kNearBoundary) {
    r.warnings.push_back("max varsigma + 1/2 within " + Fmt(gap) + " of u");
  }
  if (!(s.u < 1.0)) Violate(r, "u < 1");
}

CheckResult check_theorem1(const TheoryInputs& in, const Schedules& s) {
  CheckResult r;
  CheckGraph(in, r);
  if (!(0.5 < s.u)) Violate(r, "1/2 < u");
  if (!(s.u < s.v)) Violate(r, "u < v");
  if (!(s.v < 1.0)) Violate(r, "v < 1");
  if (!(in.pc.mu > 0.0)) Violate(r, "mu > 0");
  CheckGamma0(in, s, r);
  if (!(s.lambda0 > 0.0)) Violate(r, "lambda0 > 0");
  const double mu = in.pc.mu, L = in.pc.L;
  const double lbound = -s.gamma0 * in.delta2 * mu / (mu * mu + 8.0 * L * L);
  r.certificate.constants["lambda0_bound"] = lbound;
  if (!(s.lambda0 <= lbound)) {
    Violate(r, "lambda0 <= -gamma0 delta_2 mu/(mu^2+8L^2) = " + Fmt(lbound) +
                   " (lambda0 = " + Fmt(s.lambda0) + ")");
  }
  check_assumption4(in, s, r);
  const double vs = Varsigma(in);
  r.certificate.beta = std::min(1.0 - s.v, 2.0 * s.u - 2.0 * vs - 1.0);
  r.certificate.beta_regret = r.certificate.beta / 2.0;
  if (mu > 0.0) {
    const auto c = ComputeC(in, s, 1.0);
    r.certificate.constants["c1"] = c.c1;
    r.certificate.constants["c2"] = c.c2;
    r.certificate.constants["c3"] = c.c3;
    r.certificate.constants["c4"] = c.c4;
    r.certificate.constants["c5"] = c.c5;
    r.certificate.constants["c6"] = c.c6;
  }
  return r;
}

CheckResult check_theorem2(const TheoryInputs& in, const Schedules& s) {
  CheckResult r;
  CheckGraph(in, r);
  const double lower = OpenLowerBound(s.u);
  if (!(2.0 / 3.0 + kEqualityTol < lower)) Violate(r, "2/3 < (1+2u)/3");
  if (!(lower < s.v)) {
    Violate(r, "(1+2u)/3 < v (" + Fmt(lower) + " vs v = " + Fmt(s.v) + ")");
  }
  if (!(s.v < 1.0)) Violate(r, "v < 1");
  if (!(in.pc.mu >= 0.0)) Violate(r, "mu >= 0");
  CheckGamma0(in, s, r);
  if (!(s.lambda0 > 0.0)) Violate(r, "lambda0 > 0");
  const double k2d2 = in.pc.kappa * in.pc.kappa + in.pc.D * in.pc.D;
  const double lbound = -in.delta2 * s.gamma0 / (in.pc.L * in.pc.L + 2.0 * k2d2);
  r.certificate.constants["lambda0_bound"] = lbound;
  if (!(s.lambda0 <= lbound)) {
    Violate(r, "lambda0 <= -delta_2 gamma0/(L^2+2(kappa^2+D^2)) = " + Fmt(lbound) +
                   " (lambda0 = " + Fmt(s.lambda0) + ")");
  }
  check_assumption4(in, s, r);
  const double vs = Varsigma(in), sp = SigmaPlus(in), v = s.v, m = in.m;
  const double d0 = in.pc.D0, g0 = s.gamma0, l0 = s.lambda0;
  const double den = 1.0 - 1.0 / std::pow(2.0, 1.0 - v);
  const double e = 2.0 * s.u - 2.0 * vs - 1.0;
  r.certificate.beta = 0.0;
  r.certificate.beta_regret = (1.0 - v) / 2.0;
  r.certificate.constants["cbar1"] =
      2.0 * (3.0 * d0 * d0 * d0 + 1.0) / (2.0 * den) +
      8.0 * k2d2 * (1.0 - v * v) / (2.0 * v * den);
  r.certificate.constants["cbar2"] =
      (1.0 - v) / (2.0 * l0 * den) *
      (3.0 * m * sp * sp * g0 * g0 * (2.0 * s.u - 2.0 * vs) / e +
       12.0 * m * k2d2 * l0 * l0 * v / (2.0 * v - 1.0) + (1.0 + l0) * d0 * d0);
  r.certificate.constants["cbar3"] = d0 * d0 * (1.0 - v) / (2.0 * den);
  return r;
}

namespace {

// Saturates at LONG_MAX when the switch time is not representable.
long CeilRound(double x) {
  const double c = std::ceil(x);
  if (!(c < static_cast<double>(std::numeric_limits<long>::max()))) {
    return std::numeric_limits<long>::max();
  }
  return static_cast<long>(c);
}

}  // namespace

long compute_t0(const TheoryInputs& in, const Schedules& s) {
  if (!(s.v > s.u)) throw ConfigError("t0 needs v > u");
  if (!(in.pc.mu > 0.0)) throw ConfigError("t0 needs mu > 0");
  if (!(in.delta2 < 0.0 && in.deltaN < 0.0)) {
    throw ConfigError("t0 needs delta_2 < 0 and delta_N < 0");
  }
  const double mu = in.pc.mu, L = in.pc.L;
  const double first = std::pow(-3.0 * in.deltaN * s.gamma0, 1.0 / s.u) - 1.0;
  const double second =
      std::pow((mu * mu + 8.0 * L * L) * s.lambda0 / (-in.delta2 * mu * s.gamma0),
               1.0 / (s.v - s.u)) - 1.0;
  return CeilRound(std::max({first, second, 0.0}));
}

long compute_t0_tilde(const TheoryInputs& in, const Schedules& s) {
  const double lower = OpenLowerBound(s.u);
  if (!(lower < s.v && s.v < 1.0)) {
    throw ConfigError("t0~ needs (2u+1)/3 < v < 1 (got v = " + Fmt(s.v) +
                      ", bound " + Fmt(lower) + ")");
  }
  if (!(in.delta2 < 0.0 && in.deltaN < 0.0)) {
    throw ConfigError("t0~ needs delta_2 < 0 and delta_N < 0");
  }
  const double k2d2 = in.pc.kappa * in.pc.kappa + in.pc.D * in.pc.D;
  const double first = std::pow(-3.0 * in.deltaN * s.gamma0, 1.0 / s.u) - 1.0;
  const double expo = (3.0 * s.v - 1.0) / 2.0 - s.u;
  const double second =
      std::pow((in.pc.L * in.pc.L + 2.0 * k2d2) * s.lambda0 / (-in.delta2 * s.gamma0),
               1.0 / expo) - 1.0;
  return CeilRound(std::max({first, second, 0.0}));
}

CheckResult check_theorem3(const TheoryInputs& in, const Schedules& s) {
  CheckResult r;
  CheckGraph(in, r);
  if (!(0.0 < s.u)) Violate(r, "0 < u");
  if (!(s.u < s.v)) Violate(r, "u < v");
  if (!(s.v < 0.5)) Violate(r, "v < 1/2");
  if (!(in.pc.mu > 0.0)) Violate(r, "mu > 0");
  if (!(s.gamma0 > 0.0 && s.lambda0 > 0.0)) Violate(r, "gamma0, lambda0 > 0");
  check_assumption4(in, s, r);
  const double vs = Varsigma(in);
  r.certificate.beta = std::min(1.0 - s.v, 2.0 * s.u - 2.0 * vs - 1.0);
  r.certificate.beta_regret = r.certificate.beta / 2.0;
  if (r.certificate.beta <= 0.0) {
    r.warnings.push_back("predicted exponent min{1-v, 2u-2varsigma-1} is not positive");
  }
  if (r.ok || (in.pc.mu > 0.0 && s.v > s.u && in.delta2 < 0.0 && in.deltaN < 0.0)) {
    const long t0 = compute_t0(in, s);
    r.certificate.t0 = t0;
    const auto c = ComputeC(in, s, std::pow(t0 + 3.0, s.v) / 3.0);
    r.certificate.constants["chat1"] = c.c1;
    r.certificate.constants["chat2"] = c.c2;
    r.certificate.constants["chat3"] = c.c3;
    r.certificate.constants["chat4"] = c.c4;
    r.certificate.constants["chat5"] = c.c5;
    r.certificate.constants["chat6"] = c.c6;
  }
  return r;
}

CheckResult check_theorem4(const TheoryInputs& in, const Schedules& s) {
  CheckResult r;
  CheckGraph(in, r);
  const double lower = OpenLowerBound(s.u);
  if (!(2.0 / 3.0 + kEqualityTol < lower)) Violate(r, "2/3 < (2u+1)/3");
  if (!(lower < s.v)) Violate(r, "(2u+1)/3 < v");
  if (!(s.v < 1.0)) Violate(r, "v < 1");
  if (!(in.pc.mu >= 0.0)) Violate(r, "mu >= 0");
  if (!(s.gamma0 > 0.0 && s.lambda0 > 0.0)) Violate(r, "gamma0, lambda0 > 0");
  check_assumption4(in, s, r);
  r.certificate.beta_regret = (1.0 - s.v) / 2.0;
  if (lower < s.v && s.v < 1.0 && in.delta2 < 0.0 && in.deltaN < 0.0) {
    const long t0 = compute_t0_tilde(in, s);
    r.certificate.t0 = t0;
    const double vs = Varsigma(in), sp = SigmaPlus(in), v = s.v, m = in.m;
    const double d0 = in.pc.D0, g0 = s.gamma0, l0 = s.lambda0;
    const double k2d2 = in.pc.kappa * in.pc.kappa + in.pc.D * in.pc.D;
    const double den = 1.0 - std::pow((t0 + 1.0) / (t0 + 2.0), 1.0 - v);
    const double e = 2.0 * s.u - 2.0 * vs - 1.0;
    r.certificate.constants["ctilde1"] = d0 * d0 * (1.0 - v) / (2.0 * den);
    r.certificate.constants["ctilde2"] =
        (1.0 - v) / (den * 2.0 * l0) *
        ((1.0 + l0 / std::pow(t0 + 1.0, (v + 1.0) / 2.0)) * d0 * d0 +
         3.0 * m * sp * sp * g0 * g0 * (2.0 * s.u - 2.0 * vs) / e +
         12.0 * m * k2d2 * l0 * l0 * v / (2.0 * v - 1.0));
    r.certificate.constants["ctilde3"] =
        2.0 * (3.0 * d0 * d0 * d0 + 1.0) / (2.0 * den) +
        8.0 * k2d2 * (1.0 - v * v) / (2.0 * v * den);
  }
  return r;
}

CheckResult check_regime(const TheoryInputs& in, const Schedules& s) {
  switch (s.regime) {
    case Regime::kTheorem1: return check_theorem1(in, s);
    case Regime::kTheorem2: return check_theorem2(in, s);
    case Regime::kTheorem3: return check_theorem3(in, s);
    case Regime::kTheorem4: return check_theorem4(in, s);
    case Regime::kAblationConstantGamma: {
      CheckResult r = check_theorem1(in, s);
      r.warnings.push_back(
          "ablation: gamma_t is held at gamma0; no convergence guarantee applies");
      return r;
    }
  }
  return {};
}

}  // namespace ldpol
