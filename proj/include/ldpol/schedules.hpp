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

#ifndef LDPOL_SCHEDULES_HPP_
#define LDPOL_SCHEDULES_HPP_

#include <map>
#include <string>
#include <vector>

#include "ldpol/common.hpp"
#include "ldpol/objectives.hpp"

namespace ldpol {

enum class Regime {
  kTheorem1,
  kTheorem2,
  kTheorem3,
  kTheorem4,
  kAblationConstantGamma,
};

Regime parse_regime(const std::string& s);
std::string to_string(Regime r);

// gamma_t = gamma0 / (t+1)^u, lambda_t = lambda0 / (t+1)^v. The ablation
// regime holds gamma_t = gamma0.
struct Schedules {
  double gamma0 = 0.1;
  double u = 0.7;
  double lambda0 = 1.0;
  double v = 0.8;
  Regime regime = Regime::kTheorem1;

  double gamma(Round t) const;
  double lambda(Round t) const;
};

struct RateCertificate {
  double beta = 0.0;         // predicted tracking-error exponent
  double beta_regret = 0.0;  // predicted instantaneous-regret exponent
  long t0 = 0;               // switch time (parameter-free regimes)
  std::map<std::string, double> constants;
};

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  RateCertificate certificate;
};

// Everything the theorem conditions read.
struct TheoryInputs {
  ProblemConstants pc;
  double delta2 = 0.0;
  double deltaN = 0.0;
  int m = 1;
  double sigma_max = 0.0;     // max_i sigma^i
  double varsigma_max = 0.0;  // max_i varsigma^i
  double varsigma_min = 0.0;
  bool noise_enabled = true;
  double init_error = 0.0;    // bound on E||theta_0 - theta_0^*||^2 (stacked)
};

// max varsigma + 1/2 < u (strict). Equality is a violation; a gap below 0.02
// is a warning.
void check_assumption4(const TheoryInputs& in, const Schedules& s,
                       CheckResult& out);

// 1/2 < u < v < 1, gamma0 <= 1/(-3 delta_N),
// lambda0 <= -gamma0 delta_2 mu / (mu^2 + 8 L^2).
// beta = min{1-v, 2u-2varsigma-1}; regret exponent beta/2; c1..c6.
CheckResult check_theorem1(const TheoryInputs& in, const Schedules& s);

// 2/3 < (1+2u)/3 < v < 1, gamma0 <= 1/(-3 delta_N),
// lambda0 <= -delta_2 gamma0 / (L^2 + 2(kappa^2 + D^2)).
// Regret exponent (1-v)/2; cbar1..cbar3.
CheckResult check_theorem2(const TheoryInputs& in, const Schedules& s);

// 0 < u < v < 1/2, mu > 0; t0, chat3, chat4 and rate.
CheckResult check_theorem3(const TheoryInputs& in, const Schedules& s);

// 2/3 < (2u+1)/3 < v < 1; t0~, ctilde1..ctilde3 and rate.
CheckResult check_theorem4(const TheoryInputs& in, const Schedules& s);

// Dispatches on s.regime. The ablation regime reports Theorem-1 conditions
// with a note that gamma is constant.
CheckResult check_regime(const TheoryInputs& in, const Schedules& s);

// ceil(max{(-3 delta_N gamma0)^{1/u} - 1,
//          ((mu^2 + 8L^2) lambda0 / (-delta_2 mu gamma0))^{1/(v-u)} - 1}),
// clamped at 0. Throws ConfigError when v <= u or mu <= 0.
long compute_t0(const TheoryInputs& in, const Schedules& s);

// Same with exponent (3v-1)/2 - u and (L^2 + 2(kappa^2 + D^2)) lambda0 /
// (-delta_2 gamma0). Throws ConfigError unless (2u+1)/3 < v < 1.
long compute_t0_tilde(const TheoryInputs& in, const Schedules& s);

}  // namespace ldpol

#endif  // LDPOL_SCHEDULES_HPP_
