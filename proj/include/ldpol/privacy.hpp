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

#ifndef LDPOL_PRIVACY_HPP_
#define LDPOL_PRIVACY_HPP_

#include <string>
#include <vector>

#include "ldpol/common.hpp"
#include "ldpol/rng.hpp"
#include "ldpol/schedules.hpp"

namespace ldpol {

// sigma_t = sigma (t+1)^varsigma; Laplace parameter nu_t = sigma_t / sqrt(2).
struct NoiseSchedule {
  double sigma = 2.0;
  double varsigma = 0.1;
};

struct NoiseScale {
  double sigma_t;
  double nu_t;
};

NoiseScale noise_scale(const NoiseSchedule& s, Round t);

// Independent Laplace(nu) draws by inverse CDF. Throws ConfigError if nu <= 0.
void sample_laplace_into(double nu, CounterStream& rng, VecMut out);
Vector sample_laplace(double nu, std::size_t dim, CounterStream& rng);

struct AccountantParams {
  double wbar = 0.0;       // min_i |w_ii|
  double C = 0.0;          // enforced gradient 1-norm bound
  double L = 0.0;          // gradient Lipschitz constant
  std::size_t dim = 1;
  NoiseSchedule noise;
};

// Lipschitz factor of the clipped gradient in the 1-norm: radial clipping
// onto the 1-norm ball is 2-Lipschitz for n > 1 and a clamp for n = 1.
double clipped_lipschitz(double L, std::size_t dim);

// Per-learner accountant. After step(t) for t = 0..T-1 it holds
//   rho_T        with rho_{t+1} = (1 - wbar gamma_t) rho_t + lambda_t, rho_0 = 0;
//   delta_T      with delta_{t+1} = (1 - wbar gamma_t + sqrt(n) L' lambda_t t/(t+1)) delta_t
//                                   + 2 lambda_t C / (t+1), delta_0 = 0;
//   eps_partial  = sum_{tau=1}^{T} sqrt(2) delta_tau / sigma_tau (Laplace
//                  mechanism applied to the round-tau broadcast);
//   eps_rho      = sum_{tau=1}^{T} 2 sqrt(2) C rho_tau / sigma_tau.
class PrivacyLedger {
 public:
  PrivacyLedger(AccountantParams params, Schedules sched);

  // Advances by round t; rounds must be consecutive from 0. Throws ConfigError
  // if wbar gamma_t >= 1.
  void step(Round t);
  // Same with explicit schedule values.
  void step(double gamma_t, double lambda_t, Round t);

  Round rounds() const { return next_; }
  double rho() const { return rho_; }
  double delta() const { return delta_; }
  double eps_partial() const { return eps_; }
  double eps_rho() const { return eps_rho_; }
  // Latest eps_partial increment.
  double last_term() const { return last_term_; }
  const AccountantParams& params() const { return params_; }

 private:
  AccountantParams params_;
  Schedules sched_;
  double lclip_;
  Round next_ = 0;
  double rho_ = 0.0;
  double delta_ = 0.0;
  double eps_ = 0.0;
  double eps_rho_ = 0.0;
  double last_term_ = 0.0;
};

struct BudgetReport {
  std::vector<Round> horizons;
  std::vector<double> eps;      // eps_partial at each horizon
  std::vector<double> eps_rho;
  double exponent = 0.0;        // 1 + v - u + varsigma
  double tail_estimate = 0.0;   // at the last horizon
  std::vector<std::string> warnings;
};

// Runs the ledger to each horizon (ascending). The tail estimate bounds
// sum_{t > T} eps_t by K T^{1-p} / (p - 1), p = 1 + v - u + varsigma, with K
// the envelope max eps_t (t+1)^p over t in [T/2, T]. Warns when v <= u.
BudgetReport budget_bound(const AccountantParams& params, const Schedules& sched,
                          std::vector<Round> horizons);

// Closed-form integral of x^{-p} over [T, inf).
double tail_integral(double T, double p);

}  // namespace ldpol

#endif  // LDPOL_PRIVACY_HPP_
