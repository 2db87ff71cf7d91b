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

#include "ldpol/privacy.hpp"

#include <algorithm>
#include <cmath>

#include "ldpol/error.hpp"

namespace ldpol {

NoiseScale noise_scale(const NoiseSchedule& s, Round t) {
  const double sigma_t = s.sigma * std::pow(static_cast<double>(t) + 1.0, s.varsigma);
  return {sigma_t, sigma_t / std::sqrt(2.0)};
}

void sample_laplace_into(double nu, CounterStream& rng, VecMut out) {
  if (!(nu > 0.0)) throw ConfigError("Laplace parameter must be positive");
  for (double& z : out) {
    const double p = rng.uniform01() - 0.5;
    z = -nu * std::copysign(1.0, p) * std::log1p(-2.0 * std::fabs(p));
  }
}

Vector sample_laplace(double nu, std::size_t dim, CounterStream& rng) {
  Vector out(dim);
  sample_laplace_into(nu, rng, out);
  return out;
}

double clipped_lipschitz(double L, std::size_t dim) {
  return dim > 1 ? 2.0 * L : L;
}

PrivacyLedger::PrivacyLedger(AccountantParams params, Schedules sched)
    : params_(params), sched_(sched), lclip_(clipped_lipschitz(params.L, params.dim)) {
  if (!(params_.wbar > 0.0)) throw ConfigError("accountant needs wbar > 0");
  if (!(params_.C > 0.0)) throw ConfigError("accountant needs C > 0");
  if (!(params_.noise.sigma > 0.0)) throw ConfigError("accountant needs sigma > 0");
}

void PrivacyLedger::step(Round t) { step(sched_.gamma(t), sched_.lambda(t), t); }

void PrivacyLedger::step(double gamma_t, double lambda_t, Round t) {
  if (t != next_) {
    throw Error("privacy ledger expects round " + std::to_string(next_) + ", got " +
                std::to_string(t));
  }
  const double contract = params_.wbar * gamma_t;
  if (contract >= 1.0) {
    throw ConfigError("wbar * gamma_" + std::to_string(t) + " = " +
                      std::to_string(contract) + " >= 1; the sensitivity recursion diverges");
  }
  const double td = static_cast<double>(t);
  rho_ = (1.0 - contract) * rho_ + lambda_t;
  delta_ = (1.0 - contract + std::sqrt(static_cast<double>(params_.dim)) * lclip_ *
                                 lambda_t * td / (td + 1.0)) *
               delta_ +
           2.0 * lambda_t * params_.C / (td + 1.0);
  ++next_;
  const double sigma = noise_scale(params_.noise, next_).sigma_t;
  last_term_ = std::sqrt(2.0) * delta_ / sigma;
  eps_ += last_term_;
  eps_rho_ += 2.0 * std::sqrt(2.0) * params_.C * rho_ / sigma;
}

double tail_integral(double T, double p) {
  if (!(p > 1.0)) return INFINITY;
  return std::pow(T, 1.0 - p) / (p - 1.0);
}

BudgetReport budget_bound(const AccountantParams& params, const Schedules& sched,
                          std::vector<Round> horizons) {
  std::sort(horizons.begin(), horizons.end());
  BudgetReport rep;
  rep.horizons = horizons;
  rep.exponent = 1.0 + sched.v - sched.u + params.noise.varsigma;
  if (!(sched.v > sched.u)) {
    rep.warnings.push_back("v <= u: a finite cumulative budget is not guaranteed");
  }
  if (!(params.noise.varsigma > 0.0)) {
    rep.warnings.push_back("noise exponent is not positive");
  }
  if (horizons.empty()) return rep;
  PrivacyLedger ledger(params, sched);
  const Round last = horizons.back();
  double envelope = 0.0;
  std::size_t next_h = 0;
  while (next_h < horizons.size() && horizons[next_h] <= 0) {
    rep.eps.push_back(0.0);
    rep.eps_rho.push_back(0.0);
    ++next_h;
  }
  for (Round t = 0; t < last; ++t) {
    ledger.step(t);
    const Round tau = ledger.rounds();
    if (2 * tau >= last) {
      envelope = std::max(envelope, ledger.last_term() *
                                        std::pow(static_cast<double>(tau) + 1.0, rep.exponent));
    }
    while (next_h < horizons.size() && horizons[next_h] == tau) {
      rep.eps.push_back(ledger.eps_partial());
      rep.eps_rho.push_back(ledger.eps_rho());
      ++next_h;
    }
  }
  rep.tail_estimate = envelope * tail_integral(static_cast<double>(last), rep.exponent);
  return rep;
}

}  // namespace ldpol
