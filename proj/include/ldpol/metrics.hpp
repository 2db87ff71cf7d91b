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

#ifndef LDPOL_METRICS_HPP_
#define LDPOL_METRICS_HPP_

#include <vector>

#include "ldpol/common.hpp"
#include "ldpol/objectives.hpp"
#include "ldpol/projection.hpp"

namespace ldpol {

struct ErmOptions {
  double tol = 1e-9;           // projected-gradient residual target
  double polish_tol = 1e-10;   // ridge: used when the linear solve leaves the set
  int max_iters = 200000;
};

// Minimizer over the parameter set of the running empirical risk
//   F_t(theta) = (1/N) sum_k l(theta, xi_k)
// over every sample received so far by every learner. Ridge keeps the
// sufficient statistics (sum x x^T, sum x y, sum y^2); logistic keeps the
// samples.
class ErmOracle {
 public:
  ErmOracle(Loss loss, ProjectionSet set, ErmOptions opts = {});

  void add(const Sample& xi);
  std::size_t count() const { return count_; }
  std::size_t dim() const { return set_.dim(); }
  const Loss& loss() const { return loss_; }

  double objective(VecView theta) const;
  Vector gradient(VecView theta) const;
  // ||theta - Proj(theta - eta grad F(theta))|| with eta = 1 / smoothness.
  double residual(VecView theta) const;

  // theta*_t. Ridge: linear solve of (S + N alpha I) theta = s, polished by
  // projected gradient when the solution leaves the set. Logistic: Newton,
  // then projected gradient if the minimizer is constrained. `warm` seeds
  // the iterative solvers. Throws Error on an empty oracle or a singular
  // ridge system.
  Vector solve(const Vector* warm = nullptr) const;
  // Projected gradient (FISTA) from `start` to the residual tolerance.
  Vector solve_projected_gradient(Vector start, double tol) const;

  // Upper bound on the Lipschitz constant of grad F.
  double smoothness() const;

 private:
  Vector SolveRidge() const;
  Vector SolveLogistic(const Vector* warm) const;

  Loss loss_;
  ProjectionSet set_;
  ErmOptions opts_;
  std::size_t count_ = 0;
  Vector sxx_;  // row-major n x n
  Vector sxy_;
  double syy_ = 0.0;
  std::vector<Sample> samples_;  // logistic only
};

// max_i mean_r values[r][i].
double max_of_means(const std::vector<std::vector<double>>& values);

// V_t = max_i mean_r ||theta[r][i] - optimum[r]||^2.
double tracking_error(const std::vector<std::vector<Vector>>& theta,
                      const std::vector<Vector>& optimum);

// R_t = max_i mean_r (F_r(theta[r][i]) - F_r(optimum[r])).
double instantaneous_regret(const std::vector<std::vector<Vector>>& theta,
                            const std::vector<Vector>& optimum,
                            const std::vector<const ErmOracle*>& oracles);

// Per-round loss record of one replicate for the dynamic regret.
struct RoundLosses {
  std::vector<double> learner;  // l(theta_t^i, xi_t^i)
  std::vector<double> optimum;  // l(theta*_t, xi_t^i)
};

// Cumulative sum_i sum_{s<=t} [l(theta_s^i, xi_s^i) - l(theta*_s, xi_s^i)]
// for every t. Throws Error on an empty record.
std::vector<double> dynamic_regret(const std::vector<RoundLosses>& rounds);

struct RateFit {
  double slope = 0.0;
  double halfwidth = 0.0;  // two standard errors
  double intercept = 0.0;
  std::size_t points = 0;
};

// Least-squares fit of log value against log t over t in [lo, hi]. Throws
// Error with fewer than 5 points or a nonpositive value in the window.
RateFit rate_fit(const std::vector<double>& t, const std::vector<double>& value,
                 double lo, double hi);

// Averages (t, value) over geometric bins (per_decade bins per factor 10);
// returns the bin geometric-mean t and mean value of nonempty bins.
void geometric_bins(const std::vector<double>& t, const std::vector<double>& value,
                    int per_decade, std::vector<double>& bin_t,
                    std::vector<double>& bin_value);

// 16 (kappa^2 + D^2) (2/mu^2 + 1/L^2).
double lemma1_constant(const ProblemConstants& pc);

struct DriftReport {
  double max_scaled = 0.0;  // max (t+1)^2 ||theta*_{t+1} - theta*_t||^2
  RateFit fit;              // slope of binned drift against t
};

// t[k] and drift[k] = ||theta*_{t+1} - theta*_t||^2 at consecutive rounds.
// The slope is fitted over [lo, hi] on geometric-bin averages (zero drift
// bins are dropped; no fit if fewer than 5 remain).
DriftReport drift_check(const std::vector<double>& t, const std::vector<double>& drift,
                        double lo, double hi, int per_decade = 10);

}  // namespace ldpol

#endif  // LDPOL_METRICS_HPP_
