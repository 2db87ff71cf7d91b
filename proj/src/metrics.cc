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

#include "ldpol/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {
namespace {

using MapMat = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                              Eigen::RowMajor>>;

double MaxEigen(const Vector& a, std::size_t n) {
  MapMat m(a.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return std::max(es.eigenvalues().maxCoeff(), 0.0);
}

double Dist2(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

ErmOracle::ErmOracle(Loss loss, ProjectionSet set, ErmOptions opts)
    : loss_(loss),
      set_(std::move(set)),
      opts_(opts),
      sxx_(set_.dim() * set_.dim(), 0.0),
      sxy_(set_.dim(), 0.0) {}

void ErmOracle::add(const Sample& xi) {
  if (xi.x.size() != dim()) throw DimensionError("oracle sample dimension");
  kernels::active().rank1_update(1.0, xi.x.data(), sxx_.data(), dim());
  kernels::axpy(xi.y, xi.x, sxy_);
  syy_ += xi.y * xi.y;
  if (loss_.kind == LossKind::kLogistic) samples_.push_back(xi);
  ++count_;
}

double ErmOracle::objective(VecView theta) const {
  if (count_ == 0) throw Error("empirical risk of an empty oracle");
  const double N = static_cast<double>(count_);
  if (loss_.kind == LossKind::kRidge) {
    Vector st(dim());
    kernels::active().matvec(sxx_.data(), theta.data(), st.data(), dim());
    const double quad = kernels::dot(theta, st);
    return (syy_ - 2.0 * kernels::dot(theta, sxy_) + quad) / N +
           loss_.reg * kernels::norm2sq(theta);
  }
  double s = 0.0;
  for (const Sample& xi : samples_) s += logistic_loss(theta, xi, loss_.reg);
  return s / N;
}

Vector ErmOracle::gradient(VecView theta) const {
  if (count_ == 0) throw Error("empirical risk of an empty oracle");
  const double N = static_cast<double>(count_);
  Vector g(dim(), 0.0);
  if (loss_.kind == LossKind::kRidge) {
    kernels::active().matvec(sxx_.data(), theta.data(), g.data(), dim());
    kernels::axpy(-1.0, sxy_, g);
    kernels::scale(2.0 / N, g);
    kernels::axpy(2.0 * loss_.reg, theta, g);
    return g;
  }
  for (const Sample& xi : samples_) {
    kernels::axpy(sigmoid(kernels::dot(xi.x, theta)) - xi.y, xi.x, g);
  }
  kernels::scale(1.0 / N, g);
  kernels::axpy(loss_.reg, theta, g);
  return g;
}

double ErmOracle::smoothness() const {
  const double N = std::max<double>(1.0, static_cast<double>(count_));
  const double top = MaxEigen(sxx_, dim()) / N;
  if (loss_.kind == LossKind::kRidge) return 2.0 * top + 2.0 * loss_.reg;
  return top / 4.0 + loss_.reg;
}

double ErmOracle::residual(VecView theta) const {
  const double eta = 1.0 / smoothness();
  Vector step(theta.begin(), theta.end());
  kernels::axpy(-eta, gradient(theta), step);
  set_.project(VecMut(step));
  return Dist2(theta, step);
}

Vector ErmOracle::solve_projected_gradient(Vector start, double tol) const {
  const double eta = 1.0 / smoothness();
  set_.project(VecMut(start));
  Vector x = start, y = start, x_prev = start;
  double tk = 1.0;
  double f_prev = objective(x);
  bool restarted = false;
  for (int it = 0; it < opts_.max_iters; ++it) {
    Vector next = y;
    kernels::axpy(-eta, gradient(y), next);
    set_.project(VecMut(next));
    const double f_next = objective(next);
    if (f_next > f_prev && !restarted) {  // adaptive restart
      tk = 1.0;
      y = x;
      restarted = true;
      continue;
    }
    restarted = false;
    x_prev = std::move(x);
    x = std::move(next);
    f_prev = f_next;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] += (tk - 1.0) / t_next * (x[i] - x_prev[i]);
    }
    tk = t_next;
    if (residual(x) <= tol) return x;
  }
  return x;
}

Vector ErmOracle::SolveRidge() const {
  const auto n = static_cast<Eigen::Index>(dim());
  const double N = static_cast<double>(count_);
  Eigen::MatrixXd a = MapMat(sxx_.data(), n, n);
  a.diagonal().array() += N * loss_.reg;
  Eigen::Map<const Eigen::VectorXd> b(sxy_.data(), n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  const double scale = std::max(a.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-13 * scale) {
    throw Error("singular ridge system (alpha = 0 with rank-deficient features)");
  }
  Eigen::VectorXd sol = ldlt.solve(b);
  Vector theta(sol.data(), sol.data() + n);
  if (set_.contains(theta, 0.0)) return theta;
  return solve_projected_gradient(std::move(theta), opts_.polish_tol);
}

Vector ErmOracle::SolveLogistic(const Vector* warm) const {
  const auto n = static_cast<Eigen::Index>(dim());
  const double N = static_cast<double>(count_);
  Vector theta = warm ? *warm : Vector(dim(), 0.0);
  double f = objective(theta);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const Vector g = gradient(theta);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * loss_.reg;
    for (const Sample& xi : samples_) {
      const double s = sigmoid(kernels::dot(xi.x, theta));
      Eigen::Map<const Eigen::VectorXd> a(xi.x.data(), n);
      h.selfadjointView<Eigen::Lower>().rankUpdate(a, s * (1.0 - s) / N);
    }
    h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
    Eigen::Map<const Eigen::VectorXd> gv(g.data(), n);
    const Eigen::VectorXd step = h.ldlt().solve(gv);
    const double decrement = gv.dot(step);
    if (!std::isfinite(decrement)) break;
    if (decrement < 1e-24) {
      converged = true;
      break;
    }
    double t = 1.0;
    Vector cand(dim());
    double fc = f;
    for (int ls = 0; ls < 60; ++ls) {
      for (Eigen::Index i = 0; i < n; ++i) cand[i] = theta[i] - t * step[i];
      fc = objective(cand);
      if (fc <= f - 0.25 * t * decrement) break;
      t *= 0.5;
    }
    if (!(fc <= f)) break;
    theta = cand;
    f = fc;
  }
  if (converged && set_.contains(theta, 0.0) && residual(theta) <= opts_.tol) return theta;
  return solve_projected_gradient(std::move(theta), opts_.tol);
}

Vector ErmOracle::solve(const Vector* warm) const {
  if (count_ == 0) throw Error("empirical risk of an empty oracle");
  return loss_.kind == LossKind::kRidge ? SolveRidge() : SolveLogistic(warm);
}

double max_of_means(const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw Error("no replicates to average");
  const std::size_t m = values.front().size();
  double best = -INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    double mean = 0.0;
    for (const auto& row : values) mean += row.at(i);
    best = std::max(best, mean / static_cast<double>(values.size()));
  }
  return best;
}

double tracking_error(const std::vector<std::vector<Vector>>& theta,
                      const std::vector<Vector>& optimum) {
  if (theta.empty() || theta.size() != optimum.size()) {
    throw Error("tracking error needs one optimum per replicate");
  }
  std::vector<std::vector<double>> d(theta.size());
  for (std::size_t r = 0; r < theta.size(); ++r) {
    for (const Vector& th : theta[r]) {
      const double e = Dist2(th, optimum[r]);
      d[r].push_back(e * e);
    }
  }
  return max_of_means(d);
}

double instantaneous_regret(const std::vector<std::vector<Vector>>& theta,
                            const std::vector<Vector>& optimum,
                            const std::vector<const ErmOracle*>& oracles) {
  if (theta.empty() || theta.size() != optimum.size() || theta.size() != oracles.size()) {
    throw Error("instantaneous regret needs one optimum and oracle per replicate");
  }
  std::vector<std::vector<double>> gap(theta.size());
  for (std::size_t r = 0; r < theta.size(); ++r) {
    const double fstar = oracles[r]->objective(optimum[r]);
    for (const Vector& th : theta[r]) gap[r].push_back(oracles[r]->objective(th) - fstar);
  }
  return max_of_means(gap);
}

std::vector<double> dynamic_regret(const std::vector<RoundLosses>& rounds) {
  if (rounds.empty()) throw Error("per-round losses were not recorded");
  std::vector<double> out;
  out.reserve(rounds.size());
  double acc = 0.0;
  for (const RoundLosses& r : rounds) {
    if (r.learner.size() != r.optimum.size()) throw Error("per-round loss record mismatch");
    for (std::size_t i = 0; i < r.learner.size(); ++i) acc += r.learner[i] - r.optimum[i];
    out.push_back(acc);
  }
  return out;
}

RateFit rate_fit(const std::vector<double>& t, const std::vector<double>& value,
                 double lo, double hi) {
  if (t.size() != value.size()) throw Error("rate fit: series lengths differ");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < lo || t[k] > hi) continue;
    if (!(value[k] > 0.0) || !(t[k] > 0.0)) {
      throw Error("rate fit: nonpositive value at t = " + std::to_string(t[k]));
    }
    xs.push_back(std::log(t[k]));
    ys.push_back(std::log(value[k]));
  }
  const std::size_t n = xs.size();
  if (n < 5) throw Error("rate fit needs at least 5 points, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (!(sxx > 0.0)) throw Error("rate fit: degenerate window");
  RateFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = ys[k] - fit.intercept - fit.slope * xs[k];
    sse += e * e;
  }
  fit.halfwidth = 2.0 * std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  return fit;
}

void geometric_bins(const std::vector<double>& t, const std::vector<double>& value,
                    int per_decade, std::vector<double>& bin_t,
                    std::vector<double>& bin_value) {
  struct Acc {
    double logt = 0.0, v = 0.0;
    int n = 0;
  };
  std::map<long, Acc> bins;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0.0)) continue;
    const long b = static_cast<long>(std::floor(per_decade * std::log10(t[k])));
    Acc& a = bins[b];
    a.logt += std::log(t[k]);
    a.v += value[k];
    ++a.n;
  }
  bin_t.clear();
  bin_value.clear();
  for (const auto& [b, a] : bins) {
    bin_t.push_back(std::exp(a.logt / a.n));
    bin_value.push_back(a.v / a.n);
  }
}

double lemma1_constant(const ProblemConstants& pc) {
  return 16.0 * (pc.kappa * pc.kappa + pc.D * pc.D) *
         (2.0 / (pc.mu * pc.mu) + 1.0 / (pc.L * pc.L));
}

DriftReport drift_check(const std::vector<double>& t, const std::vector<double>& drift,
                        double lo, double hi, int per_decade) {
  DriftReport rep;
  std::vector<double> wt, wv;
  for (std::size_t k = 0; k < t.size(); ++k) {
    rep.max_scaled = std::max(rep.max_scaled, (t[k] + 1.0) * (t[k] + 1.0) * drift[k]);
    if (t[k] >= lo && t[k] <= hi) {
      wt.push_back(t[k]);
      wv.push_back(drift[k]);
    }
  }
  std::vector<double> bt, bv, ft, fv;
  geometric_bins(wt, wv, per_decade, bt, bv);
  for (std::size_t k = 0; k < bt.size(); ++k) {
    if (bv[k] > 0.0) {
      ft.push_back(bt[k]);
      fv.push_back(bv[k]);
    }
  }
  if (ft.size() >= 5) rep.fit = rate_fit(ft, fv, 0.0, INFINITY);
  return rep;
}

}  // namespace ldpol
