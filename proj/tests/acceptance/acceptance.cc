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

// Acceptance checks. Prints one "PASS criterion N: ..." or "FAIL criterion N: ..."
// line per criterion. With arguments, runs only the listed criterion numbers.
// Exit status is 1 if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "ldpol/config.hpp"
#include "ldpol/error.hpp"
#include "ldpol/gradient_memory.hpp"
#include "ldpol/metrics.hpp"
#include "ldpol/privacy.hpp"
#include "ldpol/projection.hpp"
#include "ldpol/schedules.hpp"
#include "ldpol/sensitivity.hpp"
#include "ldpol/simulator.hpp"
#include "ldpol/streams.hpp"
#include "ldpol/topology.hpp"

namespace ldpol {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string ConfigPath(const std::string& name) {
  return std::string(LDPOL_CONFIG_DIR) + "/" + name;
}

void Require(Outcome& o, bool ok, const std::string& what) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? "" : " [violated]");
}

const Checkpoint& At(const RunTrace& tr, Round t) {
  for (const Checkpoint& c : tr.checkpoints)
    if (c.t == t) return c;
  throw Error("no checkpoint at t = " + std::to_string(t));
}

RateFit FitSeries(const RunTrace& tr, double lo, double hi, bool regret) {
  std::vector<double> t, v;
  for (const Checkpoint& c : tr.checkpoints) {
    t.push_back(static_cast<double>(c.t));
    v.push_back(regret ? c.R : c.V);
  }
  return rate_fit(t, v, lo, hi);
}

// Ring tracking run, shared by several criteria.
struct MainRun {
  Experiment ex;
  RunTrace trace;
  double seconds;
};

const MainRun& TheoremOneRun() {
  static const MainRun* run_once = [] {
    Clock clock;
    Experiment ex = build_experiment(load_config(ConfigPath("theorem1_ring.yaml")));
    RunTrace tr = run(ex);
    return new MainRun{std::move(ex), std::move(tr), clock.seconds()};
  }();
  return *run_once;
}

Outcome MemoryEquivalence() {
  Outcome o;
  Clock clock;
  const std::size_t n = 5;
  Loss loss = Loss::Ridge(0.1);
  ReplayMemory replay(n, loss, INFINITY);
  AffineAggregate affine(n, 0.1);
  auto rng = testing::test_stream(1001);
  Vector a(n), b(n);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Vector theta = testing::uniform_vector(rng, n, -3, 3);
    Sample xi = synthetic_stream(Vector{1.0, -0.5, 0.25, 2.0, -1.0}, 1.0, 0.3, rng);
    replay.append(xi);
    affine.append(xi);
    replay.average_gradient(theta, a);
    affine.average_gradient(theta, b);
    double scale = 0.0, diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(a[j]));
      diff = std::max(diff, std::abs(a[j] - b[j]));
    }
    worst = std::max(worst, diff / scale);
  }
  const double secs = clock.seconds();
  Require(o, worst <= 1e-10, "max relative deviation " + Fmt(worst) + " <= 1e-10");
  Require(o, secs < 10.0, "runtime " + Fmt(secs) + " s < 10 s");
  return o;
}

Outcome InterpolationExactness() {
  Outcome o;
  // One-hot features: every gradient coordinate is affine in that coordinate.
  const std::size_t n = 3;
  Loss loss = Loss::Ridge(0.2);
  ReplayMemory replay(n, loss, INFINITY);
  InterpolatedMemory interp(n, loss, INFINITY);
  auto rng = testing::test_stream(1002);
  Vector theta = testing::uniform_vector(rng, n, -1, 1);
  Vector a(n), b(n);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Sample xi{Vector(n, 0.0), testing::uniform(rng, -2, 2)};
    xi.x[rng() % n] = testing::uniform(rng, -1, 1);
    replay.append(xi);
    interp.append(xi);
    replay.average_gradient(theta, a);
    interp.average_gradient(theta, b);
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    for (std::size_t j = 0; j < n; ++j) theta[j] -= 0.1 * a[j] + 0.01 * testing::uniform(rng, -1, 1);
  }
  Require(o, worst <= 1e-9, "max deviation from replay " + Fmt(worst) + " <= 1e-9");
  return o;
}

Outcome DriftCheck() {
  Outcome o;
  const double alpha = 0.5, B = 1.0, s = 0.2, R = 3.0;
  ErmOracle oracle(Loss::Ridge(alpha), ProjectionSet::Ball({0.0}, R));
  auto rng = testing::test_stream(1003);
  Vector prev;
  std::vector<double> t, d;
  for (int k = 0; k <= 10000; ++k) {
    oracle.add(synthetic_stream(Vector{1.0}, B, s, rng));
    Vector cur = oracle.solve(prev.empty() ? nullptr : &prev);
    if (!prev.empty()) {
      t.push_back(k - 1);
      d.push_back(std::pow(cur[0] - prev[0], 2));
    }
    prev = cur;
  }
  DriftReport r = drift_check(t, d, 1e2, 1e4);
  DataBounds bd;
  bd.dim = 1;
  bd.feature_norm2 = B;
  bd.feature_norm1 = B;
  bd.label_abs = B * 1.0 + 4.0 * s;
  bd.theta_norm2 = R;
  bd.theta_norm1 = R;
  bd.diameter = 2 * R;
  const double bound = 2.0 * lemma1_constant(derive_constants(Loss::Ridge(alpha), bd));
  Require(o, std::abs(r.fit.slope + 2.0) <= 0.3,
          "drift slope " + Fmt(r.fit.slope) + " within -2 +- 0.3");
  Require(o, r.max_scaled <= bound,
          "max (t+1)^2 drift " + Fmt(r.max_scaled) + " <= 2x drift constant " + Fmt(bound));
  return o;
}

Outcome TrackingRate() {
  Outcome o;
  const MainRun& mr = TheoremOneRun();
  CheckResult chk = check_experiment(mr.ex);
  double vs_max = 0.0;
  for (const auto& ns : mr.ex.cfg.noise.per_learner) vs_max = std::max(vs_max, ns.varsigma);
  Require(o, chk.ok, "schedules pass the condition checker");
  Require(o, vs_max <= 0.12, "max varsigma " + Fmt(vs_max) + " <= 0.12");
  Require(o, mr.ex.cfg.replicates == 20 && mr.trace.horizon == 100000, "20 replicates, T = 1e5");
  const RateFit f = FitSeries(mr.trace, 1e3, 1e5, false);
  Require(o, f.slope < 0.0 && f.slope >= -0.35 && f.slope <= -0.05,
          "V slope " + Fmt(f.slope) + " in [-0.35, -0.05] (predicted beta " +
              Fmt(chk.certificate.beta) + ")");
  const double v3 = At(mr.trace, 1000).V, vT = At(mr.trace, 100000).V;
  Require(o, vT < v3 / 3.0, "V_T = " + Fmt(vT) + " < V_1e3/3 = " + Fmt(v3 / 3.0));
  Require(o, mr.seconds < 600.0, "runtime " + Fmt(mr.seconds) + " s < 600 s");
  return o;
}

Outcome RegretRate() {
  Outcome o;
  const MainRun& mr = TheoremOneRun();
  const double beta = check_experiment(mr.ex).certificate.beta;
  const RateFit f = FitSeries(mr.trace, 1e3, 1e5, true);
  Require(o, std::abs(f.slope + beta / 2.0) <= 0.1,
          "R slope " + Fmt(f.slope) + " within -beta/2 = " + Fmt(-beta / 2.0) + " +- 0.1");
  double worst = -INFINITY;
  for (const Checkpoint& c : mr.trace.checkpoints)
    worst = std::max(worst, c.R - (mr.ex.pc.D * std::sqrt(c.V) + 1e-6));
  Require(o, worst <= 0.0, "max over checkpoints of R - (D sqrt(V) + 1e-6) = " + Fmt(worst));
  return o;
}

Outcome FiniteBudget() {
  Outcome o;
  const MainRun& mr = TheoremOneRun();
  const std::vector<Round> hs{1000, 10000, 100000};
  bool shrink = true, tail_ok = true;
  double worst_tail = 0.0;
  for (int i = 0; i < mr.ex.W.size(); ++i) {
    BudgetReport b = budget_bound(accountant_params(mr.ex, i), mr.ex.cfg.schedules, hs);
    const double d1 = b.eps[1] - b.eps[0], d2 = b.eps[2] - b.eps[1];
    shrink = shrink && d1 > 0 && d2 > 0 && d2 < d1;
    worst_tail = std::max(worst_tail, b.tail_estimate / b.eps[2]);
    tail_ok = tail_ok && b.tail_estimate < 0.1 * b.eps[2];
  }
  Require(o, shrink, "every learner: eps increasing with strictly shrinking increments");
  Require(o, tail_ok, "max tail/eps(1e5) " + Fmt(worst_tail) + " < 0.1");

  // Negative control: same run with varsigma = 0 and v = u.
  Experiment neg = build_experiment(load_config(
      ConfigPath("theorem1_ring.yaml"),
      {"noise.varsigma=0.0", "schedules.v=" + std::to_string(mr.ex.cfg.schedules.u)}));
  bool nonshrinking = true;
  std::string incs;
  for (int i = 0; i < neg.W.size(); ++i) {
    BudgetReport b = budget_bound(accountant_params(neg, i), neg.cfg.schedules, hs);
    const double d1 = b.eps[1] - b.eps[0], d2 = b.eps[2] - b.eps[1];
    nonshrinking = nonshrinking && d2 >= d1;
    if (i == 0) incs = Fmt(d1) + " then " + Fmt(d2);
  }
  Require(o, nonshrinking, "negative control increments non-shrinking (learner 0: " + incs + ")");
  return o;
}

Outcome SensitivitySoundness() {
  Outcome o;
  Experiment ex = build_experiment(load_config(ConfigPath("sensitivity_1d.yaml")));
  bool shape = ex.W.size() == 2 && ex.set.dim() == 1 && ex.cfg.horizon == 500;
  Require(o, shape, "1-D ridge, m = 2, 500 rounds");
  RunOptions ro;
  ro.record_inbox = 0;
  ro.measure = false;
  RunTrace tr = run(ex, ro);
  const auto data = learner_dataset(ex, 0, 0);
  auto rng = testing::test_stream(1007);
  int sound = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = rng() % data.size();
    SensitivityResult r =
        empirical_sensitivity(ex, 0, tr.inbox, data, adjacent_dataset(ex, data, k, 0, 0));
    sound += r.sound ? 1 : 0;
    worst = std::max(worst, r.max_ratio);
  }
  Require(o, sound == 10, std::to_string(sound) + "/10 trials within the bound at every round");
  o.detail += "; max trace/bound " + Fmt(worst);
  return o;
}

Outcome Ablation() {
  Outcome o;
  const MainRun& mr = TheoremOneRun();
  Experiment ab = build_experiment(load_config(ConfigPath("ablation_constant_gamma.yaml")));
  RunTrace tr = run(ab);
  const double va = At(tr, 100000).V, v1 = At(mr.trace, 100000).V;
  Require(o, va >= 10.0 * v1,
          "V_1e5 ablation " + Fmt(va) + " >= 10 x " + Fmt(v1) + " (ratio " + Fmt(va / v1) + ")");
  return o;
}

long ScanT0(const TheoryInputs& in, const Schedules& s) {
  const double mu = in.pc.mu, L = in.pc.L;
  const double ratio = -in.delta2 * mu / (mu * mu + 8 * L * L);
  for (long t = 0;; ++t) {
    if (s.gamma(t) <= 1.0 / (-3.0 * in.deltaN) && s.lambda(t) / s.gamma(t) <= ratio) return t;
  }
}

Outcome ParameterFree() {
  Outcome o;
  Experiment ex = build_experiment(load_config(ConfigPath("theorem3_parameter_free.yaml")));
  const Schedules& s = ex.cfg.schedules;
  Require(o, 0 < s.u && s.u < s.v && s.v < 0.5 && s.gamma0 == 1.0 && s.lambda0 == 1.0,
          "0 < u < v < 1/2, gamma0 = lambda0 = 1");
  const TheoryInputs in = theory_inputs(ex);
  const long t0 = compute_t0(in, s);
  const long scan = ScanT0(in, s);
  Require(o, t0 == scan, "t0 = " + std::to_string(t0) + ", scan oracle " + std::to_string(scan));
  RunTrace tr = run(ex);
  bool decreasing = true;
  double prev = INFINITY;
  for (const Checkpoint& c : tr.checkpoints) {
    if (c.t <= t0) continue;
    decreasing = decreasing && c.V < prev;
    prev = c.V;
  }
  Require(o, decreasing, "V decreasing at every checkpoint after t0");
  const RateFit f = FitSeries(tr, 10.0 * t0, 1000.0 * t0, false);
  Require(o, f.slope < 0.0, "V slope over [10 t0, 1000 t0] = " + Fmt(f.slope) + " < 0");
  return o;
}

Outcome Logistic() {
  Outcome o;
  Clock clock;
  Experiment ex = build_experiment(load_config(ConfigPath("mushrooms.yaml")));
  const Schedules& s = ex.cfg.schedules;
  bool expected = ex.W.size() == 5 && s.gamma0 == 0.1 && s.u == 0.7 && s.lambda0 == 1.0 && s.v == 0.8;
  for (int i = 0; i < 5; ++i) {
    const auto& ns = ex.cfg.noise.per_learner[i];
    expected = expected && std::abs(ns.sigma - 2.0) < 1e-15 &&
            std::abs(ns.varsigma - (0.1 + 0.02 * (i + 1))) < 1e-12;
  }
  Require(o, expected, "m = 5 with the experiment schedules and noise");
  RunTrace tr = run(ex);
  const double r100 = At(tr, 100).R, rT = At(tr, 4000).R;
  const double secs = clock.seconds();
  Require(o, rT < r100 / 2.0, "R_4000 = " + Fmt(rT) + " < R_100/2 = " + Fmt(r100 / 2.0));
  Require(o, secs < 300.0, "runtime " + Fmt(secs) + " s < 300 s");
  return o;
}

Outcome Invariants() {
  Outcome o;
  int cases = 0, bad = 0;
  auto rng = testing::test_stream(1011);
  for (int c = 0; c < 1000; ++c, ++cases) {
    const std::size_t n = 1 + c % 4;
    ProjectionSet set = c % 2 ? ProjectionSet::Ball(Vector(n, 0.1), 1.3)
                              : ProjectionSet::Box(Vector(n, -0.5), Vector(n, 0.7));
    Vector p = set.projected(testing::uniform_vector(rng, n, -5, 5));
    Vector q = set.projected(p);
    for (std::size_t j = 0; j < n; ++j) bad += std::abs(p[j] - q[j]) > 1e-14;
    bad += !set.contains(p);
  }
  Require(o, bad == 0, "projection idempotence (1000 cases)");

  bad = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto g = testing::test_stream(seed, 1012);
    const int m = 2 + static_cast<int>(g() % 8);
    WeightMatrix w = build_weight_matrix_auto(Graph::ErdosRenyi(m, 0.5, seed), WeightScheme::Metropolis());
    std::vector<std::vector<double>> rows(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) rows[i][j] = w(i, j);
    auto ev = testing::jacobi_eigenvalues(rows);
    bad += !spectral_check(w.entries()).ok;
    bad += std::abs(ev.front() - w.deltaN()) > 1e-9 || std::abs(ev[m - 2] - w.delta2()) > 1e-9;
  }
  Require(o, bad == 0, "weight-matrix spectral checks vs Jacobi oracle (1000 graphs)");

  bad = 0;
  for (int c = 0; c < 1000; ++c) {
    Schedules s{testing::uniform(rng, 0.1, 1.0), testing::uniform(rng, 0.5, 0.8),
                testing::uniform(rng, 0.001, 0.3), 0.9, Regime::kTheorem1};
    const double wbar = testing::uniform(rng, 0.1, 0.9);
    AccountantParams ap;
    ap.wbar = wbar;
    ap.C = 1.0;
    ap.L = 1.0;
    PrivacyLedger led(ap, s);
    const int T = 1 + c % 50;
    for (int t = 0; t < T; ++t) led.step(t);
    double direct = 0.0;
    for (int p = 0; p < T; ++p) {
      double prod = 1.0;
      for (int q = p + 1; q < T; ++q) prod *= 1.0 - wbar * s.gamma(q);
      direct += s.lambda(p) * prod;
    }
    bad += std::abs(direct - led.rho()) > 1e-12;
  }
  Require(o, bad == 0, "rho recursion vs explicit sum (1000 cases)");

  CounterStream lr(StreamKey{1013, 0, 0, 0, Purpose::kNoise});
  Vector z = sample_laplace(1.0, 1000000, lr);
  double mean = 0.0, var = 0.0;
  for (double x : z) mean += x;
  mean /= z.size();
  for (double x : z) var += (x - mean) * (x - mean);
  var /= z.size();
  Require(o, std::abs(mean) <= 0.01 && std::abs(var - 2.0) <= 0.05,
          "Laplace moments mean " + Fmt(mean) + ", variance " + Fmt(var));

  bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    Experiment ex = build_experiment(load_config(
        ConfigPath("theorem1_ring.yaml"), {"horizon=40", "replicates=1", "metrics.extra_checkpoints=[]", "seed=" + std::to_string(rep)}));
    RunTrace a = run(ex), b = run(ex);
    for (std::size_t k = 0; k < a.checkpoints.size(); ++k) {
      bad += a.checkpoints[k].V != b.checkpoints[k].V;
      bad += a.checkpoints[k].theta != b.checkpoints[k].theta;
    }
  }
  Require(o, bad == 0, "bitwise determinism of repeated runs (1000 seeds)");
  return o;
}

}  // namespace
}  // namespace ldpol

int main(int argc, char** argv) {
  using namespace ldpol;
  const std::vector<std::pair<int, std::function<Outcome()>>> all{
      {1, MemoryEquivalence}, {2, InterpolationExactness}, {3, DriftCheck},
      {4, TrackingRate},      {5, RegretRate},             {6, FiniteBudget},
      {7, SensitivitySoundness}, {8, Ablation},           {9, ParameterFree},
      {10, Logistic},         {11, Invariants}};
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [id, fn] : all) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), id) == pick.end()) continue;
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s\n", r.pass ? "PASS" : "FAIL", id, r.detail.c_str());
    std::fflush(stdout);
    failures += r.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
