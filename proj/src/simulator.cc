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

#include "ldpol/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"
#include "ldpol/metrics.hpp"

namespace ldpol {
namespace {

Graph MakeGraph(const RunConfig& cfg) {
  const auto& t = cfg.topology;
  if (!t.matrix.empty()) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < t.m; ++i) {
      if (t.matrix[i].size() != static_cast<std::size_t>(t.m)) {
        throw ConfigError("topology.matrix must be square");
      }
      for (int j = i + 1; j < t.m; ++j) {
        if (t.matrix[i][j] != 0.0) edges.emplace_back(i, j);
      }
    }
    return Graph(t.m, edges);
  }
  if (t.graph == "ring") return Graph::Ring(t.m);
  if (t.graph == "complete") return Graph::Complete(t.m);
  if (t.graph == "path") return Graph::Path(t.m);
  if (t.graph == "erdos_renyi") {
    return Graph::ErdosRenyi(t.m, t.p, mix64(cfg.seed ^ static_cast<std::uint64_t>(Purpose::kGraph)));
  }
  if (t.graph == "explicit") return Graph(t.m, t.edges);
  throw ConfigError("unknown topology.graph '" + t.graph + "'");
}

WeightMatrix MakeWeights(const RunConfig& cfg, const Graph& g) {
  const auto& t = cfg.topology;
  if (!t.matrix.empty() || t.weights == "explicit") {
    if (t.matrix.empty()) throw ConfigError("explicit weights need topology.matrix");
    Eigen::MatrixXd w(t.m, t.m);
    for (int i = 0; i < t.m; ++i) {
      for (int j = 0; j < t.m; ++j) w(i, j) = t.matrix[i][j];
    }
    return WeightMatrix::FromEntries(w);
  }
  WeightScheme scheme;
  if (t.weights == "metropolis") {
    scheme = WeightScheme::Metropolis();
  } else if (t.weights == "uniform") {
    scheme = WeightScheme::Uniform(t.uniform_a);
  } else {
    throw ConfigError("unknown topology.weights '" + t.weights + "'");
  }
  return t.scale ? build_weight_matrix(g, scheme, *t.scale)
                 : build_weight_matrix_auto(g, scheme);
}

ProjectionSet MakeSet(const RunConfig& cfg, std::size_t dim) {
  const auto& d = cfg.domain;
  if (d.kind == "box") {
    Vector lo = d.lo, hi = d.hi;
    if (lo.size() == 1 && dim > 1) lo.assign(dim, lo[0]);
    if (hi.size() == 1 && dim > 1) hi.assign(dim, hi[0]);
    if (lo.size() != dim || hi.size() != dim) {
      throw ConfigError("domain.lo/hi must have " + std::to_string(dim) + " entries");
    }
    return ProjectionSet::Box(lo, hi);
  }
  Vector c = d.center.empty() ? Vector(dim, 0.0) : d.center;
  if (c.size() != dim) {
    throw ConfigError("domain.center must have " + std::to_string(dim) + " entries");
  }
  return ProjectionSet::Ball(c, d.radius);
}

Loss MakeLoss(const RunConfig& cfg) {
  const auto& p = cfg.problem;
  if (p.loss == LossKind::kRidge) {
    if (!(p.alpha >= 0.0)) throw ConfigError("problem.alpha must be >= 0");
    return Loss::Ridge(p.alpha);
  }
  if (p.r) return Loss::Logistic(*p.r);
  const double n = static_cast<double>(cfg.horizon + 1) * cfg.samples_per_round;
  return Loss::Logistic(p.reg_constant / n);
}

DataBounds MakeBounds(const DataSource& src, const ProjectionSet& set) {
  DataBounds b = src.bounds();
  b.theta_norm2 = set.max_norm2();
  b.theta_norm1 = set.max_norm1();
  b.diameter = set.diameter();
  return b;
}

ProblemConstants MakeConstants(const RunConfig& cfg, const Loss& loss, const DataBounds& b) {
  ProblemConstants pc = derive_constants(loss, b);
  if (cfg.problem.kappa) pc.kappa = *cfg.problem.kappa;
  if (cfg.problem.clip) pc.C = *cfg.problem.clip;
  validate_constants(loss, pc);
  return pc;
}

struct ReplicateResult {
  std::vector<std::vector<double>> dist2;  // [checkpoint][learner]
  std::vector<std::vector<double>> gap;
  std::vector<double> drift;
  std::vector<double> dyn;
  std::vector<std::vector<Vector>> theta;  // replicate 0 only
  std::vector<Vector> optimum;
  std::vector<std::vector<Message>> inbox;
};

ReplicateResult RunReplicate(const Experiment& ex, std::uint64_t r,
                             const std::vector<Round>& cps, const RunOptions& opts) {
  const RunConfig& cfg = ex.cfg;
  const int m = ex.W.size();
  const Round T = cfg.horizon;
  std::vector<Learner> learners;
  learners.reserve(m);
  for (int i = 0; i < m; ++i) learners.push_back(make_learner(ex, r, i));
  ErmOracle oracle(ex.loss, ex.set);
  std::vector<Message> inbox(m);
  for (int i = 0; i < m; ++i) inbox[i] = learners[i].make_broadcast();

  std::set<Round> drift_rounds;
  for (Round t : cps) {
    if (t > 0) drift_rounds.insert(t - 1);
  }
  const bool dynamic = opts.measure && cfg.metrics.dynamic_regret;
  const bool keep = r == 0;
  const bool record = keep && opts.record_inbox.has_value();
  ReplicateResult out;
  std::optional<Vector> warm;
  Vector prev_opt;
  Round prev_round = -1;
  double dyn = 0.0;
  std::size_t ci = 0;
  std::vector<std::vector<Sample>> round_samples(m);
  for (Round t = 0; t <= T; ++t) {
    for (int i = 0; i < m; ++i) {
      round_samples[i].clear();
      for (int k = 0; k < cfg.samples_per_round; ++k) {
        Sample xi = ex.source.draw(cfg.seed, r, i, t, k);
        if (opts.measure) oracle.add(xi);
        if (dynamic) round_samples[i].push_back(xi);
        learners[i].observe(std::move(xi));
      }
    }
    const bool is_cp = ci < cps.size() && cps[ci] == t;
    if (opts.measure && (is_cp || drift_rounds.count(t) || dynamic)) {
      Vector opt = oracle.solve(warm ? &*warm : nullptr);
      warm = opt;
      if (dynamic) {
        for (int i = 0; i < m; ++i) {
          for (const Sample& xi : round_samples[i]) {
            dyn += loss_value(ex.loss, learners[i].theta(), xi) - loss_value(ex.loss, opt, xi);
          }
        }
      }
      if (is_cp) {
        std::vector<double> d2(m), gp(m, 0.0);
        const double fstar = cfg.metrics.regret ? oracle.objective(opt) : 0.0;
        for (int i = 0; i < m; ++i) {
          const Vector& th = learners[i].theta();
          double s = 0.0;
          for (std::size_t j = 0; j < th.size(); ++j) s += (th[j] - opt[j]) * (th[j] - opt[j]);
          d2[i] = s;
          if (cfg.metrics.regret) gp[i] = oracle.objective(th) - fstar;
        }
        double drift = 0.0;
        if (prev_round == t - 1 && t > 0) {
          for (std::size_t j = 0; j < opt.size(); ++j) {
            drift += (opt[j] - prev_opt[j]) * (opt[j] - prev_opt[j]);
          }
        }
        out.dist2.push_back(std::move(d2));
        out.gap.push_back(std::move(gp));
        out.drift.push_back(drift);
        out.dyn.push_back(dyn);
        if (keep) {
          std::vector<Vector> th(m);
          for (int i = 0; i < m; ++i) th[i] = learners[i].theta();
          out.theta.push_back(std::move(th));
          out.optimum.push_back(opt);
        }
      }
      if (drift_rounds.count(t)) {
        prev_opt = std::move(opt);
        prev_round = t;
      }
    } else if (is_cp && keep) {
      std::vector<Vector> th(m);
      for (int i = 0; i < m; ++i) th[i] = learners[i].theta();
      out.theta.push_back(std::move(th));
    }
    if (is_cp) ++ci;
    if (t == T) break;
    if (record) {
      std::vector<Message> got;
      for (const auto& [j, w] : ex.W.neighbors(*opts.record_inbox)) got.push_back(inbox[j]);
      out.inbox.push_back(std::move(got));
    }
    const double g = cfg.schedules.gamma(t), l = cfg.schedules.lambda(t);
    for (int i = 0; i < m; ++i) learners[i].update(inbox, g, l);
    for (int i = 0; i < m; ++i) inbox[i] = learners[i].make_broadcast();
  }
  return out;
}

}  // namespace

Experiment build_experiment(const RunConfig& cfg) {
  Graph graph = MakeGraph(cfg);
  if (graph.size() < 1) throw TopologyError("empty graph");
  WeightMatrix W = MakeWeights(cfg, graph);
  DataSource source(cfg.stream, graph.size());
  ProjectionSet set = MakeSet(cfg, source.dim());
  const Loss loss = MakeLoss(cfg);
  if (loss.kind == LossKind::kLogistic && !source.classification()) {
    throw ConfigError("logistic loss needs a classification stream");
  }
  if (loss.kind == LossKind::kRidge && source.classification() &&
      source.spec().kind == StreamKind::kSyntheticLogistic) {
    throw ConfigError("ridge loss needs a regression stream");
  }
  if (loss.kind != LossKind::kRidge && cfg.problem.memory == MemoryEngine::kAffine) {
    throw ConfigError("the affine gradient engine supports ridge only");
  }
  if (loss.kind == LossKind::kLogistic && cfg.metrics.regret &&
      cfg.horizon > cfg.metrics.logistic_horizon_cap) {
    throw ConfigError("logistic regret needs every sample retained; horizon " +
                      std::to_string(cfg.horizon) + " exceeds metrics.logistic_horizon_cap = " +
                      std::to_string(cfg.metrics.logistic_horizon_cap));
  }
  if (static_cast<int>(cfg.noise.per_learner.size()) != graph.size()) {
    throw ConfigError("noise settings must list one entry per learner");
  }
  const DataBounds bounds = MakeBounds(source, set);
  const ProblemConstants pc = MakeConstants(cfg, loss, bounds);
  return Experiment{cfg, std::move(graph), std::move(W), std::move(source), std::move(set),
                    loss, bounds, pc};
}

TheoryInputs theory_inputs(const Experiment& ex) {
  TheoryInputs in;
  in.pc = ex.pc;
  in.delta2 = ex.W.delta2();
  in.deltaN = ex.W.deltaN();
  in.m = ex.W.size();
  in.noise_enabled = ex.cfg.noise.enabled;
  in.varsigma_min = INFINITY;
  for (const auto& n : ex.cfg.noise.per_learner) {
    in.sigma_max = std::max(in.sigma_max, n.sigma);
    in.varsigma_max = std::max(in.varsigma_max, n.varsigma);
    in.varsigma_min = std::min(in.varsigma_min, n.varsigma);
  }
  in.init_error = in.m * ex.pc.D0 * ex.pc.D0;
  return in;
}

CheckResult check_experiment(const Experiment& ex) {
  return check_regime(theory_inputs(ex), ex.cfg.schedules);
}

AccountantParams accountant_params(const Experiment& ex, int learner) {
  AccountantParams p;
  p.wbar = ex.W.wbar();
  p.C = ex.pc.C;
  p.L = ex.pc.L;
  p.dim = ex.set.dim();
  p.noise = ex.cfg.noise.per_learner.at(learner);
  return p;
}

std::vector<Round> checkpoint_rounds(Round T, int per_octave, const std::vector<Round>& extra) {
  std::set<Round> s{0, T};
  for (int k = 0;; ++k) {
    const double v = std::pow(2.0, static_cast<double>(k) / per_octave);
    const Round t = std::llround(v);
    if (t > T) break;
    s.insert(t);
  }
  for (Round t : extra) {
    if (t >= 0 && t <= T) s.insert(t);
  }
  return {s.begin(), s.end()};
}

Learner make_learner(const Experiment& ex, std::uint64_t replicate, int i) {
  LearnerOptions o;
  o.id = i;
  o.neighbors = ex.W.neighbors(i);
  o.noise = ex.cfg.noise.per_learner.at(i);
  o.noise_enabled = ex.cfg.noise.enabled;
  o.seed = ex.cfg.seed;
  o.replicate = replicate;
  CounterStream rng({ex.cfg.seed, replicate, static_cast<std::uint64_t>(i), 0, Purpose::kInit});
  Vector theta0 = ex.set.sample_uniform(rng);
  GradientMemory mem(ex.cfg.problem.memory, ex.set.dim(), ex.loss, ex.pc.C, ex.bounds);
  return Learner(std::move(o), std::move(theta0), std::move(mem), ex.set);
}

RunTrace run(const Experiment& ex, const RunOptions& opts) {
  const RunConfig& cfg = ex.cfg;
  const int m = ex.W.size();
  RunTrace trace;
  trace.config_hash = config_hash(cfg);
  trace.seed = cfg.seed;
  trace.replicates = cfg.replicates;
  trace.horizon = cfg.horizon;
  trace.check = check_experiment(ex);
  const auto cps = checkpoint_rounds(cfg.horizon, cfg.metrics.per_octave,
                                     cfg.metrics.extra_checkpoints);
  if (cfg.noise.enabled) {
    for (int i = 0; i < m; ++i) {
      trace.budget.push_back(budget_bound(accountant_params(ex, i), cfg.schedules, cps));
    }
  }

  std::vector<ReplicateResult> results(cfg.replicates);
  int threads = opts.threads.value_or(cfg.threads);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, cfg.replicates);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int r; (r = next.fetch_add(1)) < cfg.replicates;) {
      try {
        results[r] = RunReplicate(ex, static_cast<std::uint64_t>(r), cps, opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(cfg.replicates);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  trace.inbox = std::move(results[0].inbox);
  for (std::size_t c = 0; c < cps.size(); ++c) {
    Checkpoint cp;
    cp.t = cps[c];
    if (opts.measure) {
      std::vector<std::vector<double>> d2, gp;
      double drift = 0.0, dyn = 0.0;
      for (const auto& res : results) {
        d2.push_back(res.dist2[c]);
        gp.push_back(res.gap[c]);
        drift += res.drift[c];
        dyn += res.dyn[c];
      }
      cp.V = max_of_means(d2);
      cp.R = max_of_means(gp);
      cp.drift = drift / cfg.replicates;
      cp.dynamic_regret = dyn / cfg.replicates;
      cp.per_learner_V.assign(m, 0.0);
      cp.per_learner_R.assign(m, 0.0);
      for (int i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < d2.size(); ++r) {
          cp.per_learner_V[i] += d2[r][i] / cfg.replicates;
          cp.per_learner_R[i] += gp[r][i] / cfg.replicates;
        }
      }
      cp.optimum = results[0].optimum[c];
    }
    cp.theta = results[0].theta[c];
    for (const auto& b : trace.budget) {
      cp.eps.push_back(b.eps[c]);
      cp.eps_rho.push_back(b.eps_rho[c]);
    }
    trace.checkpoints.push_back(std::move(cp));
  }
  return trace;
}

}  // namespace ldpol
