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

#include "ldpol/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ldpol/error.hpp"

namespace ldpol {

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto '" + path + "': " + ec.message());
  }
}

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["violations"] = r.violations;
  j["warnings"] = r.warnings;
  nlohmann::json cert;
  cert["beta"] = finite_or_null(r.certificate.beta);
  cert["beta_regret"] = finite_or_null(r.certificate.beta_regret);
  cert["t0"] = r.certificate.t0;
  nlohmann::json consts = nlohmann::json::object();
  for (const auto& [k, v] : r.certificate.constants) consts[k] = finite_or_null(v);
  cert["constants"] = consts;
  j["certificate"] = cert;
  return j;
}

nlohmann::json to_json(const BudgetReport& b, const NoiseSchedule& noise) {
  nlohmann::json j;
  j["sigma"] = noise.sigma;
  j["varsigma"] = noise.varsigma;
  nlohmann::json by = nlohmann::json::array();
  for (std::size_t k = 0; k < b.horizons.size(); ++k) {
    by.push_back({{"t", b.horizons[k]},
                  {"eps", finite_or_null(b.eps[k])},
                  {"eps_rho", finite_or_null(b.eps_rho[k])}});
  }
  j["eps_partial_by_checkpoint"] = by;
  j["tail_exponent"] = b.exponent;
  j["tail_estimate"] = finite_or_null(b.tail_estimate);
  j["warnings"] = b.warnings;
  return j;
}

nlohmann::json spectrum_json(const WeightMatrix& W) {
  nlohmann::json j;
  j["m"] = W.size();
  j["delta2"] = W.delta2();
  j["deltaN"] = W.deltaN();
  j["contraction_norm"] = W.contraction_norm();
  j["wbar"] = W.wbar();
  std::vector<double> eig(W.eigenvalues().data(), W.eigenvalues().data() + W.eigenvalues().size());
  j["eigenvalues"] = eig;
  return j;
}

nlohmann::json constants_json(const ProblemConstants& pc) {
  return {{"mu", pc.mu}, {"L", pc.L}, {"D", pc.D},
          {"kappa", pc.kappa}, {"C", pc.C}, {"D0", pc.D0}};
}

TraceFits fit_trace(const RunTrace& trace, double lo, double hi) {
  TraceFits f;
  f.lo = lo;
  f.hi = hi;
  std::vector<double> t, v, r, tr;
  for (const auto& cp : trace.checkpoints) {
    if (cp.t < lo || cp.t > hi) continue;
    if (cp.V > 0.0) {
      t.push_back(static_cast<double>(cp.t));
      v.push_back(cp.V);
    }
    if (cp.R > 0.0) {
      tr.push_back(static_cast<double>(cp.t));
      r.push_back(cp.R);
    }
  }
  if (t.size() >= 5) f.V = rate_fit(t, v, lo, hi);
  if (tr.size() >= 5) f.R = rate_fit(tr, r, lo, hi);
  return f;
}

std::string trace_csv(const RunTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t m = trace.checkpoints.empty() ? 0 : trace.checkpoints.front().eps.size();
  os << "t,V,R";
  for (std::size_t i = 0; i < m; ++i) os << ",eps_" << i;
  os << ",drift,dynamic_regret\n";
  for (const auto& cp : trace.checkpoints) {
    os << cp.t << ',' << cp.V << ',' << cp.R;
    for (double e : cp.eps) os << ',' << e;
    os << ',' << cp.drift << ',' << cp.dynamic_regret << '\n';
  }
  return os.str();
}

nlohmann::json trace_json(const RunTrace& trace, const Experiment& ex) {
  nlohmann::json j;
  j["name"] = ex.cfg.name;
  j["config_hash"] = trace.config_hash;
  j["seed"] = trace.seed;
  j["replicates"] = trace.replicates;
  j["horizon"] = trace.horizon;
  j["spectrum"] = spectrum_json(ex.W);
  j["constants"] = constants_json(ex.pc);
  j["check"] = to_json(trace.check);
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : trace.checkpoints) {
    nlohmann::json c;
    c["t"] = cp.t;
    c["V"] = cp.V;
    c["R"] = cp.R;
    c["drift"] = cp.drift;
    if (ex.cfg.metrics.dynamic_regret) c["dynamic_regret"] = cp.dynamic_regret;
    c["eps"] = cp.eps;
    c["eps_rho"] = cp.eps_rho;
    c["per_learner_V"] = cp.per_learner_V;
    c["per_learner_R"] = cp.per_learner_R;
    c["theta"] = cp.theta;
    c["optimum"] = cp.optimum;
    cps.push_back(std::move(c));
  }
  j["checkpoints"] = cps;
  const double hi = static_cast<double>(trace.horizon);
  const TraceFits fits = fit_trace(trace, std::max(1.0, hi / 100.0), hi);
  nlohmann::json rf;
  rf["window"] = {fits.lo, fits.hi};
  auto fit_json = [](const std::optional<RateFit>& f) {
    if (!f) return nlohmann::json(nullptr);
    return nlohmann::json{{"slope", f->slope},
                          {"halfwidth", f->halfwidth},
                          {"intercept", f->intercept},
                          {"points", f->points}};
  };
  rf["V"] = fit_json(fits.V);
  rf["R"] = fit_json(fits.R);
  rf["predicted_beta"] = finite_or_null(trace.check.certificate.beta);
  rf["predicted_beta_regret"] = finite_or_null(trace.check.certificate.beta_regret);
  j["rate_fits"] = rf;
  nlohmann::json budget = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.budget.size(); ++i) {
    budget.push_back(to_json(trace.budget[i], ex.cfg.noise.per_learner[i]));
  }
  j["budget"] = budget;
  return j;
}

}  // namespace ldpol
