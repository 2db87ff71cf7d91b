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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldpol/config.hpp"
#include "ldpol/error.hpp"
#include "ldpol/report.hpp"
#include "ldpol/sensitivity.hpp"
#include "ldpol/simulator.hpp"

namespace ldpol::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Failures before anything runs: bad config, topology or constants.
struct Structural : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<long long> horizon;
  std::optional<int> replicates;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
};

void AddCommon(CLI::App* app, Common& c, bool run_flags) {
  app->add_option("config", c.path, "run-config file")->required();
  if (run_flags) {
    app->add_option("--seed", c.seed, "global seed");
    app->add_option("--horizon", c.horizon, "number of rounds T");
    app->add_option("--replicates", c.replicates, "Monte Carlo replicates");
    app->add_option("--threads", c.threads, "worker threads (0: all cores)");
    app->add_option("--out", c.out_dir, "output directory");
  }
  app->add_option("overrides", c.overrides, "dotted key=value overrides");
}

Experiment Load(const Common& c, std::vector<std::string> extra = {}) {
  std::vector<std::string> ov = c.overrides;
  if (c.seed) ov.push_back("seed=" + std::to_string(*c.seed));
  if (c.horizon) ov.push_back("horizon=" + std::to_string(*c.horizon));
  if (c.replicates) ov.push_back("replicates=" + std::to_string(*c.replicates));
  if (c.threads) ov.push_back("threads=" + std::to_string(*c.threads));
  if (c.out_dir) ov.push_back("output.dir=\"" + *c.out_dir + "\"");
  ov.insert(ov.end(), extra.begin(), extra.end());
  try {
    return build_experiment(load_config(c.path, ov));
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    for (const auto& clause : e.clauses()) msg += "\n  violated: " + clause;
    throw Structural(msg);
  } catch (const ScalingError& e) {
    throw Structural(std::string(e.what()) +
                     " (suggested topology.scale = " + std::to_string(e.suggested_scale()) + ")");
  } catch (const Error& e) {
    throw Structural(e.what());
  }
}

json ValidationJson(const Experiment& ex, const CheckResult& r) {
  json j;
  j["name"] = ex.cfg.name;
  j["config_hash"] = config_hash(ex.cfg);
  j["regime"] = to_string(ex.cfg.schedules.regime);
  j["spectrum"] = spectrum_json(ex.W);
  j["constants"] = constants_json(ex.pc);
  j["check"] = to_json(r);
  return j;
}

void WriteOutputs(const Experiment& ex, const RunTrace& trace, const std::string& stem) {
  const fs::path dir(ex.cfg.output_dir);
  write_atomic((dir / (stem + ".csv")).string(), trace_csv(trace));
  write_atomic((dir / (stem + ".json")).string(), trace_json(trace, ex).dump(2) + "\n");
}

json Summary(const RunTrace& trace) {
  json j;
  const auto& last = trace.checkpoints.back();
  j["t"] = last.t;
  j["V"] = last.V;
  j["R"] = last.R;
  j["eps"] = last.eps;
  const double hi = static_cast<double>(trace.horizon);
  const TraceFits f = fit_trace(trace, std::max(1.0, hi / 100.0), hi);
  j["V_slope"] = f.V ? json(f.V->slope) : json(nullptr);
  j["R_slope"] = f.R ? json(f.R->slope) : json(nullptr);
  return j;
}

int CmdValidate(const Common& c, bool strict, std::ostream& out) {
  const Experiment ex = Load(c);
  const CheckResult r = check_experiment(ex);
  out << ValidationJson(ex, r).dump(2) << "\n";
  return strict && !r.ok ? kExitValidation : kExitOk;
}

int CmdRun(const Common& c, bool dry_run, std::ostream& out) {
  const Experiment ex = Load(c);
  const CheckResult r = check_experiment(ex);
  if (dry_run) {
    const Experiment smoke =
        Load(c, {"horizon=10", "replicates=1", "metrics.extra_checkpoints=[]"});
    const RunTrace trace = run(smoke);
    json j = ValidationJson(ex, r);
    j["smoke"] = Summary(trace);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  const RunTrace trace = run(ex);
  WriteOutputs(ex, trace, ex.cfg.name);
  json j = Summary(trace);
  j["config_hash"] = trace.config_hash;
  j["outputs"] = {(fs::path(ex.cfg.output_dir) / (ex.cfg.name + ".csv")).string(),
                  (fs::path(ex.cfg.output_dir) / (ex.cfg.name + ".json")).string()};
  out << j.dump(2) << "\n";
  return kExitOk;
}

// "key=v1,v2,..." -> (key, values)
std::pair<std::string, std::vector<std::string>> ParseGrid(const std::string& g) {
  const auto eq = g.find('=');
  if (eq == std::string::npos || eq == 0) throw Structural("grid '" + g + "' is not key=v1,v2");
  std::vector<std::string> vals;
  std::stringstream ss(g.substr(eq + 1));
  for (std::string v; std::getline(ss, v, ',');) {
    if (!v.empty()) vals.push_back(v);
  }
  if (vals.empty()) throw Structural("grid '" + g + "' has no values");
  return {g.substr(0, eq), vals};
}

int CmdSweep(const Common& c, const std::vector<std::string>& grids, std::ostream& out) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& g : grids) axes.push_back(ParseGrid(g));
  std::vector<std::vector<std::string>> points{{}};
  for (const auto& [key, vals] : axes) {
    std::vector<std::vector<std::string>> next;
    for (const auto& p : points) {
      for (const auto& v : vals) {
        auto q = p;
        q.push_back(key + "=" + v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  std::vector<Experiment> exps;
  for (const auto& p : points) exps.push_back(Load(c, p));

  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int workers = std::min<int>(hw, static_cast<int>(points.size()));
  const int per_run = std::max(1, hw / workers);
  std::vector<std::optional<RunTrace>> traces(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < points.size();) {
      try {
        RunOptions o;
        o.threads = per_run;
        traces[k] = run(exps[k], o);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(points.size());
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream csv;
  csv.precision(17);
  csv << "point";
  for (const auto& a : axes) csv << ',' << a.first;
  csv << ",V_final,R_final,V_slope,R_slope\n";
  json summary = json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::string stem = exps[k].cfg.name + "_" + std::to_string(k);
    WriteOutputs(exps[k], *traces[k], stem);
    const json s = Summary(*traces[k]);
    csv << k;
    for (const auto& a : points[k]) csv << ',' << a.substr(a.find('=') + 1);
    csv << ',' << s["V"].get<double>() << ',' << s["R"].get<double>() << ','
        << (s["V_slope"].is_null() ? std::string("nan") : std::to_string(s["V_slope"].get<double>()))
        << ','
        << (s["R_slope"].is_null() ? std::string("nan") : std::to_string(s["R_slope"].get<double>()))
        << '\n';
    json e = s;
    e["point"] = points[k];
    summary.push_back(e);
  }
  const std::string base = exps.front().cfg.name;
  write_atomic((fs::path(exps.front().cfg.output_dir) / (base + "_sweep.csv")).string(), csv.str());
  out << summary.dump(2) << "\n";
  return kExitOk;
}

int CmdSensitivity(const Common& c, std::vector<long long> ks, int learner, int trials,
                   std::ostream& out) {
  const Experiment ex = Load(c);
  if (learner < 0 || learner >= ex.W.size()) throw Structural("--learner out of range");
  RunOptions o;
  o.record_inbox = learner;
  o.measure = false;
  const Experiment single = Load(c, {"replicates=1"});
  const RunTrace trace = run(single, o);
  const auto data = learner_dataset(single, 0, learner);
  if (ks.empty()) {
    CounterStream rng({single.cfg.seed, 0, static_cast<std::uint64_t>(learner), 0,
                       Purpose::kShuffle});
    std::uniform_int_distribution<long long> pick(0, static_cast<long long>(data.size()) - 1);
    for (int k = 0; k < trials; ++k) ks.push_back(pick(rng));
  }
  json trials_json = json::array();
  bool all_sound = true;
  for (long long k : ks) {
    if (k < 0 || k >= static_cast<long long>(data.size())) {
      throw Structural("differing index " + std::to_string(k) + " outside the dataset");
    }
    const auto adj = adjacent_dataset(single, data, static_cast<std::size_t>(k), 0, learner);
    const SensitivityResult res = empirical_sensitivity(single, learner, trace.inbox, data, adj);
    all_sound = all_sound && res.sound;
    trials_json.push_back({{"k", k},
                           {"sound", res.sound},
                           {"max_ratio", res.max_ratio},
                           {"final_divergence", res.trace.back()},
                           {"final_bound", res.bound.back()},
                           {"trace", res.trace},
                           {"bound", res.bound}});
  }
  json j;
  j["config_hash"] = config_hash(single.cfg);
  j["learner"] = learner;
  j["sound"] = all_sound;
  j["trials"] = trials_json;
  write_atomic((fs::path(single.cfg.output_dir) / (single.cfg.name + "_sensitivity.json")).string(),
               j.dump(2) + "\n");
  json brief = j;
  for (auto& t : brief["trials"]) {
    t.erase("trace");
    t.erase("bound");
  }
  out << brief.dump(2) << "\n";
  return all_sound ? kExitOk : kExitRuntime;
}

int CmdBudget(const Common& c, std::vector<long long> horizons, std::ostream& out) {
  const Experiment ex = Load(c);
  if (horizons.empty()) horizons.push_back(ex.cfg.horizon);
  std::vector<Round> hs(horizons.begin(), horizons.end());
  json learners = json::array();
  for (int i = 0; i < ex.W.size(); ++i) {
    const BudgetReport b = budget_bound(accountant_params(ex, i), ex.cfg.schedules, hs);
    json e = to_json(b, ex.cfg.noise.per_learner[i]);
    e["learner"] = i;
    learners.push_back(e);
  }
  json j;
  j["config_hash"] = config_hash(ex.cfg);
  j["noise_enabled"] = ex.cfg.noise.enabled;
  j["learners"] = learners;
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally differentially private distributed online learning simulator", "ldpol"};
  app.require_subcommand(1);

  Common vc, rc, sc, ec, bc;
  bool strict = false, dry_run = false;
  std::vector<std::string> grids;
  std::vector<long long> ks, horizons;
  int learner = 0, trials = 10;

  auto* validate = app.add_subcommand("validate-config", "check a config and print the rate certificate");
  AddCommon(validate, vc, false);
  validate->add_flag("--strict", strict, "exit 1 when a theorem condition is violated");

  auto* runc = app.add_subcommand("run", "run an experiment and write CSV and JSON traces");
  AddCommon(runc, rc, true);
  runc->add_flag("--dry-run", dry_run, "validate and execute a 10-round smoke run");

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid");
  AddCommon(sweep, sc, true);
  sweep->add_option("--grid", grids, "key=v1,v2,... (repeatable)")->required()->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* sens = app.add_subcommand("sensitivity", "coupled adjacent-dataset runs");
  AddCommon(sens, ec, true);
  sens->add_option("-k,--k", ks, "differing sample index (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sens->add_option("--learner", learner, "learner whose dataset changes");
  sens->add_option("--trials", trials, "random indices when no -k is given");

  auto* budget = app.add_subcommand("budget", "privacy budget partial sums");
  budget->add_option("config", bc.path, "run-config file")->required();
  budget->add_option("horizons", horizons, "horizons T");
  budget->add_option("--override", bc.overrides, "dotted key=value override (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return CmdValidate(vc, strict, out);
    if (runc->parsed()) return CmdRun(rc, dry_run, out);
    if (sweep->parsed()) return CmdSweep(sc, grids, out);
    if (sens->parsed()) return CmdSensitivity(ec, ks, learner, trials, out);
    if (budget->parsed()) return CmdBudget(bc, horizons, out);
  } catch (const Structural& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DivergenceError& e) {
    err << "run failed: " << e.what() << " (round " << e.round() << ", learner " << e.learner()
        << ")\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return main(args, std::cout, std::cerr);
}

}  // namespace ldpol::cli
