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

#include "ldpol/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ldpol/error.hpp"

namespace ldpol {
namespace {

void CheckKeys(const YAML::Node& node, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError("'" + where + "' must be a table");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
T Get(const YAML::Node& node, const std::string& key, const std::string& where, T def) {
  const YAML::Node v = node[key];
  if (!v) return def;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + where + "." + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> GetAuto(const YAML::Node& node, const std::string& key,
                         const std::string& where) {
  const YAML::Node v = node[key];
  if (!v || (v.IsScalar() && v.Scalar() == "auto")) return std::nullopt;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + where + "." + key + "' must be a number or 'auto'");
  }
}

// Scalar broadcast to m entries, or a list of length m.
std::vector<double> PerLearner(const YAML::Node& v, int m, const std::string& what) {
  std::vector<double> out;
  try {
    if (v.IsScalar()) {
      out.assign(m, v.as<double>());
    } else if (v.IsSequence()) {
      out = v.as<std::vector<double>>();
    } else if (v.IsMap()) {
      CheckKeys(v, what, {"base", "step"});
      const double base = v["base"].as<double>();
      const double step = v["step"] ? v["step"].as<double>() : 0.0;
      for (int i = 0; i < m; ++i) out.push_back(base + step * (i + 1));
    }
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + what + "' must be a number, a list or {base, step}");
  }
  if (out.size() != static_cast<std::size_t>(m)) {
    throw ConfigError("'" + what + "' has " + std::to_string(out.size()) +
                      " entries for m = " + std::to_string(m) + " learners");
  }
  return out;
}

void SetPath(YAML::Node node, const std::vector<std::string>& keys, std::size_t i,
             const YAML::Node& value) {
  if (i + 1 == keys.size()) {
    node[keys[i]] = value;
    return;
  }
  if (node[keys[i]] && !node[keys[i]].IsMap()) {
    throw ConfigError("override path '" + keys[i] + "' is not a table");
  }
  if (!node[keys[i]]) node[keys[i]] = YAML::Node(YAML::NodeType::Map);
  SetPath(node[keys[i]], keys, i + 1, value);
}

YAML::Node LoadText(const std::string& text) {
  try {
    YAML::Node root = YAML::Load(text);
    if (!root) root = YAML::Node(YAML::NodeType::Map);
    return root;
  } catch (const YAML::ParserException& e) {
    throw ParseError(std::string("config syntax: ") + e.what(), e.mark.line + 1);
  }
}

}  // namespace

void apply_override(YAML::Node& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  std::vector<std::string> keys;
  std::stringstream ks(assignment.substr(0, eq));
  for (std::string k; std::getline(ks, k, '.');) {
    if (k.empty()) throw ConfigError("override '" + assignment + "' has an empty key");
    keys.push_back(k);
  }
  YAML::Node value;
  try {
    value = YAML::Load(assignment.substr(eq + 1));
  } catch (const YAML::Exception&) {
    throw ConfigError("override value in '" + assignment + "' does not parse");
  }
  SetPath(root, keys, 0, value);
}

RunConfig parse_config(const YAML::Node& root, const std::string& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  c.tree = YAML::Clone(root);
  CheckKeys(root, "", {"name", "seed", "horizon", "replicates", "threads", "topology",
                       "problem", "domain", "stream", "schedules", "noise", "metrics",
                       "output"});
  c.name = Get<std::string>(root, "name", "", c.name);
  c.seed = Get<std::uint64_t>(root, "seed", "", c.seed);
  c.horizon = Get<Round>(root, "horizon", "", c.horizon);
  c.replicates = Get<int>(root, "replicates", "", c.replicates);
  c.threads = Get<int>(root, "threads", "", c.threads);
  if (c.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (c.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (c.threads < 0) throw ConfigError("threads must be >= 0");

  const YAML::Node topo = root["topology"];
  CheckKeys(topo, "topology",
            {"graph", "m", "p", "edges", "weights", "uniform_a", "scale", "matrix"});
  if (topo) {
    auto& t = c.topology;
    t.graph = Get<std::string>(topo, "graph", "topology", t.graph);
    t.m = Get<int>(topo, "m", "topology", t.m);
    t.p = Get<double>(topo, "p", "topology", t.p);
    t.weights = Get<std::string>(topo, "weights", "topology", t.weights);
    t.uniform_a = Get<double>(topo, "uniform_a", "topology", t.uniform_a);
    t.scale = GetAuto<double>(topo, "scale", "topology");
    if (topo["edges"]) {
      for (const auto& e : Get<std::vector<std::vector<int>>>(topo, "edges", "topology", {})) {
        if (e.size() != 2) throw ConfigError("topology.edges entries must be pairs");
        t.edges.emplace_back(e[0], e[1]);
      }
    }
    t.matrix = Get<std::vector<std::vector<double>>>(topo, "matrix", "topology", {});
    if (!t.matrix.empty()) t.m = static_cast<int>(t.matrix.size());
  }
  const int m = c.topology.m;
  if (m < 1) throw ConfigError("topology.m must be >= 1");

  const YAML::Node prob = root["problem"];
  CheckKeys(prob, "problem", {"loss", "alpha", "reg_constant", "r", "kappa", "C", "memory"});
  if (prob) {
    auto& p = c.problem;
    const auto loss = Get<std::string>(prob, "loss", "problem", "ridge");
    if (loss == "ridge") {
      p.loss = LossKind::kRidge;
    } else if (loss == "logistic") {
      p.loss = LossKind::kLogistic;
    } else {
      throw ConfigError("problem.loss must be ridge or logistic");
    }
    p.alpha = Get<double>(prob, "alpha", "problem", p.alpha);
    p.reg_constant = Get<double>(prob, "reg_constant", "problem", p.reg_constant);
    p.r = GetAuto<double>(prob, "r", "problem");
    p.kappa = GetAuto<double>(prob, "kappa", "problem");
    p.clip = GetAuto<double>(prob, "C", "problem");
    p.memory = parse_memory_engine(
        Get<std::string>(prob, "memory", "problem", to_string(p.memory)));
  }

  const YAML::Node dom = root["domain"];
  CheckKeys(dom, "domain", {"kind", "center", "radius", "lo", "hi"});
  if (dom) {
    auto& d = c.domain;
    d.kind = Get<std::string>(dom, "kind", "domain", d.kind);
    d.center = Get<Vector>(dom, "center", "domain", {});
    d.radius = Get<double>(dom, "radius", "domain", d.radius);
    d.lo = Get<Vector>(dom, "lo", "domain", {});
    d.hi = Get<Vector>(dom, "hi", "domain", {});
    if (d.kind != "ball" && d.kind != "box") throw ConfigError("domain.kind must be ball or box");
  }

  const YAML::Node st = root["stream"];
  CheckKeys(st, "stream", {"kind", "theta_true", "feature_bound", "label_noise", "noise_trunc",
                           "path", "label_map", "scale01", "dim", "samples_per_round"});
  if (st) {
    auto& s = c.stream;
    s.kind = parse_stream_kind(Get<std::string>(st, "kind", "stream", to_string(s.kind)));
    s.theta_true = Get<Vector>(st, "theta_true", "stream", {});
    s.feature_bound = Get<double>(st, "feature_bound", "stream", s.feature_bound);
    s.label_noise = Get<double>(st, "label_noise", "stream", s.label_noise);
    s.noise_trunc = Get<double>(st, "noise_trunc", "stream", s.noise_trunc);
    s.path = Get<std::string>(st, "path", "stream", "");
    if (!s.path.empty() && std::filesystem::path(s.path).is_relative()) {
      s.path = (std::filesystem::path(base_dir) / s.path).string();
    }
    s.svmlight.scale01 = Get<bool>(st, "scale01", "stream", false);
    s.svmlight.dim = Get<std::size_t>(st, "dim", "stream", 0);
    if (st["label_map"]) {
      try {
        s.svmlight.label_map = st["label_map"].as<std::map<double, double>>();
      } catch (const YAML::Exception&) {
        throw ConfigError("'stream.label_map' must map numbers to numbers");
      }
    }
    c.samples_per_round = Get<int>(st, "samples_per_round", "stream", 1);
    if (c.samples_per_round < 1 || c.samples_per_round > 1024) {
      throw ConfigError("stream.samples_per_round must be in [1, 1024]");
    }
  }

  const YAML::Node sch = root["schedules"];
  CheckKeys(sch, "schedules", {"regime", "gamma0", "u", "lambda0", "v"});
  if (sch) {
    auto& s = c.schedules;
    s.regime = parse_regime(Get<std::string>(sch, "regime", "schedules", to_string(s.regime)));
    s.gamma0 = Get<double>(sch, "gamma0", "schedules", s.gamma0);
    s.u = Get<double>(sch, "u", "schedules", s.u);
    s.lambda0 = Get<double>(sch, "lambda0", "schedules", s.lambda0);
    s.v = Get<double>(sch, "v", "schedules", s.v);
  }
  if (!(c.schedules.gamma0 > 0.0) || !(c.schedules.lambda0 > 0.0)) {
    throw ConfigError("schedules.gamma0 and schedules.lambda0 must be positive");
  }
  if (!(c.schedules.u >= 0.0 && c.schedules.u < 1.0) ||
      !(c.schedules.v > 0.0 && c.schedules.v < 1.0)) {
    throw ConfigError("schedule exponents must satisfy 0 <= u < 1 and 0 < v < 1");
  }

  const YAML::Node nz = root["noise"];
  CheckKeys(nz, "noise", {"enabled", "sigma", "varsigma"});
  c.noise.enabled = nz ? Get<bool>(nz, "enabled", "noise", true) : true;
  {
    const auto sig = nz && nz["sigma"] ? PerLearner(nz["sigma"], m, "noise.sigma")
                                       : std::vector<double>(m, 2.0);
    const auto vs = nz && nz["varsigma"] ? PerLearner(nz["varsigma"], m, "noise.varsigma")
                                         : std::vector<double>(m, 0.1);
    for (int i = 0; i < m; ++i) {
      if (!(sig[i] > 0.0)) throw ConfigError("noise.sigma entries must be positive");
      if (!(vs[i] >= 0.0)) throw ConfigError("noise.varsigma entries must be nonnegative");
      c.noise.per_learner.push_back({sig[i], vs[i]});
    }
  }

  const YAML::Node met = root["metrics"];
  CheckKeys(met, "metrics", {"per_octave", "extra_checkpoints", "regret", "dynamic_regret",
                             "logistic_horizon_cap"});
  if (met) {
    auto& mc = c.metrics;
    mc.per_octave = Get<int>(met, "per_octave", "metrics", mc.per_octave);
    mc.extra_checkpoints =
        Get<std::vector<Round>>(met, "extra_checkpoints", "metrics", {});
    mc.regret = Get<bool>(met, "regret", "metrics", mc.regret);
    mc.dynamic_regret = Get<bool>(met, "dynamic_regret", "metrics", mc.dynamic_regret);
    mc.logistic_horizon_cap =
        Get<Round>(met, "logistic_horizon_cap", "metrics", mc.logistic_horizon_cap);
  }
  if (c.metrics.per_octave < 1) throw ConfigError("metrics.per_octave must be >= 1");
  for (Round t : c.metrics.extra_checkpoints) {
    if (t < 0 || t > c.horizon) {
      throw ConfigError("checkpoint " + std::to_string(t) + " outside [0, horizon]");
    }
  }

  const YAML::Node out = root["output"];
  CheckKeys(out, "output", {"dir"});
  if (out) c.output_dir = Get<std::string>(out, "dir", "output", c.output_dir);
  return c;
}

RunConfig load_config_string(const std::string& text,
                             const std::vector<std::string>& overrides) {
  YAML::Node root = LoadText(text);
  for (const auto& o : overrides) apply_override(root, o);
  return parse_config(root, ".");
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  YAML::Node root = LoadText(ss.str());
  for (const auto& o : overrides) apply_override(root, o);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(root, dir.empty() ? "." : dir.string());
}

std::string canonical_text(const RunConfig& cfg) {
  YAML::Node tree = YAML::Clone(cfg.tree);
  if (tree.IsMap()) tree.remove("output");
  YAML::Emitter e;
  e << tree;
  return e.c_str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ldpol
