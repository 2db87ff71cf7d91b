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

#ifndef LDPOL_CONFIG_HPP_
#define LDPOL_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "ldpol/gradient_memory.hpp"
#include "ldpol/objectives.hpp"
#include "ldpol/privacy.hpp"
#include "ldpol/schedules.hpp"
#include "ldpol/streams.hpp"

namespace ldpol {

struct TopologyConfig {
  std::string graph = "ring";  // ring | complete | path | erdos_renyi | explicit
  int m = 5;
  double p = 0.5;              // erdos_renyi edge probability
  std::vector<std::pair<int, int>> edges;
  std::string weights = "metropolis";  // metropolis | uniform | explicit
  double uniform_a = 0.0;
  std::optional<double> scale;         // empty: auto
  std::vector<std::vector<double>> matrix;
};

struct ProblemConfig {
  LossKind loss = LossKind::kRidge;
  double alpha = 0.05;                // ridge
  double reg_constant = 1.0;          // logistic: r = reg_constant / N
  std::optional<double> r;            // logistic: explicit r
  std::optional<double> kappa;
  std::optional<double> clip;         // C; empty: worst-case gradient bound
  MemoryEngine memory = MemoryEngine::kReplay;
};

struct DomainConfig {
  std::string kind = "ball";  // ball | box
  Vector center;
  double radius = 1.0;
  Vector lo;
  Vector hi;
};

struct NoiseConfig {
  bool enabled = true;
  std::vector<NoiseSchedule> per_learner;
};

struct MetricsConfig {
  int per_octave = 4;  // geometric checkpoints per doubling
  std::vector<Round> extra_checkpoints;
  bool regret = true;
  bool dynamic_regret = false;
  Round logistic_horizon_cap = 10000;
};

struct RunConfig {
  std::string name = "run";
  std::uint64_t seed = 1;
  Round horizon = 1000;
  int replicates = 20;
  int threads = 0;  // 0: hardware concurrency
  TopologyConfig topology;
  ProblemConfig problem;
  DomainConfig domain;
  StreamSpec stream;
  int samples_per_round = 1;
  Schedules schedules;
  NoiseConfig noise;
  MetricsConfig metrics;
  std::string output_dir = "out";
  std::string base_dir = ".";  // relative paths in the file resolve here

  YAML::Node tree;  // the document after overrides
};

// "a.b.c=value" with value parsed as YAML.
void apply_override(YAML::Node& root, const std::string& assignment);

// Throws ConfigError on unknown keys, wrong types or inconsistent sizes.
RunConfig parse_config(const YAML::Node& root, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});
RunConfig load_config_string(const std::string& text,
                             const std::vector<std::string>& overrides = {});

// Emitted config tree without the output section.
std::string canonical_text(const RunConfig& cfg);
// FNV-1a of canonical_text, hex.
std::string config_hash(const RunConfig& cfg);

}  // namespace ldpol

#endif  // LDPOL_CONFIG_HPP_
