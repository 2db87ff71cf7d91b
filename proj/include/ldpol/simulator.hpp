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

#ifndef LDPOL_SIMULATOR_HPP_
#define LDPOL_SIMULATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ldpol/config.hpp"
#include "ldpol/learner.hpp"
#include "ldpol/objectives.hpp"
#include "ldpol/privacy.hpp"
#include "ldpol/projection.hpp"
#include "ldpol/schedules.hpp"
#include "ldpol/streams.hpp"
#include "ldpol/topology.hpp"

namespace ldpol {

// A configuration resolved into the objects a run needs.
struct Experiment {
  RunConfig cfg;
  Graph graph;
  WeightMatrix W;
  DataSource source;
  ProjectionSet set;
  Loss loss;
  DataBounds bounds;
  ProblemConstants pc;
};

// Throws ConfigError, TopologyError, ScalingError or ValidationError on
// structural problems.
Experiment build_experiment(const RunConfig& cfg);

TheoryInputs theory_inputs(const Experiment& ex);
// Theorem conditions for the configured regime.
CheckResult check_experiment(const Experiment& ex);

AccountantParams accountant_params(const Experiment& ex, int learner);

// 0, round(2^{k / per_octave}) up to T, T and the extra checkpoints.
std::vector<Round> checkpoint_rounds(Round T, int per_octave,
                                     const std::vector<Round>& extra);

// Learner i of replicate r, with theta_0 uniform in the parameter set.
Learner make_learner(const Experiment& ex, std::uint64_t replicate, int i);

struct Checkpoint {
  Round t = 0;
  double V = 0.0;
  double R = 0.0;
  double drift = 0.0;                 // mean over replicates of ||theta*_t - theta*_{t-1}||^2
  double dynamic_regret = 0.0;        // mean over replicates, when enabled
  std::vector<double> eps;            // per learner, ledger at t
  std::vector<double> eps_rho;
  std::vector<Vector> theta;          // replicate 0, per learner
  Vector optimum;                     // replicate 0
  std::vector<double> per_learner_V;  // mean over replicates
  std::vector<double> per_learner_R;
};

struct RunTrace {
  std::string config_hash;
  std::uint64_t seed = 0;
  int replicates = 0;
  Round horizon = 0;
  std::vector<Checkpoint> checkpoints;
  CheckResult check;
  std::vector<BudgetReport> budget;  // per learner at the horizon
  // Messages learner `record_inbox` received in replicate 0, per round.
  std::vector<std::vector<Message>> inbox;
};

struct RunOptions {
  std::optional<int> threads;
  std::optional<int> record_inbox;  // learner id
  bool measure = true;
};

// Executes every replicate. Throws DivergenceError on a non-finite parameter.
RunTrace run(const Experiment& ex, const RunOptions& opts = {});

}  // namespace ldpol

#endif  // LDPOL_SIMULATOR_HPP_
