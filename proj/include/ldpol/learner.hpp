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

#ifndef LDPOL_LEARNER_HPP_
#define LDPOL_LEARNER_HPP_

#include <span>
#include <utility>
#include <vector>

#include "ldpol/common.hpp"
#include "ldpol/gradient_memory.hpp"
#include "ldpol/privacy.hpp"
#include "ldpol/projection.hpp"
#include "ldpol/rng.hpp"

namespace ldpol {

// Noisy parameter broadcast by learner `from` at round `round`:
// theta_round + zeta_round.
struct Message {
  int from = -1;
  Round round = 0;
  Vector value;
};

struct WeightedMessage {
  double weight;
  VecView value;
};

// theta_hat = theta + gamma sum_j w_ij (msg_j - theta) - lambda d, then
// theta <- Proj(theta_hat). Throws ConfigError on a nonpositive or
// non-finite weight and DimensionError on mismatched sizes.
void local_update(VecMut theta, std::span<const WeightedMessage> msgs, VecView d,
                  double gamma, double lambda, const ProjectionSet& set);

struct LearnerOptions {
  int id = 0;
  // (j, w_ij) for the neighbors of this learner.
  std::vector<std::pair<int, double>> neighbors;
  NoiseSchedule noise;
  bool noise_enabled = true;
  // Noise streams use key {seed, replicate, id, round, kNoise}.
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

// One learner of the protocol. Each round: observe(xi_t), update(inbox of
// round-t messages), make_broadcast(t + 1). The clean parameter is readable
// for measurement but never enters another learner's update.
class Learner {
 public:
  Learner(LearnerOptions opts, Vector theta0, GradientMemory memory,
          ProjectionSet set);

  int id() const { return opts_.id; }
  const Vector& theta() const { return theta_; }
  void reset_theta(Vector theta);
  Round round() const { return round_; }
  const LearnerOptions& options() const { return opts_; }

  void observe(Sample xi);

  // Consumes exactly one round-t message from every neighbor (other
  // messages are ignored). Throws Error if a neighbor message is missing or
  // stale, and DivergenceError on a non-finite result.
  void update(std::span<const Message> inbox, double gamma, double lambda);

  // theta_t + Laplace(nu_t) noise with t = round().
  Message make_broadcast() const;

  // Last d_t computed by update().
  const Vector& last_gradient() const { return d_; }

 private:
  LearnerOptions opts_;
  Vector theta_;
  GradientMemory memory_;
  ProjectionSet set_;
  Round round_ = 0;
  Vector d_;
  std::vector<WeightedMessage> scratch_;
};

}  // namespace ldpol

#endif  // LDPOL_LEARNER_HPP_
