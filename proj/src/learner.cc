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

#include "ldpol/learner.hpp"

#include <cmath>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {

void local_update(VecMut theta, std::span<const WeightedMessage> msgs, VecView d,
                  double gamma, double lambda, const ProjectionSet& set) {
  const std::size_t n = theta.size();
  if (d.size() != n) throw DimensionError("gradient and parameter sizes differ");
  Vector next(theta.begin(), theta.end());
  for (const WeightedMessage& m : msgs) {
    if (!(m.weight > 0.0) || !std::isfinite(m.weight)) {
      throw ConfigError("neighbor weight must be positive and finite");
    }
    if (m.value.size() != n) throw DimensionError("message and parameter sizes differ");
    const double a = gamma * m.weight;
    kernels::axpy(a, m.value, next);
    kernels::axpy(-a, VecView(theta.data(), n), next);
  }
  kernels::axpy(-lambda, d, next);
  set.project(VecMut(next));
  std::copy(next.begin(), next.end(), theta.begin());
}

Learner::Learner(LearnerOptions opts, Vector theta0, GradientMemory memory,
                 ProjectionSet set)
    : opts_(std::move(opts)),
      theta_(std::move(theta0)),
      memory_(std::move(memory)),
      set_(std::move(set)),
      d_(theta_.size(), 0.0) {
  if (theta_.size() != set_.dim()) throw DimensionError("theta0 and parameter set differ");
  if (!set_.contains(theta_)) throw ConfigError("theta0 lies outside the parameter set");
}

void Learner::reset_theta(Vector theta) {
  if (theta.size() != theta_.size()) throw DimensionError("reset_theta dimension");
  theta_ = std::move(theta);
}

void Learner::observe(Sample xi) { memory_.append(std::move(xi)); }

void Learner::update(std::span<const Message> inbox, double gamma, double lambda) {
  scratch_.clear();
  for (const auto& [j, w] : opts_.neighbors) {
    const Message* found = nullptr;
    for (const Message& m : inbox) {
      if (m.from == j) {
        found = &m;
        break;
      }
    }
    if (found == nullptr) {
      throw Error("learner " + std::to_string(opts_.id) + " has no message from neighbor " +
                  std::to_string(j) + " at round " + std::to_string(round_));
    }
    if (found->round != round_) {
      throw Error("learner " + std::to_string(opts_.id) + " got a round-" +
                  std::to_string(found->round) + " message from " + std::to_string(j) +
                  " during round " + std::to_string(round_));
    }
    scratch_.push_back({w, found->value});
  }
  memory_.average_gradient(theta_, d_);
  local_update(theta_, scratch_, d_, gamma, lambda, set_);
  for (double x : theta_) {
    if (!std::isfinite(x)) {
      throw DivergenceError("non-finite parameter", static_cast<long>(round_), opts_.id);
    }
  }
  ++round_;
}

Message Learner::make_broadcast() const {
  Message m{opts_.id, round_, theta_};
  if (!opts_.noise_enabled) return m;
  CounterStream rng({opts_.seed, opts_.replicate, static_cast<std::uint64_t>(opts_.id),
                     static_cast<std::uint64_t>(round_), Purpose::kNoise});
  Vector z(theta_.size());
  sample_laplace_into(noise_scale(opts_.noise, round_).nu_t, rng, z);
  kernels::axpy(1.0, z, m.value);
  return m;
}

}  // namespace ldpol
