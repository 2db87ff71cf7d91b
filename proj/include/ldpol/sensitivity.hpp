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

#ifndef LDPOL_SENSITIVITY_HPP_
#define LDPOL_SENSITIVITY_HPP_

#include <vector>

#include "ldpol/learner.hpp"
#include "ldpol/simulator.hpp"

namespace ldpol {

// Samples learner i consumes in replicate r, rounds 0..T-1, in arrival order.
std::vector<Sample> learner_dataset(const Experiment& ex, std::uint64_t replicate, int learner);

// Copy of `data` with entry k replaced by an independent draw.
std::vector<Sample> adjacent_dataset(const Experiment& ex, const std::vector<Sample>& data,
                                     std::size_t k, std::uint64_t replicate, int learner);

struct SensitivityResult {
  long k = -1;                 // differing entry, -1 if the datasets agree
  std::vector<double> trace;   // ||theta_t - theta'_t||_1, t = 0..T
  std::vector<double> bound;   // recursion for this k, t = 0..T
  bool sound = true;           // trace <= bound at every round
  double max_ratio = 0.0;      // max trace / bound over rounds with bound > 0
};

// Replays learner i of replicate 0 on `data` and on `adjacent`, feeding both
// the messages it received in the recorded run. Throws Error if the datasets
// differ in more than one entry or have the wrong length, and ConfigError if
// the parameter set is a ball in more than one dimension (the projection is
// then not 1-norm nonexpansive).
SensitivityResult empirical_sensitivity(const Experiment& ex, int learner,
                                        const std::vector<std::vector<Message>>& inbox,
                                        const std::vector<Sample>& data,
                                        const std::vector<Sample>& adjacent);

}  // namespace ldpol

#endif  // LDPOL_SENSITIVITY_HPP_
