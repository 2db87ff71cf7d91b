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

#include "ldpol/sensitivity.hpp"

#include <cmath>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {
namespace {

bool SameSample(const Sample& a, const Sample& b) { return a.y == b.y && a.x == b.x; }

}  // namespace

std::vector<Sample> learner_dataset(const Experiment& ex, std::uint64_t replicate, int learner) {
  std::vector<Sample> out;
  const int spr = ex.cfg.samples_per_round;
  out.reserve(static_cast<std::size_t>(ex.cfg.horizon) * spr);
  for (Round t = 0; t < ex.cfg.horizon; ++t) {
    for (int k = 0; k < spr; ++k) out.push_back(ex.source.draw(ex.cfg.seed, replicate, learner, t, k));
  }
  return out;
}

std::vector<Sample> adjacent_dataset(const Experiment& ex, const std::vector<Sample>& data,
                                     std::size_t k, std::uint64_t replicate, int learner) {
  if (k >= data.size()) throw Error("differing index beyond the dataset");
  std::vector<Sample> out = data;
  const int spr = ex.cfg.samples_per_round;
  out[k] = ex.source.draw(ex.cfg.seed, replicate, learner, static_cast<Round>(k / spr),
                          static_cast<int>(k % spr), Purpose::kAltData);
  return out;
}

SensitivityResult empirical_sensitivity(const Experiment& ex, int learner,
                                        const std::vector<std::vector<Message>>& inbox,
                                        const std::vector<Sample>& data,
                                        const std::vector<Sample>& adjacent) {
  const Round T = ex.cfg.horizon;
  const int spr = ex.cfg.samples_per_round;
  const std::size_t need = static_cast<std::size_t>(T) * spr;
  if (data.size() != need || adjacent.size() != need) {
    throw Error("datasets must hold horizon * samples_per_round entries");
  }
  if (inbox.size() != static_cast<std::size_t>(T)) {
    throw Error("recorded messages must cover every round");
  }
  if (ex.set.kind() == ProjectionSet::Kind::kBall && ex.set.dim() > 1) {
    throw ConfigError("sensitivity harness needs a box domain or dimension 1");
  }
  SensitivityResult res;
  for (std::size_t j = 0; j < need; ++j) {
    if (SameSample(data[j], adjacent[j])) continue;
    if (res.k >= 0) throw Error("datasets differ in more than one entry");
    res.k = static_cast<long>(j);
  }

  Learner a = make_learner(ex, 0, learner);
  Learner b = make_learner(ex, 0, learner);
  const AccountantParams ap = accountant_params(ex, learner);
  const double lip = std::sqrt(static_cast<double>(ap.dim)) * clipped_lipschitz(ap.L, ap.dim);
  const Round k_round = res.k >= 0 ? res.k / spr : T;
  res.trace.assign(T + 1, 0.0);
  res.bound.assign(T + 1, 0.0);
  double delta = 0.0;
  for (Round t = 0; t < T; ++t) {
    for (int s = 0; s < spr; ++s) {
      a.observe(data[t * spr + s]);
      b.observe(adjacent[t * spr + s]);
    }
    const double g = ex.cfg.schedules.gamma(t), l = ex.cfg.schedules.lambda(t);
    a.update(inbox[t], g, l);
    b.update(inbox[t], g, l);
    res.trace[t + 1] = kernels::dist1(a.theta(), b.theta());
    if (t >= k_round) {
      const double n_t = static_cast<double>((t + 1) * spr);
      delta = (1.0 - ap.wbar * g + lip * l * (n_t - 1.0) / n_t) * delta + 2.0 * l * ap.C / n_t;
    }
    res.bound[t + 1] = delta;
    if (res.trace[t + 1] > delta * (1.0 + 1e-12) + 1e-15) res.sound = false;
    if (delta > 0.0) res.max_ratio = std::max(res.max_ratio, res.trace[t + 1] / delta);
  }
  return res;
}

}  // namespace ldpol
