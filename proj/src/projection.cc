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

#include "ldpol/projection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {

ProjectionSet::ProjectionSet(Kind kind, Vector a, Vector b, double radius)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), radius_(radius) {}

ProjectionSet ProjectionSet::Ball(Vector center, double radius) {
  if (center.empty()) throw ConfigError("ball center must have dimension >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("ball radius must be positive and finite");
  }
  return ProjectionSet(Kind::kBall, std::move(center), {}, radius);
}

ProjectionSet ProjectionSet::Box(Vector lo, Vector hi) {
  if (lo.empty() || lo.size() != hi.size()) {
    throw ConfigError("box bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw ConfigError("box needs finite lo < hi in coordinate " + std::to_string(i));
    }
  }
  return ProjectionSet(Kind::kBox, std::move(lo), std::move(hi), 0.0);
}

void ProjectionSet::CheckDim(std::size_t n) const {
  if (n != dim()) {
    throw DimensionError("vector of dimension " + std::to_string(n) +
                         " against a parameter set of dimension " + std::to_string(dim()));
  }
}

void ProjectionSet::project(VecMut v) const {
  CheckDim(v.size());
  if (kind_ == Kind::kBox) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::clamp(v[i], a_[i], b_[i]);
    return;
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - a_[i];
    r2 += d * d;
  }
  if (r2 <= radius_ * radius_) return;
  const double f = radius_ / std::sqrt(r2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a_[i] + (v[i] - a_[i]) * f;
}

Vector ProjectionSet::projected(VecView v) const {
  Vector out(v.begin(), v.end());
  project(VecMut(out));
  return out;
}

bool ProjectionSet::contains(VecView v, double tol) const {
  CheckDim(v.size());
  if (kind_ == Kind::kBox) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < a_[i] - tol || v[i] > b_[i] + tol) return false;
    }
    return true;
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - a_[i];
    r2 += d * d;
  }
  return std::sqrt(r2) <= radius_ + tol;
}

double ProjectionSet::diameter() const {
  if (kind_ == Kind::kBall) return 2.0 * radius_;
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += (b_[i] - a_[i]) * (b_[i] - a_[i]);
  return std::sqrt(s);
}

double ProjectionSet::max_norm2() const {
  if (kind_ == Kind::kBall) return std::sqrt(kernels::norm2sq(a_)) + radius_;
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double m = std::max(std::fabs(a_[i]), std::fabs(b_[i]));
    s += m * m;
  }
  return std::sqrt(s);
}

double ProjectionSet::max_norm1() const {
  if (kind_ == Kind::kBall) {
    return kernels::norm1(a_) + radius_ * std::sqrt(static_cast<double>(dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::max(std::fabs(a_[i]), std::fabs(b_[i]));
  return s;
}

Vector ProjectionSet::sample_uniform(CounterStream& rng) const {
  Vector out(dim());
  if (kind_ == Kind::kBox) {
    for (std::size_t i = 0; i < dim(); ++i) out[i] = a_[i] + (b_[i] - a_[i]) * rng.uniform01();
    return out;
  }
  std::normal_distribution<double> normal;
  double r2 = 0.0;
  do {
    r2 = 0.0;
    for (double& z : out) {
      z = normal(rng);
      r2 += z * z;
    }
  } while (r2 == 0.0);
  const double r = radius_ * std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim()));
  const double f = r / std::sqrt(r2);
  for (std::size_t i = 0; i < dim(); ++i) out[i] = a_[i] + out[i] * f;
  return out;
}

}  // namespace ldpol
