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

#ifndef LDPOL_PROJECTION_HPP_
#define LDPOL_PROJECTION_HPP_

#include "ldpol/common.hpp"
#include "ldpol/rng.hpp"

namespace ldpol {

// Convex compact parameter set: a Euclidean ball or an axis-aligned box.
class ProjectionSet {
 public:
  enum class Kind { kBall, kBox };

  // Throws ConfigError unless radius > 0.
  static ProjectionSet Ball(Vector center, double radius);
  // Throws ConfigError unless lo < hi componentwise.
  static ProjectionSet Box(Vector lo, Vector hi);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return a_.size(); }
  // Ball: center and radius. Box: lo and hi.
  const Vector& center() const { return a_; }
  double radius() const { return radius_; }
  const Vector& lo() const { return a_; }
  const Vector& hi() const { return b_; }

  // Euclidean projection, in place.
  void project(VecMut v) const;
  Vector projected(VecView v) const;
  bool contains(VecView v, double tol = 1e-12) const;

  double diameter() const;
  double max_norm2() const;  // max over the set of ||theta||_2
  double max_norm1() const;  // max over the set of ||theta||_1

  // Uniform draw from the set.
  Vector sample_uniform(CounterStream& rng) const;

 private:
  ProjectionSet(Kind kind, Vector a, Vector b, double radius);
  void CheckDim(std::size_t n) const;

  Kind kind_;
  Vector a_;
  Vector b_;
  double radius_ = 0.0;
};

}  // namespace ldpol

#endif  // LDPOL_PROJECTION_HPP_
