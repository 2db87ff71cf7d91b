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

#ifndef LDPOL_GRADIENT_MEMORY_HPP_
#define LDPOL_GRADIENT_MEMORY_HPP_

// Historical-average gradient d_t(theta) = (1/(t+1)) sum_{k<=t} grad l(theta, xi_k),
// three ways:
//   ReplayMemory       exact, O(t) per evaluation, any loss, per-sample clip;
//   AffineAggregate    exact for ridge, O(n^2) per evaluation, clip must be
//                      inactive (checked on append);
//   InterpolatedMemory two-point interpolation recursion, O(n) state, exact
//                      when each gradient coordinate is affine in that
//                      coordinate of theta.

#include <cmath>
#include <optional>
#include <variant>

#include "ldpol/common.hpp"
#include "ldpol/objectives.hpp"

namespace ldpol {

class ReplayMemory {
 public:
  ReplayMemory(std::size_t dim, Loss loss, double clip);

  void append(Sample xi);
  std::size_t count() const { return samples_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Sample>& samples() const { return samples_; }

  // Mean of the per-sample clipped gradients at theta. Throws on empty memory.
  void average_gradient(VecView theta, VecMut out) const;
  Vector average_gradient(VecView theta) const;

 private:
  std::size_t dim_;
  Loss loss_;
  double clip_;
  std::vector<Sample> samples_;
  mutable Vector scratch_;
};

// Sufficient statistics of the ridge gradient: sum_k (2 x_k x_k^T + 2 alpha I)
// and sum_k (-2 x_k y_k).
class AffineAggregate {
 public:
  // `clip` and `bounds` are used to reject samples whose gradient could be
  // clipped somewhere on the parameter set; pass clip = +inf to disable.
  AffineAggregate(std::size_t dim, double alpha, double clip = INFINITY,
                  DataBounds bounds = {});

  void append(const Sample& xi);
  std::size_t count() const { return count_; }
  std::size_t dim() const { return dim_; }
  const Vector& a_sum() const { return a_sum_; }
  const Vector& b_sum() const { return b_sum_; }

  void average_gradient(VecView theta, VecMut out) const;
  Vector average_gradient(VecView theta) const;

 private:
  std::size_t dim_;
  double alpha_;
  double clip_;
  DataBounds bounds_;
  std::size_t count_ = 0;
  Vector a_sum_;  // row-major n x n
  Vector b_sum_;
};

// State of the interpolation recursion after round t-1.
struct InterpState {
  Vector theta_prev;   // theta_{t-1}
  Vector theta_prev2;  // theta_{t-2}
  Vector d_prev;       // d_{t-1}(theta_{t-1})
  Vector d_prev2;      // d_{t-2}(theta_{t-2})
  std::size_t count = 0;  // t: number of rounds already folded in
};

// One step of the recursion at round t = state.count >= 2.
//   grad_new: clipped grad l(theta_t, xi_t)
//   grad_lag: clipped grad l(theta_{t-2}, xi_{t-1})
// d_{t-1}(theta_{t-2}) = ((t-1) d_{t-2}(theta_{t-2}) + grad_lag) / t
// d_{t-1}(theta_t) by coordinate-wise two-point interpolation through
// (theta_{t-1}, d_{t-1}(theta_{t-1})) and (theta_{t-2}, d_{t-1}(theta_{t-2}));
// coordinates with |theta_{t-1} - theta_{t-2}| < tie_tol keep d_{t-1}(theta_{t-1}).
// d_t(theta_t) = (t d_{t-1}(theta_t) + grad_new) / (t + 1).
// Returns d_t(theta_t) and shifts the state to round t.
Vector avg_grad_interpolated(InterpState& state, VecView theta_t,
                             VecView grad_new, VecView grad_lag,
                             double tie_tol = 1e-12);

class InterpolatedMemory {
 public:
  InterpolatedMemory(std::size_t dim, Loss loss, double clip,
                     double tie_tol = 1e-12);

  // Must alternate: append(xi_t), then average_gradient(theta_t).
  void append(Sample xi);
  std::size_t count() const { return count_; }
  std::size_t dim() const { return dim_; }
  const InterpState& state() const { return state_; }

  void average_gradient(VecView theta, VecMut out);

 private:
  Vector ClippedGrad(VecView theta, const Sample& xi) const;

  std::size_t dim_;
  Loss loss_;
  double clip_;
  double tie_tol_;
  std::size_t count_ = 0;  // samples appended
  InterpState state_;
  std::vector<Sample> warmup_;  // xi_0, xi_1
  std::optional<Sample> prev_sample_;
  std::optional<Sample> pending_;
};

enum class MemoryEngine { kReplay, kAffine, kInterpolated };

MemoryEngine parse_memory_engine(const std::string& s);
std::string to_string(MemoryEngine e);

// The engine a learner owns.
class GradientMemory {
 public:
  GradientMemory(MemoryEngine engine, std::size_t dim, Loss loss, double clip,
                 DataBounds bounds = {});

  void append(Sample xi);
  void average_gradient(VecView theta, VecMut out);
  std::size_t count() const;
  MemoryEngine engine() const { return engine_; }

 private:
  MemoryEngine engine_;
  std::variant<ReplayMemory, AffineAggregate, InterpolatedMemory> impl_;
};

}  // namespace ldpol

#endif  // LDPOL_GRADIENT_MEMORY_HPP_
