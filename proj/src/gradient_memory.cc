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

#include "ldpol/gradient_memory.hpp"

#include <cmath>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {
namespace {

void CheckSample(const Sample& xi, std::size_t dim) {
  if (xi.x.size() != dim) {
    throw DimensionError("sample dimension " + std::to_string(xi.x.size()) +
                         " does not match memory dimension " + std::to_string(dim));
  }
}

}  // namespace

ReplayMemory::ReplayMemory(std::size_t dim, Loss loss, double clip)
    : dim_(dim), loss_(loss), clip_(clip), scratch_(dim) {}

void ReplayMemory::append(Sample xi) {
  CheckSample(xi, dim_);
  samples_.push_back(std::move(xi));
}

void ReplayMemory::average_gradient(VecView theta, VecMut out) const {
  if (samples_.empty()) throw Error("average gradient of an empty memory");
  if (theta.size() != dim_ || out.size() != dim_) {
    throw DimensionError("replay memory: parameter dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const Sample& xi : samples_) {
    const double n1 = loss_grad_into(loss_, theta, xi, scratch_);
    const double f = n1 > clip_ ? clip_ / n1 : 1.0;
    kernels::axpy(f, scratch_, out);
  }
  kernels::scale(1.0 / static_cast<double>(samples_.size()), out);
}

Vector ReplayMemory::average_gradient(VecView theta) const {
  Vector out(dim_);
  average_gradient(theta, out);
  return out;
}

AffineAggregate::AffineAggregate(std::size_t dim, double alpha, double clip,
                                 DataBounds bounds)
    : dim_(dim),
      alpha_(alpha),
      clip_(clip),
      bounds_(bounds),
      a_sum_(dim * dim, 0.0),
      b_sum_(dim, 0.0) {}

void AffineAggregate::append(const Sample& xi) {
  CheckSample(xi, dim_);
  if (std::isfinite(clip_)) {
    const double bound = grad_norm1_bound(Loss::Ridge(alpha_), xi, bounds_);
    if (bound > clip_) {
      throw ConfigError(
          "affine gradient engine needs an inactive clip, but sample " +
          std::to_string(count_) + " may reach gradient 1-norm " +
          std::to_string(bound) + " > C = " + std::to_string(clip_) +
          "; use the replay engine or raise C");
    }
  }
  kernels::active().rank1_update(2.0, xi.x.data(), a_sum_.data(), dim_);
  for (std::size_t i = 0; i < dim_; ++i) a_sum_[i * dim_ + i] += 2.0 * alpha_;
  kernels::axpy(-2.0 * xi.y, xi.x, b_sum_);
  ++count_;
}

void AffineAggregate::average_gradient(VecView theta, VecMut out) const {
  if (count_ == 0) throw Error("average gradient of an empty memory");
  if (theta.size() != dim_ || out.size() != dim_) {
    throw DimensionError("affine aggregate: parameter dimension mismatch");
  }
  kernels::active().matvec(a_sum_.data(), theta.data(), out.data(), dim_);
  kernels::axpy(1.0, b_sum_, out);
  kernels::scale(1.0 / static_cast<double>(count_), out);
}

Vector AffineAggregate::average_gradient(VecView theta) const {
  Vector out(dim_);
  average_gradient(theta, out);
  return out;
}

Vector avg_grad_interpolated(InterpState& s, VecView theta_t, VecView grad_new,
                             VecView grad_lag, double tie_tol) {
  if (s.count < 2) {
    throw Error("interpolated gradient requires two warm-up rounds");
  }
  const std::size_t n = theta_t.size();
  if (grad_new.size() != n || grad_lag.size() != n || s.theta_prev.size() != n) {
    throw DimensionError("interpolated gradient: dimension mismatch");
  }
  const double t = static_cast<double>(s.count);
  Vector d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d_lag = ((t - 1.0) * s.d_prev2[j] + grad_lag[j]) / t;
    const double gap = s.theta_prev[j] - s.theta_prev2[j];
    double d_prev_at_t;
    if (std::fabs(gap) < tie_tol) {
      d_prev_at_t = s.d_prev[j];
    } else {
      d_prev_at_t = s.d_prev[j] * (theta_t[j] - s.theta_prev2[j]) / gap +
                    d_lag * (theta_t[j] - s.theta_prev[j]) / -gap;
    }
    d[j] = (t * d_prev_at_t + grad_new[j]) / (t + 1.0);
  }
  s.theta_prev2 = std::move(s.theta_prev);
  s.theta_prev.assign(theta_t.begin(), theta_t.end());
  s.d_prev2 = std::move(s.d_prev);
  s.d_prev = d;
  ++s.count;
  return d;
}

InterpolatedMemory::InterpolatedMemory(std::size_t dim, Loss loss, double clip,
                                       double tie_tol)
    : dim_(dim), loss_(loss), clip_(clip), tie_tol_(tie_tol) {}

void InterpolatedMemory::append(Sample xi) {
  CheckSample(xi, dim_);
  if (pending_) throw Error("interpolated memory: append twice without evaluation");
  pending_ = std::move(xi);
  ++count_;
}

Vector InterpolatedMemory::ClippedGrad(VecView theta, const Sample& xi) const {
  Vector g = loss_grad(loss_, theta, xi);
  clip_l1_inplace(g, clip_);
  return g;
}

void InterpolatedMemory::average_gradient(VecView theta, VecMut out) {
  if (!pending_) throw Error("interpolated memory: evaluation without a new sample");
  if (theta.size() != dim_ || out.size() != dim_) {
    throw DimensionError("interpolated memory: parameter dimension mismatch");
  }
  Sample xi = std::move(*pending_);
  pending_.reset();
  Vector d;
  if (state_.count < 2) {
    // Warm-up rounds are evaluated exactly.
    warmup_.push_back(std::move(xi));
    d.assign(dim_, 0.0);
    for (const Sample& s : warmup_) kernels::axpy(1.0, ClippedGrad(theta, s), d);
    kernels::scale(1.0 / static_cast<double>(warmup_.size()), d);
    state_.theta_prev2 = std::move(state_.theta_prev);
    state_.d_prev2 = std::move(state_.d_prev);
    state_.theta_prev.assign(theta.begin(), theta.end());
    state_.d_prev = d;
    ++state_.count;
    if (state_.count == 2) {
      prev_sample_ = warmup_.back();
      warmup_.clear();
    }
  } else {
    const Vector grad_new = ClippedGrad(theta, xi);
    const Vector grad_lag = ClippedGrad(state_.theta_prev2, *prev_sample_);
    d = avg_grad_interpolated(state_, theta, grad_new, grad_lag, tie_tol_);
    prev_sample_ = std::move(xi);
  }
  std::copy(d.begin(), d.end(), out.begin());
}

MemoryEngine parse_memory_engine(const std::string& s) {
  if (s == "replay") return MemoryEngine::kReplay;
  if (s == "affine") return MemoryEngine::kAffine;
  if (s == "interpolated") return MemoryEngine::kInterpolated;
  throw ConfigError("unknown gradient memory engine '" + s + "'");
}

std::string to_string(MemoryEngine e) {
  switch (e) {
    case MemoryEngine::kReplay: return "replay";
    case MemoryEngine::kAffine: return "affine";
    case MemoryEngine::kInterpolated: return "interpolated";
  }
  return "?";
}

namespace {

std::variant<ReplayMemory, AffineAggregate, InterpolatedMemory> MakeImpl(
    MemoryEngine engine, std::size_t dim, Loss loss, double clip,
    DataBounds bounds) {
  switch (engine) {
    case MemoryEngine::kReplay:
      return ReplayMemory(dim, loss, clip);
    case MemoryEngine::kAffine:
      if (loss.kind != LossKind::kRidge) {
        throw ConfigError("affine gradient engine only supports the ridge loss");
      }
      return AffineAggregate(dim, loss.reg, clip, bounds);
    case MemoryEngine::kInterpolated:
      return InterpolatedMemory(dim, loss, clip);
  }
  throw ConfigError("unknown engine");
}

}  // namespace

GradientMemory::GradientMemory(MemoryEngine engine, std::size_t dim, Loss loss,
                               double clip, DataBounds bounds)
    : engine_(engine), impl_(MakeImpl(engine, dim, loss, clip, bounds)) {}

void GradientMemory::append(Sample xi) {
  std::visit([&](auto& m) { m.append(std::move(xi)); }, impl_);
}

void GradientMemory::average_gradient(VecView theta, VecMut out) {
  std::visit([&](auto& m) { m.average_gradient(theta, out); }, impl_);
}

std::size_t GradientMemory::count() const {
  return std::visit([](const auto& m) { return m.count(); }, impl_);
}

}  // namespace ldpol
