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

#include "ldpol/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "ldpol/error.hpp"
#include "ldpol/kernels.hpp"

namespace ldpol {
namespace {

void CheckDims(VecView theta, const Sample& xi) {
  if (theta.size() != xi.x.size()) {
    throw DimensionError("parameter has dimension " + std::to_string(theta.size()) +
                         " but sample has " + std::to_string(xi.x.size()));
  }
}

void CheckLabel(const Sample& xi) {
  if (xi.y != 0.0 && xi.y != 1.0) {
    throw Error("logistic label must be 0 or 1, got " + std::to_string(xi.y));
  }
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

}  // namespace

std::string to_string(LossKind kind) {
  return kind == LossKind::kRidge ? "ridge" : "logistic";
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double ridge_loss(VecView theta, const Sample& xi, double alpha) {
  CheckDims(theta, xi);
  const double r = xi.y - kernels::dot(xi.x, theta);
  return r * r + alpha * kernels::norm2sq(theta);
}

Vector ridge_grad(VecView theta, const Sample& xi, double alpha) {
  Vector g(theta.size());
  loss_grad_into(Loss::Ridge(alpha), theta, xi, g);
  return g;
}

double logistic_loss(VecView theta, const Sample& xi, double r) {
  CheckDims(theta, xi);
  CheckLabel(xi);
  const double z = kernels::dot(xi.x, theta);
  // -log s(z) = log(1 + e^{-z})
  return (1.0 - xi.y) * z + Softplus(-z) + 0.5 * r * kernels::norm2sq(theta);
}

Vector logistic_grad(VecView theta, const Sample& xi, double r) {
  Vector g(theta.size());
  loss_grad_into(Loss::Logistic(r), theta, xi, g);
  return g;
}

double loss_value(const Loss& loss, VecView theta, const Sample& xi) {
  return loss.kind == LossKind::kRidge ? ridge_loss(theta, xi, loss.reg)
                                       : logistic_loss(theta, xi, loss.reg);
}

double loss_grad_into(const Loss& loss, VecView theta, const Sample& xi,
                      VecMut out) {
  CheckDims(theta, xi);
  if (out.size() != theta.size()) throw DimensionError("gradient buffer size");
  const double z = kernels::dot(xi.x, theta);
  if (loss.kind == LossKind::kRidge) {
    return kernels::axpby_norm1(-2.0 * (xi.y - z), xi.x, 2.0 * loss.reg, theta, out);
  }
  CheckLabel(xi);
  return kernels::axpby_norm1(sigmoid(z) - xi.y, xi.x, loss.reg, theta, out);
}

Vector loss_grad(const Loss& loss, VecView theta, const Sample& xi) {
  Vector g(theta.size());
  loss_grad_into(loss, theta, xi, g);
  return g;
}

void clip_l1_inplace(VecMut g, double c) {
  const double n1 = kernels::norm1(g);
  if (n1 > c * (1.0 + 1e-14)) kernels::scale(c / n1, g);
}

Vector clip_l1(Vector g, double c) {
  clip_l1_inplace(g, c);
  return g;
}

ProblemConstants derive_constants(const Loss& loss, const DataBounds& b) {
  ProblemConstants pc;
  const double B = b.feature_norm2;
  const double R = b.theta_norm2;
  if (loss.kind == LossKind::kRidge) {
    pc.mu = 2.0 * loss.reg;
    pc.L = 2.0 * (B * B + loss.reg);
    pc.D = 2.0 * B * (B * R + b.label_abs) + 2.0 * loss.reg * R;
    pc.C = 2.0 * b.feature_norm1 * (b.label_abs + B * R) +
           2.0 * loss.reg * b.theta_norm1;
  } else {
    pc.mu = loss.reg;
    pc.L = B * B / 4.0 + loss.reg;
    pc.D = B + loss.reg * R;
    pc.C = b.feature_norm1 + loss.reg * b.theta_norm1;
  }
  pc.kappa = pc.D;
  pc.D0 = b.diameter;
  return pc;
}

double grad_norm1_bound(const Loss& loss, const Sample& xi, const DataBounds& b) {
  const double x1 = kernels::norm1(xi.x);
  if (loss.kind == LossKind::kRidge) {
    const double x2 = std::sqrt(kernels::norm2sq(xi.x));
    return 2.0 * x1 * (std::fabs(xi.y) + x2 * b.theta_norm2) +
           2.0 * loss.reg * b.theta_norm1;
  }
  return x1 + loss.reg * b.theta_norm1;
}

void validate_constants(const Loss& loss, const ProblemConstants& pc) {
  std::vector<std::string> bad;
  if (!(pc.L > 0.0)) bad.push_back("L > 0");
  if (!(pc.mu >= 0.0)) bad.push_back("mu >= 0");
  if (!(pc.mu <= pc.L)) bad.push_back("mu <= L");
  if (!(pc.D > 0.0)) bad.push_back("D > 0");
  if (!(pc.C > 0.0)) bad.push_back("C > 0");
  if (!(pc.kappa >= 0.0)) bad.push_back("kappa >= 0");
  if (!(pc.D0 > 0.0)) bad.push_back("D0 > 0");
  if (loss.kind == LossKind::kRidge && loss.reg > 0.0 && !(pc.mu > 0.0)) {
    bad.push_back("ridge with alpha > 0 needs mu > 0");
  }
  if (loss.kind == LossKind::kRidge && !(loss.reg >= 0.0)) bad.push_back("alpha >= 0");
  if (loss.kind == LossKind::kLogistic && !(loss.reg >= 0.0)) bad.push_back("r >= 0");
  if (!bad.empty()) {
    std::string msg = "problem constants invalid:";
    for (const auto& s : bad) msg += " [" + s + "]";
    throw ValidationError(msg, bad);
  }
}

}  // namespace ldpol
