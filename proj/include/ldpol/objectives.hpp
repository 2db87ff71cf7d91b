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

#ifndef LDPOL_OBJECTIVES_HPP_
#define LDPOL_OBJECTIVES_HPP_

#include <string>

#include "ldpol/common.hpp"

namespace ldpol {

// One streamed data point. For classification y holds the label in {0, 1}.
struct Sample {
  Vector x;
  double y = 0.0;
};

enum class LossKind { kRidge, kLogistic };

// Loss family with its regularizer: alpha for ridge, r for logistic.
struct Loss {
  LossKind kind = LossKind::kRidge;
  double reg = 0.0;

  static Loss Ridge(double alpha) { return {LossKind::kRidge, alpha}; }
  static Loss Logistic(double r) { return {LossKind::kLogistic, r}; }
};

std::string to_string(LossKind kind);

// (y - x^T theta)^2 + alpha * theta^T theta
double ridge_loss(VecView theta, const Sample& xi, double alpha);
// -2 x (y - x^T theta) + 2 alpha theta
Vector ridge_grad(VecView theta, const Sample& xi, double alpha);

// (1 - b) a^T theta - log s(a^T theta) + (r/2) ||theta||^2
double logistic_loss(VecView theta, const Sample& xi, double r);
// (s(a^T theta) - b) a + r theta
Vector logistic_grad(VecView theta, const Sample& xi, double r);

// Overflow-free logistic function.
double sigmoid(double z);

double loss_value(const Loss& loss, VecView theta, const Sample& xi);
// Writes the gradient into `out`; returns its 1-norm.
double loss_grad_into(const Loss& loss, VecView theta, const Sample& xi,
                      VecMut out);
Vector loss_grad(const Loss& loss, VecView theta, const Sample& xi);

// g if ||g||_1 <= c, else g * c / ||g||_1.
Vector clip_l1(Vector g, double c);
void clip_l1_inplace(VecMut g, double c);

// Constants every theorem condition consumes.
struct ProblemConstants {
  double mu = 0.0;      // strong convexity modulus
  double L = 0.0;       // gradient Lipschitz constant
  double D = 0.0;       // gradient 2-norm bound
  double kappa = 0.0;   // gradient noise standard deviation bound
  double C = 0.0;       // enforced gradient 1-norm bound
  double D0 = 0.0;      // diameter of the parameter set
};

// Data and domain bounds the constants are derived from.
struct DataBounds {
  std::size_t dim = 1;
  double feature_norm2 = 1.0;  // bound on ||x||_2
  double feature_norm1 = 1.0;  // bound on ||x||_1
  double label_abs = 1.0;      // bound on |y| (ridge)
  double theta_norm2 = 1.0;    // max ||theta||_2 over the parameter set
  double theta_norm1 = 1.0;    // max ||theta||_1 over the parameter set
  double diameter = 2.0;       // D0
};

// Ridge: mu = 2 alpha, L = 2 (B^2 + alpha), D = 2 B (B R + Y) + 2 alpha R.
// Logistic: mu = r, L = B^2 / 4 + r, D = B + r R.
// kappa defaults to D; C to the worst-case gradient 1-norm over the domain.
ProblemConstants derive_constants(const Loss& loss, const DataBounds& b);

// Worst-case gradient 1-norm of one sample over the parameter set.
double grad_norm1_bound(const Loss& loss, const Sample& xi,
                        const DataBounds& b);

// Validates mu <= L, positivity of L, D, C, and mu > 0 for ridge with alpha > 0.
void validate_constants(const Loss& loss, const ProblemConstants& pc);

}  // namespace ldpol

#endif  // LDPOL_OBJECTIVES_HPP_
