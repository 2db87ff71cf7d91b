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

#include <cmath>

#include "tables.hpp"

namespace ldpol::kernels::detail {
namespace {

double Dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void Axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void Scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double Norm1(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double Norm2Sq(const double* x, std::size_t n) { return Dot(x, x, n); }

double AxpbyNorm1(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a * x[i] + b * y[i];
    s += std::fabs(out[i]);
  }
  return s;
}

double Dist1(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i] - y[i]);
  return s;
}

void Rank1Update(double a, const double* x, double* A, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) Axpy(a * x[i], x, A + i * n, n);
}

void MatVec(const double* A, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = Dot(A + i * n, x, n);
}

}  // namespace

const KernelTable kScalarTable = {
    Isa::kScalar, "scalar", Dot,   Axpy,        Scale,  Norm1,
    Norm2Sq,      AxpbyNorm1, Dist1, Rank1Update, MatVec,
};

}  // namespace ldpol::kernels::detail
