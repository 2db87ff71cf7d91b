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

#ifndef LDPOL_KERNELS_HPP_
#define LDPOL_KERNELS_HPP_

// Dense vector kernels used by every inner loop of the simulator. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2/FMA variant.
// The variant is chosen once at startup from CPUID; setting the environment
// variable LDPOL_ISA=scalar forces the reference path.

#include <cstddef>
#include <string_view>

#include "ldpol/common.hpp"

namespace ldpol::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  double (*norm1)(const double* x, std::size_t n);
  double (*norm2sq)(const double* x, std::size_t n);
  // out = a * x + b * y; returns ||out||_1. out may alias x or y.
  double (*axpby_norm1)(double a, const double* x, double b, const double* y,
                        double* out, std::size_t n);
  // ||x - y||_1
  double (*dist1)(const double* x, const double* y, std::size_t n);
  // A += a * x x^T for row-major n x n A.
  void (*rank1_update)(double a, const double* x, double* A, std::size_t n);
  // out = A x for row-major n x n A.
  void (*matvec)(const double* A, const double* x, double* out,
                 std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();

// Overrides the active table (tests and benchmarks). Returns false if the
// requested ISA is unavailable.
bool select(Isa isa);

// Convenience wrappers over active().
double dot(VecView x, VecView y);
void axpy(double a, VecView x, VecMut y);
void scale(double a, VecMut x);
double norm1(VecView x);
double norm2sq(VecView x);
double axpby_norm1(double a, VecView x, double b, VecView y, VecMut out);
double dist1(VecView x, VecView y);

}  // namespace ldpol::kernels

#endif  // LDPOL_KERNELS_HPP_
