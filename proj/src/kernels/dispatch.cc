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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "tables.hpp"

namespace ldpol::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(LDPOL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* Initial() {
  const char* env = std::getenv("LDPOL_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) {
    return &detail::kScalarTable;
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &detail::kScalarTable;
}

std::atomic<const KernelTable*>& Slot() {
  static std::atomic<const KernelTable*> slot{Initial()};
  return slot;
}

}  // namespace

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable* avx2_table() {
#if defined(LDPOL_HAVE_AVX2)
  static const bool ok = CpuHasAvx2();
  return ok ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *Slot().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  const KernelTable* t =
      isa == Isa::kScalar ? &detail::kScalarTable : avx2_table();
  if (t == nullptr) return false;
  Slot().store(t, std::memory_order_relaxed);
  return true;
}

double dot(VecView x, VecView y) { return active().dot(x.data(), y.data(), x.size()); }
void axpy(double a, VecView x, VecMut y) { active().axpy(a, x.data(), y.data(), x.size()); }
void scale(double a, VecMut x) { active().scale(a, x.data(), x.size()); }
double norm1(VecView x) { return active().norm1(x.data(), x.size()); }
double norm2sq(VecView x) { return active().norm2sq(x.data(), x.size()); }
double axpby_norm1(double a, VecView x, double b, VecView y, VecMut out) {
  return active().axpby_norm1(a, x.data(), b, y.data(), out.data(), x.size());
}
double dist1(VecView x, VecView y) { return active().dist1(x.data(), y.data(), x.size()); }

}  // namespace ldpol::kernels
