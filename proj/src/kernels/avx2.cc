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

// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// is only entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace ldpol::kernels::detail {
namespace {

inline double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d Abs(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

double Dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void Axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void Scale(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

double Norm1(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, Abs(_mm256_loadu_pd(x + i)));
  double s = HorizontalSum(acc);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double Norm2Sq(const double* x, std::size_t n) { return Dot(x, x, n); }

double AxpbyNorm1(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
    acc = _mm256_add_pd(acc, Abs(r));
  }
  double s = HorizontalSum(acc);
  for (; i < n; ++i) {
    out[i] = a * x[i] + b * y[i];
    s += std::fabs(out[i]);
  }
  return s;
}

double Dist1(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(
        acc, Abs(_mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i))));
  }
  double s = HorizontalSum(acc);
  for (; i < n; ++i) s += std::fabs(x[i] - y[i]);
  return s;
}

void Rank1Update(double a, const double* x, double* A, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) Axpy(a * x[i], x, A + i * n, n);
}

void MatVec(const double* A, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = Dot(A + i * n, x, n);
}

}  // namespace

const KernelTable kAvx2Table = {
    Isa::kAvx2, "avx2", Dot,   Axpy,        Scale,  Norm1,
    Norm2Sq,    AxpbyNorm1, Dist1, Rank1Update, MatVec,
};

}  // namespace ldpol::kernels::detail
