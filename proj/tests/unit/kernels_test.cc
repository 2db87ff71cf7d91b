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
#include <vector>

#include <gtest/gtest.h>

#include "ldpol/kernels.hpp"
#include "oracles.hpp"

namespace ldpol {
namespace {

using kernels::KernelTable;

double Tol(double scale) { return 1e-12 * std::max(1.0, scale); }

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx_ = kernels::avx2_table();
    if (avx_ == nullptr) GTEST_SKIP() << "AVX2 unavailable";
  }
  const KernelTable* avx_ = nullptr;
};

TEST_F(KernelEquivalence, RandomLengthsAndValues) {
  const KernelTable& sc = kernels::scalar_table();
  auto rng = testing::test_stream(101);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = c % 37;
    Vector x = testing::uniform_vector(rng, n, -5, 5);
    Vector y = testing::uniform_vector(rng, n, -5, 5);
    const double a = testing::uniform(rng, -2, 2);
    const double b = testing::uniform(rng, -2, 2);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]) + std::abs(x[i]) + std::abs(y[i]);

    EXPECT_NEAR(sc.dot(x.data(), y.data(), n), avx_->dot(x.data(), y.data(), n), Tol(mag));
    EXPECT_NEAR(sc.norm1(x.data(), n), avx_->norm1(x.data(), n), Tol(mag));
    EXPECT_NEAR(sc.norm2sq(x.data(), n), avx_->norm2sq(x.data(), n), Tol(mag * 5));
    EXPECT_NEAR(sc.dist1(x.data(), y.data(), n), avx_->dist1(x.data(), y.data(), n), Tol(mag));

    Vector y1 = y, y2 = y;
    sc.axpy(a, x.data(), y1.data(), n);
    avx_->axpy(a, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], Tol(std::abs(y1[i])));

    Vector s1 = x, s2 = x;
    sc.scale(a, s1.data(), n);
    avx_->scale(a, s2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s1[i], s2[i]);

    Vector o1(n), o2(n);
    const double n1 = sc.axpby_norm1(a, x.data(), b, y.data(), o1.data(), n);
    const double n2 = avx_->axpby_norm1(a, x.data(), b, y.data(), o2.data(), n);
    EXPECT_NEAR(n1, n2, Tol(mag));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o1[i], o2[i], Tol(std::abs(o1[i])));
  }
}

TEST_F(KernelEquivalence, MatrixKernels) {
  const KernelTable& sc = kernels::scalar_table();
  auto rng = testing::test_stream(102);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 1 + c % 13;
    Vector A = testing::uniform_vector(rng, n * n, -1, 1);
    Vector x = testing::uniform_vector(rng, n, -3, 3);
    const double a = testing::uniform(rng, -2, 2);
    Vector A1 = A, A2 = A;
    sc.rank1_update(a, x.data(), A1.data(), n);
    avx_->rank1_update(a, x.data(), A2.data(), n);
    for (std::size_t i = 0; i < n * n; ++i) EXPECT_NEAR(A1[i], A2[i], 1e-12 * std::max(1.0, std::abs(A1[i])));
    Vector o1(n), o2(n);
    sc.matvec(A.data(), x.data(), o1.data(), n);
    avx_->matvec(A.data(), x.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o1[i], o2[i], 1e-11);
  }
}

TEST_F(KernelEquivalence, AliasedOutput) {
  const KernelTable& sc = kernels::scalar_table();
  Vector x{1, -2, 3, -4, 5, -6, 7};
  Vector y{0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  Vector x1 = x, x2 = x;
  const double n1 = sc.axpby_norm1(2.0, x1.data(), -1.0, y.data(), x1.data(), 7);
  const double n2 = avx_->axpby_norm1(2.0, x2.data(), -1.0, y.data(), x2.data(), 7);
  EXPECT_DOUBLE_EQ(n1, n2);
  EXPECT_EQ(x1, x2);
  EXPECT_DOUBLE_EQ(x1[0], 1.5);
}

TEST(Kernels, ScalarReferenceValues) {
  const KernelTable& sc = kernels::scalar_table();
  Vector x{1, 2, 3};
  Vector y{4, -5, 6};
  EXPECT_DOUBLE_EQ(sc.dot(x.data(), y.data(), 3), 12.0);
  EXPECT_DOUBLE_EQ(sc.norm1(y.data(), 3), 15.0);
  EXPECT_DOUBLE_EQ(sc.norm2sq(x.data(), 3), 14.0);
  EXPECT_DOUBLE_EQ(sc.dist1(x.data(), y.data(), 3), 3 + 7 + 3);
  Vector A(9, 0.0);
  sc.rank1_update(2.0, x.data(), A.data(), 3);
  EXPECT_DOUBLE_EQ(A[1], 4.0);
  EXPECT_DOUBLE_EQ(A[8], 18.0);
  Vector o(3);
  sc.matvec(A.data(), x.data(), o.data(), 3);
  EXPECT_DOUBLE_EQ(o[0], 2.0 * 14.0);
}

TEST(Kernels, SelectSwitchesActiveTable) {
  ASSERT_TRUE(kernels::select(kernels::Isa::kScalar));
  EXPECT_EQ(kernels::active().isa, kernels::Isa::kScalar);
  if (kernels::avx2_table() != nullptr) {
    ASSERT_TRUE(kernels::select(kernels::Isa::kAvx2));
    EXPECT_EQ(kernels::active().isa, kernels::Isa::kAvx2);
  } else {
    EXPECT_FALSE(kernels::select(kernels::Isa::kAvx2));
  }
}

}  // namespace
}  // namespace ldpol
