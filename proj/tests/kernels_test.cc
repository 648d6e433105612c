// Copyright 2026 The delaymask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "delaymask/kernels.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "delaymask/rng.h"
#include "gtest/gtest.h"

namespace delaymask::kernels {
namespace {

std::vector<double> RandomValues(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  rng.FillUniform(v);
  return v;
}

bool BitEqual(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(ScalarKernelsTest, AffineMatchesFormula) {
  std::vector<double> u = {0.0, 0.25, 0.5, 0.999};
  std::vector<double> out(u.size());
  Scalar().affine(u, 1.0, 2.0, out);
  EXPECT_EQ(out, (std::vector<double>{1.0, 1.5, 2.0, 1.0 + 2.0 * 0.999}));
}

TEST(ScalarKernelsTest, ZeroInflatedPutsLowDrawsAtZero) {
  std::vector<double> u = {0.0, 0.29, 0.3, 0.65, 0.9999};
  std::vector<double> out(u.size());
  Scalar().zero_inflated(u, 0.3, 10.0, out);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], 0.0);
  EXPECT_EQ(out[2], 0.0);
  EXPECT_DOUBLE_EQ(out[3], 3.5);
  EXPECT_LT(out[4], 7.0);
}

TEST(ScalarKernelsTest, SumMaxOfSmallInputs) {
  SumMax empty = Scalar().sum_max({});
  EXPECT_EQ(empty.sum, 0.0);
  EXPECT_EQ(empty.max, -std::numeric_limits<double>::infinity());
  std::vector<double> x = {1, 2, 3, 4, 5, 6, 7};
  SumMax s = Scalar().sum_max(x);
  EXPECT_EQ(s.sum, 28.0);
  EXPECT_EQ(s.max, 7.0);
}

TEST(ScalarKernelsTest, SumCloseToLongDoubleReference) {
  std::vector<double> x = RandomValues(10007, 5);
  long double ref = 0.0L;
  for (double v : x) ref += v;
  EXPECT_NEAR(Scalar().sum_max(x).sum, static_cast<double>(ref), 1e-9);
}

TEST(ScalarKernelsTest, CountAtMostIsClosed) {
  std::vector<double> x = {0.0, 1.0, 1.0, 2.0, 3.0};
  EXPECT_EQ(Scalar().count_at_most(x, 1.0), 3u);
  EXPECT_EQ(Scalar().count_at_most(x, -1.0), 0u);
  EXPECT_EQ(Scalar().count_at_most(x, 3.0), 5u);
}

class Avx2EquivalenceTest : public ::testing::TestWithParam<size_t> {
 protected:
  void SetUp() override {
    if (Avx2() == nullptr) GTEST_SKIP() << "AVX2 not available";
  }
};

TEST_P(Avx2EquivalenceTest, AffineBitIdentical) {
  std::vector<double> u = RandomValues(GetParam(), 11 + GetParam());
  std::vector<double> a(u.size()), b(u.size());
  Scalar().affine(u, 3.5, 1.0 / 3.0, a);
  Avx2()->affine(u, 3.5, 1.0 / 3.0, b);
  EXPECT_TRUE(BitEqual(a, b));
}

TEST_P(Avx2EquivalenceTest, ZeroInflatedBitIdentical) {
  std::vector<double> u = RandomValues(GetParam(), 23 + GetParam());
  if (!u.empty()) u[0] = 0.4;  // exactly at the zero mass boundary
  std::vector<double> a(u.size()), b(u.size());
  Scalar().zero_inflated(u, 0.4, 2.0 / 0.6, a);
  Avx2()->zero_inflated(u, 0.4, 2.0 / 0.6, b);
  EXPECT_TRUE(BitEqual(a, b));
  for (double v : b) EXPECT_FALSE(std::signbit(v));
}

TEST_P(Avx2EquivalenceTest, SumMaxBitIdentical) {
  std::vector<double> x = RandomValues(GetParam(), 37 + GetParam());
  for (double& v : x) v = v * 1e3 - 200.0;
  SumMax a = Scalar().sum_max(x);
  SumMax b = Avx2()->sum_max(x);
  EXPECT_EQ(std::memcmp(&a.sum, &b.sum, sizeof(double)), 0);
  EXPECT_EQ(a.max, b.max);
}

TEST_P(Avx2EquivalenceTest, CountAtMostIdentical) {
  std::vector<double> x = RandomValues(GetParam(), 41 + GetParam());
  for (double t : {-1.0, 0.0, 0.25, 0.5, 0.999, 2.0}) {
    EXPECT_EQ(Scalar().count_at_most(x, t), Avx2()->count_at_most(x, t));
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, Avx2EquivalenceTest,
                         ::testing::Values(0, 1, 3, 4, 5, 7, 8, 9, 31, 64,
                                           1000, 4097));

TEST(DispatchTest, ActiveIsOneOfTheTables) {
  const KernelTable& k = Active();
  EXPECT_TRUE(&k == &Scalar() || &k == Avx2());
}

}  // namespace
}  // namespace delaymask::kernels
