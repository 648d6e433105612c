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

#include <immintrin.h>

#include <limits>

#include "kernels_internal.h"

namespace delaymask::kernels::internal {
namespace {

void AffineAvx2(std::span<const double> u, double offset, double scale,
                std::span<double> out) {
  const __m256d vo = _mm256_set1_pd(offset);
  const __m256d vs = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= u.size(); i += 4) {
    __m256d x = _mm256_loadu_pd(u.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(vo, _mm256_mul_pd(vs, x)));
  }
  for (; i < u.size(); ++i) out[i] = offset + scale * u[i];
}

void ZeroInflatedAvx2(std::span<const double> u, double zero_mass,
                      double scale, std::span<double> out) {
  const __m256d vz = _mm256_set1_pd(zero_mass);
  const __m256d vs = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= u.size(); i += 4) {
    __m256d x = _mm256_loadu_pd(u.data() + i);
    __m256d y = _mm256_mul_pd(_mm256_sub_pd(x, vz), vs);
    // Lanes with x < zero_mass become +0.0.
    __m256d keep = _mm256_cmp_pd(x, vz, _CMP_NLT_UQ);
    _mm256_storeu_pd(out.data() + i, _mm256_and_pd(keep, y));
  }
  for (; i < u.size(); ++i) {
    out[i] = u[i] < zero_mass ? 0.0 : (u[i] - zero_mass) * scale;
  }
}

SumMax SumMaxAvx2(std::span<const double> x) {
  __m256d acc = _mm256_setzero_pd();
  __m256d mx = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    __m256d v = _mm256_loadu_pd(x.data() + i);
    acc = _mm256_add_pd(acc, v);
    // max_pd(v, mx) returns mx when v is not greater, matching the scalar
    // select.
    mx = _mm256_max_pd(v, mx);
  }
  alignas(32) double a[4];
  alignas(32) double m[4];
  _mm256_store_pd(a, acc);
  _mm256_store_pd(m, mx);
  double sum = (a[0] + a[1]) + (a[2] + a[3]);
  double m01 = m[1] > m[0] ? m[1] : m[0];
  double m23 = m[3] > m[2] ? m[3] : m[2];
  double max = m23 > m01 ? m23 : m01;
  for (; i < x.size(); ++i) {
    sum += x[i];
    max = x[i] > max ? x[i] : max;
  }
  return {sum, max};
}

size_t CountAtMostAvx2(std::span<const double> x, double threshold) {
  const __m256d vt = _mm256_set1_pd(threshold);
  size_t n = 0;
  size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    __m256d v = _mm256_loadu_pd(x.data() + i);
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, vt, _CMP_LE_OQ));
    n += static_cast<size_t>(__builtin_popcount(mask));
  }
  for (; i < x.size(); ++i) n += x[i] <= threshold ? 1 : 0;
  return n;
}

}  // namespace

const KernelTable kAvx2Table = {"avx2", AffineAvx2, ZeroInflatedAvx2,
                                SumMaxAvx2, CountAtMostAvx2};

}  // namespace delaymask::kernels::internal
