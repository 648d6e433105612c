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

#ifndef DELAYMASK_KERNELS_H_
#define DELAYMASK_KERNELS_H_

#include <cstddef>
#include <span>

namespace delaymask::kernels {

struct SumMax {
  double sum;
  double max;
};

// Bulk loops used by sampling, delay statistics and the attack sweep.
// Every variant must return bit-identical results to the scalar table.
struct KernelTable {
  const char* name;
  // out[i] = offset + scale * u[i]
  void (*affine)(std::span<const double> u, double offset, double scale,
                 std::span<double> out);
  // out[i] = u[i] < zero_mass ? 0 : (u[i] - zero_mass) * scale
  void (*zero_inflated)(std::span<const double> u, double zero_mass,
                        double scale, std::span<double> out);
  // Sum in four interleaved lanes, combined as (l0 + l1) + (l2 + l3), then
  // the tail in order. Max of an empty span is -inf.
  SumMax (*sum_max)(std::span<const double> x);
  // Number of x[i] <= threshold.
  size_t (*count_at_most)(std::span<const double> x, double threshold);
};

const KernelTable& Scalar();

// Null when not compiled in or when the CPU lacks AVX2.
const KernelTable* Avx2();

// Best available table. DELAYMASK_KERNELS=scalar forces the scalar path.
const KernelTable& Active();

}  // namespace delaymask::kernels

#endif  // DELAYMASK_KERNELS_H_
