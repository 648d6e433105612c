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

#include <limits>

#include "kernels_internal.h"

namespace delaymask::kernels::internal {
namespace {

void AffineScalar(std::span<const double> u, double offset, double scale,
                  std::span<double> out) {
  for (size_t i = 0; i < u.size(); ++i) out[i] = offset + scale * u[i];
}

void ZeroInflatedScalar(std::span<const double> u, double zero_mass,
                        double scale, std::span<double> out) {
  for (size_t i = 0; i < u.size(); ++i) {
    out[i] = u[i] < zero_mass ? 0.0 : (u[i] - zero_mass) * scale;
  }
}

SumMax SumMaxScalar(std::span<const double> x) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  double mx[4];
  for (double& m : mx) m = -std::numeric_limits<double>::infinity();
  size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    for (int l = 0; l < 4; ++l) {
      acc[l] += x[i + l];
      mx[l] = x[i + l] > mx[l] ? x[i + l] : mx[l];
    }
  }
  double sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  double m01 = mx[1] > mx[0] ? mx[1] : mx[0];
  double m23 = mx[3] > mx[2] ? mx[3] : mx[2];
  double max = m23 > m01 ? m23 : m01;
  for (; i < x.size(); ++i) {
    sum += x[i];
    max = x[i] > max ? x[i] : max;
  }
  return {sum, max};
}

size_t CountAtMostScalar(std::span<const double> x, double threshold) {
  size_t n = 0;
  for (double v : x) n += v <= threshold ? 1 : 0;
  return n;
}

}  // namespace

const KernelTable kScalarTable = {"scalar", AffineScalar, ZeroInflatedScalar,
                                  SumMaxScalar, CountAtMostScalar};

}  // namespace delaymask::kernels::internal
