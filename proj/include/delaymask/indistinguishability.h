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

#ifndef DELAYMASK_INDISTINGUISHABILITY_H_
#define DELAYMASK_INDISTINGUISHABILITY_H_

#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/distributions.h"

namespace delaymask {

// Density exp(log_coef - decay * (x - lo)) on [lo, hi).
struct DensityPiece {
  double lo;
  double hi;
  double log_coef;
  double decay;
};

struct PointMass {
  double at;
  double mass;
};

// Pieces are sorted and non-overlapping.
struct PiecewiseDensity {
  std::vector<DensityPiece> pieces;
  std::vector<PointMass> atoms;
};

// Point beyond which at most `tail_mass` probability remains.
double EffectiveSupportEnd(const DelaySpec& spec, double tail_mass);

// Exact piecewise form of `spec`, truncated at `horizon`.
absl::StatusOr<PiecewiseDensity> ToPiecewise(const DelaySpec& spec,
                                             double horizon);

struct IndistinguishabilityReport {
  // sup over sets S and shifts t0 of log(Pr[B in S] / Pr[U in S - t0]).
  double max_log_ratio;
  double budget;
  bool passes;
  // Where the supremum is attained.
  double witness_lo;
  double witness_hi;
  double witness_shift;
};

absl::StatusOr<IndistinguishabilityReport> VerifyIndistinguishable(
    const NoisePair& pair, int grid_n);

}  // namespace delaymask

#endif  // DELAYMASK_INDISTINGUISHABILITY_H_
