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

#ifndef DELAYMASK_FRONTIER_H_
#define DELAYMASK_FRONTIER_H_

#include <vector>

#include "absl/status/statusor.h"

namespace delaymask {

struct FrontierPoint {
  double eta;
  double e_batched;
  double e_unbatched;
};

// Expected delays of the zero-inflated uniform pair at budget eps_ind.
double ZiuExpectedBatched(double eps_ind, double gap, double eta);
double ZiuExpectedUnbatched(double eps_ind, double gap, double eta);

// Minimizer of w E[B] + (1 - w) E[U] over eta in (e^-eps_ind, 1].
double OptimalZiuEta(double eps_ind, double w);

struct WeightedOptimum {
  double eta;
  double cost;
};

WeightedOptimum MinWeightedCost(double eps_ind, double gap, double w);

// Points that no other point beats in both coordinates, sorted by e_batched.
std::vector<FrontierPoint> NonDominated(std::vector<FrontierPoint> points);

// Sweeps eta over n_points values in (e^-eps_ind (1 + 1e-6), 1] and keeps
// the non-dominated ones.
std::vector<FrontierPoint> AnalyticFrontier(double eps_ind, double gap,
                                            int n_points);

// Smallest r such that some analytic frontier point is within relative
// distance r of `p` in both coordinates. Searched over a dense eta sweep.
double RelativeFrontierDistance(const FrontierPoint& p, double eps_ind,
                                double gap, int n_sweep = 100000);

// Piecewise-constant pair on cells of width gap / cells_per_gap. b[k] and
// u[k] are densities on cell k.
struct DiscretizedPair {
  double level;
  int cells_per_gap;
  double cell_width;
  std::vector<double> b;
  std::vector<double> u;
};

// Largest admissible level: (1 - e^-eps) / (e^-eps gap).
double MaxLevel(double eps_ind, double gap);

// Optimal discretized pair whose batched density is capped at `level`.
absl::StatusOr<DiscretizedPair> BuildDiscretizedPair(double eps_ind,
                                                     double gap,
                                                     int cells_per_gap,
                                                     double level);

// Expected delays by midpoint sums. eta is reported as the implied mass of
// the continuous part of u, 1 - u_0 * cell_width.
FrontierPoint DiscretizedExpectations(const DiscretizedPair& pair);

// Sweeps level_grid levels in (0, MaxLevel] and keeps non-dominated points.
absl::StatusOr<std::vector<FrontierPoint>> BruteForceFrontier(
    double eps_ind, double gap, int cells_per_gap, int level_grid);

}  // namespace delaymask

#endif  // DELAYMASK_FRONTIER_H_
