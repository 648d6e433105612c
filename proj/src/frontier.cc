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

#include "delaymask/frontier.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "delaymask/status.h"

namespace delaymask {

double ZiuExpectedBatched(double eps_ind, double gap, double eta) {
  double c = std::exp(-eps_ind);
  return 0.5 * gap * (1.0 + eta / (eta - c));
}

double ZiuExpectedUnbatched(double eps_ind, double gap, double eta) {
  double c = std::exp(-eps_ind);
  return 0.5 * gap * eta * eta / (eta - c);
}

double OptimalZiuEta(double eps_ind, double w) {
  if (w >= 1.0) return 1.0;
  double c = std::exp(-eps_ind);
  double eta = c * (1.0 + std::sqrt(1.0 + w / ((1.0 - w) * c)));
  return std::min(eta, 1.0);
}

WeightedOptimum MinWeightedCost(double eps_ind, double gap, double w) {
  double eta = OptimalZiuEta(eps_ind, w);
  double cost = w * ZiuExpectedBatched(eps_ind, gap, eta) +
                (1.0 - w) * ZiuExpectedUnbatched(eps_ind, gap, eta);
  return {eta, cost};
}

std::vector<FrontierPoint> NonDominated(std::vector<FrontierPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const FrontierPoint& a, const FrontierPoint& b) {
              if (a.e_batched != b.e_batched) return a.e_batched < b.e_batched;
              return a.e_unbatched < b.e_unbatched;
            });
  std::vector<FrontierPoint> out;
  double best_u = std::numeric_limits<double>::infinity();
  for (const FrontierPoint& p : points) {
    if (p.e_unbatched < best_u) {
      out.push_back(p);
      best_u = p.e_unbatched;
    }
  }
  return out;
}

std::vector<FrontierPoint> AnalyticFrontier(double eps_ind, double gap,
                                            int n_points) {
  const double lo = std::exp(-eps_ind) * (1.0 + 1e-6);
  std::vector<FrontierPoint> points;
  n_points = std::max(n_points, 1);
  for (int j = 0; j < n_points; ++j) {
    double eta = n_points == 1
                     ? 1.0
                     : lo + (1.0 - lo) * static_cast<double>(j) / (n_points - 1);
    if (j == n_points - 1) eta = 1.0;
    points.push_back({eta, ZiuExpectedBatched(eps_ind, gap, eta),
                      ZiuExpectedUnbatched(eps_ind, gap, eta)});
  }
  return NonDominated(std::move(points));
}

double RelativeFrontierDistance(const FrontierPoint& p, double eps_ind,
                                double gap, int n_sweep) {
  // The frontier is eta in [max(2c, lo), 1].
  const double c = std::exp(-eps_ind);
  const double start = std::min(1.0, std::max(2.0 * c, c * (1.0 + 1e-6)));
  double best = std::numeric_limits<double>::infinity();
  n_sweep = std::max(n_sweep, 2);
  for (int j = 0; j < n_sweep; ++j) {
    double eta = start + (1.0 - start) * static_cast<double>(j) / (n_sweep - 1);
    double eb = ZiuExpectedBatched(eps_ind, gap, eta);
    double eu = ZiuExpectedUnbatched(eps_ind, gap, eta);
    double r = std::max(std::abs(p.e_batched - eb) / eb,
                        std::abs(p.e_unbatched - eu) / eu);
    best = std::min(best, r);
  }
  return best;
}

double MaxLevel(double eps_ind, double gap) {
  double c = std::exp(-eps_ind);
  return (1.0 - c) / (c * gap);
}

absl::StatusOr<DiscretizedPair> BuildDiscretizedPair(double eps_ind,
                                                     double gap,
                                                     int cells_per_gap,
                                                     double level) {
  if (!(eps_ind > 0.0) || !(gap > 0.0)) {
    return ConfigError("NonPositiveParam", "eps_ind and gap must be positive");
  }
  if (cells_per_gap < 2) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("cells per gap ", cells_per_gap, " < 2"));
  }
  const double c = std::exp(-eps_ind);
  const double max_level = MaxLevel(eps_ind, gap);
  if (!(level > 0.0) || level > max_level * (1.0 + 1e-12)) {
    return InfeasibleError("InvalidLevel",
                           absl::StrCat("level ", level, " outside (0, ",
                                        max_level, "]"));
  }
  const int i = cells_per_gap;
  const double h = gap / i;
  const double full = std::floor(1.0 / (level * h));
  if (full < 1.0) {
    return InfeasibleError("InvalidLevel",
                           absl::StrCat("level ", level,
                                        " exceeds one cell of mass"));
  }
  if (full > 1e8) {
    return InfeasibleError("InvalidLevel",
                           absl::StrCat("level ", level, " too small"));
  }
  const size_t n = static_cast<size_t>(full);
  const double remainder = std::max(0.0, 1.0 - full * level * h) / h;

  DiscretizedPair out;
  out.level = level;
  out.cells_per_gap = i;
  out.cell_width = h;
  out.b.assign(i + n + 1, 0.0);
  out.u.assign(i + n + 1, 0.0);
  for (size_t k = i; k < i + n; ++k) out.b[k] = level;
  out.b[i + n] = remainder;
  for (size_t k = 1; k < i + n; ++k) out.u[k] = c * level;
  out.u[i + n] = c * remainder;
  out.u[0] = (1.0 - c - (i - 1.0) / i * gap * c * level) / h;
  return out;
}

FrontierPoint DiscretizedExpectations(const DiscretizedPair& pair) {
  const double h = pair.cell_width;
  double eb = 0.0;
  double eu = 0.0;
  for (size_t k = 0; k < pair.b.size(); ++k) {
    double mid = (static_cast<double>(k) + 0.5) * h;
    eb += pair.b[k] * h * mid;
    eu += pair.u[k] * h * mid;
  }
  double c_level = pair.u.size() > 1 ? pair.u[1] : 0.0;
  double eta = 1.0 - h * (pair.u[0] - c_level);
  return {eta, eb, eu};
}

absl::StatusOr<std::vector<FrontierPoint>> BruteForceFrontier(
    double eps_ind, double gap, int cells_per_gap, int level_grid) {
  if (level_grid < 1) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("level grid ", level_grid));
  }
  const double max_level = MaxLevel(eps_ind, gap);
  std::vector<FrontierPoint> points;
  for (int j = 1; j <= level_grid; ++j) {
    double level = max_level * j / level_grid;
    absl::StatusOr<DiscretizedPair> pair =
        BuildDiscretizedPair(eps_ind, gap, cells_per_gap, level);
    if (!pair.ok()) {
      // Levels too small or too large to discretize are skipped.
      if (HasErrorKind(pair.status(), "InvalidLevel")) continue;
      return pair.status();
    }
    points.push_back(DiscretizedExpectations(*pair));
  }
  return NonDominated(std::move(points));
}

}  // namespace delaymask
