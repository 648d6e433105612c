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

#ifndef DELAYMASK_CALIBRATION_H_
#define DELAYMASK_CALIBRATION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/event.h"
#include "delaymask/mechanism.h"

namespace delaymask {

// Empirical CDF over a sorted sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  // Fraction of samples <= x.
  double Evaluate(double x) const;
  // Smallest sample with Evaluate(sample) >= level. level in (0, 1].
  double Quantile(double level) const;

  size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Consecutive differences of sorted arrival times over the whole stream.
absl::StatusOr<std::vector<double>> InterArrivalSamples(
    std::span<const Event> stream);

// Same, computed separately within each group.
std::map<std::string, std::vector<double>> InterArrivalSamplesByGroup(
    std::span<const Event> stream, GroupKey key);

struct GapChoice {
  double level;
  double gap;
  // 100 P(gap).
  double percentile;
  size_t n_samples;
};

// Required CDF level target e^eps / (1 - target).
double RequiredLevel(double eps, double target_crossover);

// Smallest sample g with P(g) >= RequiredLevel. InfeasibleTarget when the
// level exceeds 1.
absl::StatusOr<GapChoice> ChooseGap(const EmpiricalCdf& cdf, double eps,
                                    double target_crossover);

// Guaranteed minimum error-crossover rate P / (P + e^eps).
double CrossoverBound(double eps, double p_g);

struct BatchingStats {
  double batch_rate = 0.0;
  double baseline_pair_rate = 0.0;
  size_t eligible_pairs = 0;
  size_t batched_pairs = 0;
  size_t actors = 0;
  size_t actor_pairs = 0;
  size_t close_actor_pairs = 0;
  // No consecutive cross-item pair exists, so batch_rate is reported as 0.
  bool no_eligible_pairs = false;
};

// Per-actor consecutive cross-item pairs within `cutoff`, and the fraction
// of actor pairs with any cross-item comment pair within `cutoff`.
absl::StatusOr<BatchingStats> ComputeBatchingStats(std::span<const Event> stream,
                                                   double cutoff);

enum class Observation { kTogether, kApart };

struct Posterior {
  double probability;
  // p_base <= p_batch did not hold.
  bool ordering_warning;
};

// Posterior that a given pair of pseudonyms is the same person among K
// candidates after observing whether their events arrived together.
absl::StatusOr<Posterior> PosteriorLinkage(int k, double p_batch,
                                           double p_base, Observation observed);

}  // namespace delaymask

#endif  // DELAYMASK_CALIBRATION_H_
