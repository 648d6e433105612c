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

#ifndef DELAYMASK_ATTACK_H_
#define DELAYMASK_ATTACK_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/event.h"

namespace delaymask {

struct SyntheticConfig {
  double horizon = 3600.0;
  // Arrivals per actor per unit time, before group scaling.
  double base_rate = 0.01;
  int n_actors = 10;
  int n_items = 10;
  double batch_prob = 0.2;
  double intra_batch_jitter = 0.0;
  uint64_t seed = 0;
  // Item j belongs to group j % n_groups. Each actor runs one Poisson
  // process per group at base_rate * group_rate_scale[g] / n_groups.
  int n_groups = 1;
  std::vector<double> group_rate_scale;
};

absl::Status ValidateSynthetic(const SyntheticConfig& config);

// A true batched pair, by event id.
struct TruthPair {
  std::string a;
  std::string b;
};

struct SyntheticStream {
  std::vector<Event> events;
  std::vector<TruthPair> truth;
};

absl::StatusOr<SyntheticStream> GenerateStream(const SyntheticConfig& config);

// Same actor, different item, |t - t'| <= beta.
std::vector<TruthPair> DeriveTruth(std::span<const Event> stream, double beta);

// Which events may be compared.
enum class PairScope { kGroup, kAll };

struct CurvePoint {
  double threshold;
  double precision;
  double recall;
  uint64_t classified;
  uint64_t true_positives;
};

struct AttackReport {
  std::vector<CurvePoint> curve;
  uint64_t truth_pairs = 0;
  // Truth pairs that are cross-item pairs inside the scope.
  uint64_t truth_pairs_in_scope = 0;
  // Cross-item pairs inside the scope.
  uint64_t candidate_pairs = 0;
};

// Classifies every cross-item pair in scope as batched when
// |post_t - post_t'| <= c.
absl::StatusOr<AttackReport> BasicAttack(std::span<const PostedEvent> posted,
                                         std::span<const TruthPair> truth,
                                         std::span<const double> thresholds,
                                         PairScope scope = PairScope::kGroup);

// Same, with threshold k * gap(group) per group; curve thresholds are k.
absl::StatusOr<AttackReport> InformedAttack(
    std::span<const PostedEvent> posted, std::span<const TruthPair> truth,
    const std::map<std::string, double>& group_gap,
    std::span<const double> coeffs);

// Best precision among curve points with recall >= `recall`; 0 if none.
double PrecisionAtRecall(const AttackReport& report, double recall);

// Area under the interpolated precision-recall step curve.
double PrAuc(const AttackReport& report);

}  // namespace delaymask

#endif  // DELAYMASK_ATTACK_H_
