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

#ifndef DELAYMASK_MECHANISM_H_
#define DELAYMASK_MECHANISM_H_

#include <map>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/distributions.h"
#include "delaymask/event.h"
#include "delaymask/rng.h"

namespace delaymask {

enum class BatchMode { kSimultaneous, kHoldWindow, kSelfReport };

absl::string_view BatchModeName(BatchMode mode);
absl::StatusOr<BatchMode> ParseBatchMode(absl::string_view name);

struct PrivacyConfig {
  double eps = 1.0;
  double gap = 1.0;
  double beta = 0.0;
  double w = 1.0;
  BatchMode mode = BatchMode::kSimultaneous;
};

absl::Status ValidateConfig(const PrivacyConfig& config);

// Minimizer of the weighted delay for the zero-inflated uniform mechanism at
// mechanism budget eps (the pair itself uses eps / 2).
double OptimalEta(double eps, double w);

// Which field groups events for per-group gaps and scopes.
enum class GroupKey { kActor, kItem, kGroup };

absl::string_view GroupKeyName(GroupKey key);
absl::StatusOr<GroupKey> ParseGroupKey(absl::string_view name);
const std::string& GroupOf(const Event& e, GroupKey key);

// Per-group gap with a fallback for groups that have no entry.
struct GroupGaps {
  GroupKey key = GroupKey::kGroup;
  std::map<std::string, double> gaps;
  double default_gap = 0.0;

  double GapFor(const Event& e) const;
};

// labels[i] is true iff some event by the same actor on a different item
// lies within beta of stream[i].
absl::StatusOr<std::vector<bool>> ClassifyBatches(std::span<const Event> stream,
                                                  double beta);

// Delays every event and returns them ordered by (post_t, id). With
// `group_gaps`, config.gap is replaced per event by its group's gap.
absl::StatusOr<std::vector<PostedEvent>> RunMechanism(
    std::span<const Event> stream, const PrivacyConfig& config, Family family,
    Rng& rng, const GroupGaps* group_gaps = nullptr);

// Pair actually used for an event with base gap `gap`.
absl::StatusOr<NoisePair> MechanismPair(const PrivacyConfig& config,
                                        Family family, double gap);

struct ClassStats {
  size_t count = 0;
  double mean = 0.0;
  double max = 0.0;
  // Fraction of events with zero total delay.
  double zero_fraction = 0.0;
  // Total delay at quantile levels 0, 0.01, ..., 1.
  std::vector<double> cdf;
};

struct DelayStats {
  ClassStats batched;
  ClassStats unbatched;
};

// Statistics of post_t - t for one class. EmptyClass when none.
absl::StatusOr<ClassStats> ClassDelayStats(std::span<const PostedEvent> posted,
                                           bool batched);

// Both classes. EmptyClass if either is missing.
absl::StatusOr<DelayStats> ComputeDelayStats(
    std::span<const PostedEvent> posted);

}  // namespace delaymask

#endif  // DELAYMASK_MECHANISM_H_
