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

#include "delaymask/mechanism.h"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "delaymask/frontier.h"
#include "delaymask/kernels.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

// Event indices per actor, in stream order.
std::vector<std::vector<size_t>> ByActor(std::span<const Event> stream) {
  std::unordered_map<std::string_view, size_t> slot;
  std::vector<std::vector<size_t>> out;
  for (size_t i = 0; i < stream.size(); ++i) {
    auto [it, inserted] = slot.emplace(stream[i].actor, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

// For each position in `idx`, the nearest earlier / later position whose
// item differs, or -1.
void NearestDifferentItem(std::span<const Event> stream,
                          const std::vector<size_t>& idx,
                          std::vector<long>& prev, std::vector<long>& next) {
  const long m = static_cast<long>(idx.size());
  prev.assign(m, -1);
  next.assign(m, -1);
  for (long j = 1; j < m; ++j) {
    prev[j] = stream[idx[j - 1]].item != stream[idx[j]].item ? j - 1
                                                              : prev[j - 1];
  }
  for (long j = m - 2; j >= 0; --j) {
    next[j] = stream[idx[j + 1]].item != stream[idx[j]].item ? j + 1
                                                              : next[j + 1];
  }
}

// Batched iff a same-actor, different-item event arrives in
// [t, t + beta].
std::vector<bool> ForwardWindowLabels(std::span<const Event> stream,
                                      double beta) {
  std::vector<bool> labels(stream.size(), false);
  std::vector<long> prev, next;
  for (const std::vector<size_t>& idx : ByActor(stream)) {
    NearestDifferentItem(stream, idx, prev, next);
    for (size_t j = 0; j < idx.size(); ++j) {
      const double t = stream[idx[j]].t;
      // Earlier-ordered events with the same timestamp are inside [t, t+beta].
      bool tie = prev[j] >= 0 && stream[idx[prev[j]]].t == t;
      bool after = next[j] >= 0 && stream[idx[next[j]]].t - t <= beta;
      labels[idx[j]] = tie || after;
    }
  }
  return labels;
}

struct SelfReportLabels {
  std::vector<bool> batched;
  std::vector<bool> declared_alone;
};

SelfReportLabels SelfReport(std::span<const Event> stream, double beta) {
  SelfReportLabels out{std::vector<bool>(stream.size(), false),
                       std::vector<bool>(stream.size(), false)};
  for (const std::vector<size_t>& idx : ByActor(stream)) {
    bool have_declared = false;
    double last_declared = 0.0;
    for (size_t j = 0; j < idx.size(); ++j) {
      const Event& e = stream[idx[j]];
      const bool declared = e.declared_batch.value_or(false);
      out.batched[idx[j]] =
          declared || (have_declared && e.t - last_declared <= beta);
      if (declared) {
        have_declared = true;
        last_declared = e.t;
        bool followed = j + 1 < idx.size() && stream[idx[j + 1]].t - e.t <= beta;
        out.declared_alone[idx[j]] = !followed;
      }
    }
  }
  return out;
}

bool PostedLess(const PostedEvent& a, const PostedEvent& b) {
  if (a.post_t != b.post_t) return a.post_t < b.post_t;
  return a.event.id < b.event.id;
}

}  // namespace

bool ArrivalLess(const Event& a, const Event& b) {
  if (a.t != b.t) return a.t < b.t;
  return a.id < b.id;
}

absl::Status CheckSorted(std::span<const Event> stream) {
  for (size_t i = 1; i < stream.size(); ++i) {
    if (ArrivalLess(stream[i], stream[i - 1])) {
      return DataError("UnsortedStream",
                       absl::StrCat("event '", stream[i].id, "' at index ", i,
                                    " precedes its predecessor"));
    }
  }
  return absl::OkStatus();
}

absl::string_view BatchModeName(BatchMode mode) {
  switch (mode) {
    case BatchMode::kSimultaneous:
      return "simultaneous";
    case BatchMode::kHoldWindow:
      return "hold_window";
    case BatchMode::kSelfReport:
      return "self_report";
  }
  return "unknown";
}

absl::StatusOr<BatchMode> ParseBatchMode(absl::string_view name) {
  for (BatchMode m : {BatchMode::kSimultaneous, BatchMode::kHoldWindow,
                      BatchMode::kSelfReport}) {
    if (BatchModeName(m) == name) return m;
  }
  return ConfigError("UnknownMode", absl::StrCat("no mode named '", name, "'"));
}

absl::string_view GroupKeyName(GroupKey key) {
  switch (key) {
    case GroupKey::kActor:
      return "actor";
    case GroupKey::kItem:
      return "item";
    case GroupKey::kGroup:
      return "group";
  }
  return "unknown";
}

absl::StatusOr<GroupKey> ParseGroupKey(absl::string_view name) {
  for (GroupKey k : {GroupKey::kActor, GroupKey::kItem, GroupKey::kGroup}) {
    if (GroupKeyName(k) == name) return k;
  }
  return ConfigError("UnknownGroupKey",
                     absl::StrCat("no group key named '", name, "'"));
}

const std::string& GroupOf(const Event& e, GroupKey key) {
  switch (key) {
    case GroupKey::kActor:
      return e.actor;
    case GroupKey::kItem:
      return e.item;
    case GroupKey::kGroup:
      break;
  }
  return e.group;
}

double GroupGaps::GapFor(const Event& e) const {
  auto it = gaps.find(GroupOf(e, key));
  return it == gaps.end() ? default_gap : it->second;
}

absl::Status ValidateConfig(const PrivacyConfig& config) {
  if (!std::isfinite(config.eps) || !(config.eps > 0.0)) {
    return ConfigError("NonPositiveParam", absl::StrCat("eps ", config.eps));
  }
  if (!std::isfinite(config.gap) || !(config.gap > 0.0)) {
    return ConfigError("NonPositiveParam", absl::StrCat("gap ", config.gap));
  }
  if (!(config.beta >= 0.0) || !(config.beta < config.gap)) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("beta ", config.beta, " outside [0, gap ",
                                    config.gap, ")"));
  }
  if (!(config.w >= 0.0 && config.w <= 1.0)) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("w ", config.w, " outside [0, 1]"));
  }
  return absl::OkStatus();
}

double OptimalEta(double eps, double w) { return OptimalZiuEta(eps / 2.0, w); }

absl::StatusOr<std::vector<bool>> ClassifyBatches(std::span<const Event> stream,
                                                  double beta) {
  DELAYMASK_RETURN_IF_ERROR(CheckSorted(stream));
  std::vector<bool> labels(stream.size(), false);
  std::vector<long> prev, next;
  for (const std::vector<size_t>& idx : ByActor(stream)) {
    NearestDifferentItem(stream, idx, prev, next);
    for (size_t j = 0; j < idx.size(); ++j) {
      const double t = stream[idx[j]].t;
      bool before = prev[j] >= 0 && t - stream[idx[prev[j]]].t <= beta;
      bool after = next[j] >= 0 && stream[idx[next[j]]].t - t <= beta;
      labels[idx[j]] = before || after;
    }
  }
  return labels;
}

absl::StatusOr<NoisePair> MechanismPair(const PrivacyConfig& config,
                                        Family family, double gap) {
  double effective = gap;
  if (config.mode != BatchMode::kSimultaneous && config.beta > 0.0) {
    effective = gap + config.beta;
  }
  std::optional<double> eta;
  if (family == Family::kZeroInflatedUniform) {
    eta = OptimalEta(config.eps, config.w);
  }
  return BuildPair(family, config.eps / 2.0, effective, eta);
}

absl::StatusOr<std::vector<PostedEvent>> RunMechanism(
    std::span<const Event> stream, const PrivacyConfig& config, Family family,
    Rng& rng, const GroupGaps* group_gaps) {
  DELAYMASK_RETURN_IF_ERROR(ValidateConfig(config));
  DELAYMASK_RETURN_IF_ERROR(CheckSorted(stream));
  const size_t n = stream.size();

  std::vector<bool> batched;
  std::vector<bool> declared_alone(n, false);
  switch (config.mode) {
    case BatchMode::kSimultaneous: {
      DELAYMASK_ASSIGN_OR_RETURN(batched, ClassifyBatches(stream, 0.0));
      break;
    }
    case BatchMode::kHoldWindow:
      batched = ForwardWindowLabels(stream, config.beta);
      break;
    case BatchMode::kSelfReport: {
      for (const Event& e : stream) {
        if (!e.declared_batch.has_value()) {
          return DataError("MissingDeclaredFlag",
                           absl::StrCat("event '", e.id,
                                        "' has no declared_batch"));
        }
      }
      SelfReportLabels labels = SelfReport(stream, config.beta);
      batched = std::move(labels.batched);
      declared_alone = std::move(labels.declared_alone);
      break;
    }
  }

  // One pair per distinct gap.
  std::vector<NoisePair> pairs;
  std::vector<size_t> pair_of(n, 0);
  {
    std::map<double, size_t> index;
    for (size_t i = 0; i < n; ++i) {
      double gap = group_gaps ? group_gaps->GapFor(stream[i]) : config.gap;
      auto it = index.find(gap);
      if (it == index.end()) {
        if (!(gap > config.beta) || !std::isfinite(gap)) {
          return ConfigError("NonPositiveParam",
                             absl::StrCat("gap ", gap, " for event '",
                                          stream[i].id,
                                          "' must exceed beta ", config.beta));
        }
        DELAYMASK_ASSIGN_OR_RETURN(NoisePair pair,
                                   MechanismPair(config, family, gap));
        it = index.emplace(gap, pairs.size()).first;
        pairs.push_back(std::move(pair));
      }
      pair_of[i] = it->second;
    }
  }
  if (pairs.empty()) return std::vector<PostedEvent>{};

  const int k = DrawsPerSample(pairs[0].batched);
  for (const NoisePair& p : pairs) {
    if (DrawsPerSample(p.batched) != k || DrawsPerSample(p.unbatched) != k) {
      return absl::InternalError("pair specs consume different draw counts");
    }
  }
  // Event i owns uniforms [i k, (i + 1) k) in arrival order.
  std::vector<double> uniforms(n * k);
  rng.FillUniform(uniforms);

  std::vector<std::vector<size_t>> buckets(2 * pairs.size());
  for (size_t i = 0; i < n; ++i) {
    buckets[2 * pair_of[i] + (batched[i] ? 0 : 1)].push_back(i);
  }
  std::vector<double> delay(n, 0.0);
  std::vector<double> u_buf;
  std::vector<double> d_buf;
  for (size_t b = 0; b < buckets.size(); ++b) {
    const std::vector<size_t>& members = buckets[b];
    if (members.empty()) continue;
    const NoisePair& pair = pairs[b / 2];
    u_buf.resize(members.size() * k);
    d_buf.resize(members.size());
    for (size_t m = 0; m < members.size(); ++m) {
      std::copy_n(uniforms.begin() + members[m] * k, k, u_buf.begin() + m * k);
    }
    TransformUniforms(b % 2 == 0 ? pair.batched : pair.unbatched, u_buf,
                      d_buf);
    for (size_t m = 0; m < members.size(); ++m) delay[members[m]] = d_buf[m];
  }

  const double hold =
      config.mode == BatchMode::kHoldWindow ? config.beta : 0.0;
  std::vector<PostedEvent> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    PostedEvent p;
    p.event = stream[i];
    p.batched = batched[i];
    p.delay = delay[i];
    p.post_t = stream[i].t + hold + delay[i];
    p.declared_alone = declared_alone[i];
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), PostedLess);
  return out;
}

absl::StatusOr<ClassStats> ClassDelayStats(std::span<const PostedEvent> posted,
                                           bool batched) {
  std::vector<double> totals;
  for (const PostedEvent& p : posted) {
    if (p.batched == batched) totals.push_back(p.total_delay());
  }
  if (totals.empty()) {
    return DataError("EmptyClass", absl::StrCat("no ",
                                                batched ? "batched"
                                                        : "unbatched",
                                                " events"));
  }
  const kernels::KernelTable& k = kernels::Active();
  ClassStats s;
  s.count = totals.size();
  kernels::SumMax sm = k.sum_max(totals);
  s.mean = sm.sum / static_cast<double>(s.count);
  s.max = sm.max;
  s.zero_fraction = static_cast<double>(k.count_at_most(totals, 0.0)) /
                    static_cast<double>(s.count);
  std::sort(totals.begin(), totals.end());
  s.cdf.reserve(101);
  for (int q = 0; q <= 100; ++q) {
    // Nearest rank: smallest value whose empirical CDF reaches q / 100.
    size_t rank = static_cast<size_t>(
        std::ceil(q / 100.0 * static_cast<double>(s.count) - 1e-9));
    s.cdf.push_back(totals[rank == 0 ? 0 : rank - 1]);
  }
  return s;
}

absl::StatusOr<DelayStats> ComputeDelayStats(
    std::span<const PostedEvent> posted) {
  DelayStats out;
  DELAYMASK_ASSIGN_OR_RETURN(out.batched, ClassDelayStats(posted, true));
  DELAYMASK_ASSIGN_OR_RETURN(out.unbatched, ClassDelayStats(posted, false));
  return out;
}

}  // namespace delaymask
