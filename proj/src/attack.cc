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

#include "delaymask/attack.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string_view>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "delaymask/kernels.h"
#include "delaymask/rng.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

// Pairs i < j of a sorted sequence with x[j] - x[i] <= c.
uint64_t PairsWithin(const std::vector<double>& sorted, double c) {
  uint64_t n = 0;
  size_t lo = 0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    while (lo < j && sorted[j] - sorted[lo] > c) ++lo;
    n += j - lo;
  }
  return n;
}

uint64_t Choose2(uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Post times per scope and per (scope, item), each sorted.
struct ScopedTimes {
  std::map<std::string, std::vector<double>> scope;
  std::map<std::pair<std::string, std::string>, std::vector<double>> item;

  uint64_t CrossItemWithin(const std::string& key, double c) const {
    auto it = scope.find(key);
    if (it == scope.end()) return 0;
    uint64_t n = PairsWithin(it->second, c);
    auto lo = item.lower_bound({key, std::string()});
    for (; lo != item.end() && lo->first.first == key; ++lo) {
      n -= PairsWithin(lo->second, c);
    }
    return n;
  }
};

struct PreparedTruth {
  uint64_t total = 0;
  // |post_t difference| of in-scope truth pairs, keyed by scope.
  std::map<std::string, std::vector<double>> diffs;
  uint64_t in_scope = 0;
};

absl::StatusOr<PreparedTruth> PrepareTruth(
    std::span<const PostedEvent> posted, std::span<const TruthPair> truth,
    PairScope scope) {
  if (truth.empty()) return DataError("EmptyTruth", "no ground-truth pairs");
  std::unordered_map<std::string_view, const PostedEvent*> by_id;
  for (const PostedEvent& p : posted) by_id.emplace(p.event.id, &p);
  std::set<std::pair<std::string_view, std::string_view>> seen;
  PreparedTruth out;
  for (const TruthPair& t : truth) {
    auto a = by_id.find(t.a);
    auto b = by_id.find(t.b);
    if (a == by_id.end() || b == by_id.end()) {
      return DataError("MissingTruthEvent",
                       absl::StrCat("truth pair (", t.a, ", ", t.b,
                                    ") names an event not in the stream"));
    }
    std::string_view x = a->first;
    std::string_view y = b->first;
    if (x == y || !seen.emplace(std::min(x, y), std::max(x, y)).second) {
      continue;
    }
    ++out.total;
    const Event& ea = a->second->event;
    const Event& eb = b->second->event;
    if (ea.item == eb.item) continue;
    if (scope == PairScope::kGroup && ea.group != eb.group) continue;
    ++out.in_scope;
    const std::string& key = scope == PairScope::kGroup ? ea.group : "";
    out.diffs[key].push_back(std::abs(a->second->post_t - b->second->post_t));
  }
  return out;
}

ScopedTimes CollectTimes(std::span<const PostedEvent> posted, PairScope scope) {
  ScopedTimes out;
  for (const PostedEvent& p : posted) {
    const std::string& key = scope == PairScope::kGroup ? p.event.group : "";
    out.scope[key].push_back(p.post_t);
    out.item[{key, p.event.item}].push_back(p.post_t);
  }
  for (auto& [k, v] : out.scope) std::sort(v.begin(), v.end());
  for (auto& [k, v] : out.item) std::sort(v.begin(), v.end());
  return out;
}

uint64_t CandidatePairs(const ScopedTimes& times) {
  uint64_t n = 0;
  for (const auto& [k, v] : times.scope) n += Choose2(v.size());
  for (const auto& [k, v] : times.item) n -= Choose2(v.size());
  return n;
}

CurvePoint MakePoint(double threshold, uint64_t classified, uint64_t tp,
                     uint64_t total) {
  CurvePoint p;
  p.threshold = threshold;
  p.classified = classified;
  p.true_positives = tp;
  p.precision = classified == 0 ? 1.0
                                : static_cast<double>(tp) /
                                      static_cast<double>(classified);
  p.recall = static_cast<double>(tp) / static_cast<double>(total);
  return p;
}

}  // namespace

absl::Status ValidateSynthetic(const SyntheticConfig& c) {
  if (!(c.horizon > 0.0) || !(c.base_rate > 0.0) || c.n_actors < 1 ||
      c.n_items < 1 || c.n_groups < 1) {
    return ConfigError("NonPositiveParam",
                       "horizon, base_rate, n_actors, n_items and n_groups "
                       "must be positive");
  }
  if (!(c.batch_prob >= 0.0 && c.batch_prob <= 1.0)) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("batch_prob ", c.batch_prob));
  }
  if (!(c.intra_batch_jitter >= 0.0)) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("jitter ", c.intra_batch_jitter));
  }
  if (!c.group_rate_scale.empty() &&
      c.group_rate_scale.size() != static_cast<size_t>(c.n_groups)) {
    return ConfigError("NonPositiveParam",
                       "group_rate_scale needs one entry per group");
  }
  for (double s : c.group_rate_scale) {
    if (!(s > 0.0)) {
      return ConfigError("NonPositiveParam", "group rate scales must be > 0");
    }
  }
  if (c.batch_prob > 0.0 && c.n_items < 2 * c.n_groups) {
    return ConfigError("NonPositiveParam",
                       "batching needs at least two items per group");
  }
  return absl::OkStatus();
}

absl::StatusOr<SyntheticStream> GenerateStream(const SyntheticConfig& config) {
  DELAYMASK_RETURN_IF_ERROR(ValidateSynthetic(config));
  Rng rng = Rng::ForStream(config.seed, StreamId::kSynthetic);
  std::vector<double> scale = config.group_rate_scale;
  if (scale.empty()) scale.assign(config.n_groups, 1.0);
  const double scale_sum = std::accumulate(scale.begin(), scale.end(), 0.0);
  std::vector<std::vector<int>> items(config.n_groups);
  for (int j = 0; j < config.n_items; ++j) {
    items[j % config.n_groups].push_back(j);
  }

  struct Raw {
    double t;
    int actor;
    int item;
    int group;
  };
  std::vector<Raw> raw;
  std::vector<std::pair<size_t, size_t>> truth_raw;
  for (int a = 0; a < config.n_actors; ++a) {
    for (int g = 0; g < config.n_groups; ++g) {
      const double rate = config.base_rate * scale[g] / scale_sum;
      const std::vector<int>& pool = items[g];
      if (pool.empty()) continue;
      double t = 0.0;
      while (true) {
        t += -std::log1p(-rng.Uniform()) / rate;
        if (t >= config.horizon) break;
        size_t pick = static_cast<size_t>(rng.Below(pool.size()));
        raw.push_back({t, a, pool[pick], g});
        if (rng.Uniform() < config.batch_prob) {
          size_t other = static_cast<size_t>(rng.Below(pool.size() - 1));
          if (other >= pick) ++other;
          double dt = config.intra_batch_jitter * rng.Uniform();
          truth_raw.emplace_back(raw.size() - 1, raw.size());
          raw.push_back({t + dt, a, pool[other], g});
        }
      }
    }
  }

  // Ids follow arrival order, zero padded so string order matches.
  std::vector<size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return raw[x].t < raw[y].t;
  });
  const int width = static_cast<int>(std::to_string(raw.size()).size());
  std::vector<std::string> id_of(raw.size());
  SyntheticStream out;
  out.events.reserve(raw.size());
  for (size_t rank = 0; rank < order.size(); ++rank) {
    const Raw& r = raw[order[rank]];
    id_of[order[rank]] = absl::StrFormat("e%0*d", width, rank);
    Event e;
    e.id = id_of[order[rank]];
    e.actor = absl::StrCat("a", r.actor);
    e.item = absl::StrCat("i", r.item);
    e.t = r.t;
    e.group = absl::StrCat("g", r.group);
    out.events.push_back(std::move(e));
  }
  for (const auto& [x, y] : truth_raw) {
    out.truth.push_back({id_of[x], id_of[y]});
  }
  return out;
}

std::vector<TruthPair> DeriveTruth(std::span<const Event> stream, double beta) {
  std::map<std::string_view, std::vector<size_t>> by_actor;
  for (size_t i = 0; i < stream.size(); ++i) {
    by_actor[stream[i].actor].push_back(i);
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  for (auto& [actor, idx] : by_actor) {
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return ArrivalLess(stream[a], stream[b]);
    });
    for (size_t x = 0; x < idx.size(); ++x) {
      for (size_t y = x + 1;
           y < idx.size() && stream[idx[y]].t - stream[idx[x]].t <= beta; ++y) {
        if (stream[idx[x]].item != stream[idx[y]].item) {
          pairs.emplace_back(std::min(idx[x], idx[y]), std::max(idx[x], idx[y]));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<TruthPair> out;
  for (const auto& [a, b] : pairs) out.push_back({stream[a].id, stream[b].id});
  return out;
}

absl::StatusOr<AttackReport> BasicAttack(std::span<const PostedEvent> posted,
                                         std::span<const TruthPair> truth,
                                         std::span<const double> thresholds,
                                         PairScope scope) {
  DELAYMASK_ASSIGN_OR_RETURN(PreparedTruth prepared,
                             PrepareTruth(posted, truth, scope));
  const ScopedTimes times = CollectTimes(posted, scope);
  const kernels::KernelTable& k = kernels::Active();
  AttackReport report;
  report.truth_pairs = prepared.total;
  report.truth_pairs_in_scope = prepared.in_scope;
  report.candidate_pairs = CandidatePairs(times);
  for (double c : thresholds) {
    uint64_t classified = 0;
    uint64_t tp = 0;
    for (const auto& [key, v] : times.scope) {
      classified += times.CrossItemWithin(key, c);
    }
    for (const auto& [key, d] : prepared.diffs) tp += k.count_at_most(d, c);
    report.curve.push_back(MakePoint(c, classified, tp, prepared.total));
  }
  return report;
}

absl::StatusOr<AttackReport> InformedAttack(
    std::span<const PostedEvent> posted, std::span<const TruthPair> truth,
    const std::map<std::string, double>& group_gap,
    std::span<const double> coeffs) {
  DELAYMASK_ASSIGN_OR_RETURN(PreparedTruth prepared,
                             PrepareTruth(posted, truth, PairScope::kGroup));
  const ScopedTimes times = CollectTimes(posted, PairScope::kGroup);
  for (const auto& [key, v] : times.scope) {
    if (group_gap.find(key) == group_gap.end()) {
      return ConfigError("MissingGroupGap",
                         absl::StrCat("no gap for group '", key, "'"));
    }
  }
  const kernels::KernelTable& k = kernels::Active();
  AttackReport report;
  report.truth_pairs = prepared.total;
  report.truth_pairs_in_scope = prepared.in_scope;
  report.candidate_pairs = CandidatePairs(times);
  for (double coeff : coeffs) {
    uint64_t classified = 0;
    uint64_t tp = 0;
    for (const auto& [key, v] : times.scope) {
      classified += times.CrossItemWithin(key, coeff * group_gap.at(key));
    }
    for (const auto& [key, d] : prepared.diffs) {
      tp += k.count_at_most(d, coeff * group_gap.at(key));
    }
    report.curve.push_back(MakePoint(coeff, classified, tp, prepared.total));
  }
  return report;
}

double PrecisionAtRecall(const AttackReport& report, double recall) {
  double best = 0.0;
  for (const CurvePoint& p : report.curve) {
    if (p.recall >= recall - 1e-12) best = std::max(best, p.precision);
  }
  return best;
}

double PrAuc(const AttackReport& report) {
  std::vector<CurvePoint> pts = report.curve;
  std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return a.recall < b.recall;
  });
  // Interpolated precision: best precision at this recall or higher.
  std::vector<double> interp(pts.size());
  double best = 0.0;
  for (size_t i = pts.size(); i-- > 0;) {
    best = std::max(best, pts[i].precision);
    interp[i] = best;
  }
  double area = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    area += (pts[i].recall - prev) * interp[i];
    prev = pts[i].recall;
  }
  return area;
}

}  // namespace delaymask
