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

#include "delaymask/calibration.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

std::vector<double> Diffs(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  std::vector<double> out;
  for (size_t i = 1; i < times.size(); ++i) out.push_back(times[i] - times[i - 1]);
  return out;
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::Evaluate(double x) const {
  if (sorted_.empty()) return 0.0;
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double EmpiricalCdf::Quantile(double level) const {
  const double n = static_cast<double>(sorted_.size());
  // The slack keeps levels like 0.75 * 100 from rounding up a rank.
  double rank = std::ceil(level * n - 1e-9);
  size_t k = static_cast<size_t>(std::clamp(rank, 1.0, n));
  return sorted_[k - 1];
}

absl::StatusOr<std::vector<double>> InterArrivalSamples(
    std::span<const Event> stream) {
  if (stream.size() < 2) {
    return DataError("InsufficientData",
                     absl::StrCat(stream.size(),
                                  " events in scope; need at least 2"));
  }
  std::vector<double> times;
  times.reserve(stream.size());
  for (const Event& e : stream) times.push_back(e.t);
  return Diffs(std::move(times));
}

std::map<std::string, std::vector<double>> InterArrivalSamplesByGroup(
    std::span<const Event> stream, GroupKey key) {
  std::map<std::string, std::vector<double>> times;
  for (const Event& e : stream) times[GroupOf(e, key)].push_back(e.t);
  std::map<std::string, std::vector<double>> out;
  for (auto& [group, t] : times) out[group] = Diffs(std::move(t));
  return out;
}

double RequiredLevel(double eps, double target_crossover) {
  return target_crossover * std::exp(eps) / (1.0 - target_crossover);
}

absl::StatusOr<GapChoice> ChooseGap(const EmpiricalCdf& cdf, double eps,
                                    double target_crossover) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return ConfigError("NonPositiveParam", absl::StrCat("eps ", eps));
  }
  if (!(target_crossover > 0.0 && target_crossover < 0.5)) {
    return ConfigError("NonPositiveParam",
                       absl::StrCat("target crossover ", target_crossover,
                                    " outside (0, 0.5)"));
  }
  if (cdf.size() == 0) {
    return DataError("InsufficientData", "no inter-arrival samples");
  }
  const double level = RequiredLevel(eps, target_crossover);
  if (level > 1.0) {
    return InfeasibleError(
        "InfeasibleTarget",
        absl::StrCat("required CDF level ", level, " exceeds 1 at eps ", eps));
  }
  GapChoice out;
  out.level = level;
  out.gap = cdf.Quantile(level);
  out.percentile = 100.0 * cdf.Evaluate(out.gap);
  out.n_samples = cdf.size();
  return out;
}

double CrossoverBound(double eps, double p_g) {
  return p_g / (p_g + std::exp(eps));
}

absl::StatusOr<BatchingStats> ComputeBatchingStats(std::span<const Event> stream,
                                                   double cutoff) {
  if (stream.empty()) return DataError("EmptyStream", "no events");
  if (!(cutoff >= 0.0)) {
    return ConfigError("NonPositiveParam", absl::StrCat("cutoff ", cutoff));
  }
  std::unordered_map<std::string, size_t> actor_index;
  std::vector<std::vector<const Event*>> by_actor;
  for (const Event& e : stream) {
    auto [it, inserted] = actor_index.emplace(e.actor, by_actor.size());
    if (inserted) by_actor.emplace_back();
    by_actor[it->second].push_back(&e);
  }
  auto time_less = [](const Event* a, const Event* b) {
    return ArrivalLess(*a, *b);
  };

  BatchingStats out;
  for (auto& events : by_actor) {
    std::sort(events.begin(), events.end(), time_less);
    for (size_t i = 1; i < events.size(); ++i) {
      if (events[i]->item == events[i - 1]->item) continue;
      ++out.eligible_pairs;
      if (events[i]->t - events[i - 1]->t <= cutoff) ++out.batched_pairs;
    }
  }
  out.no_eligible_pairs = out.eligible_pairs == 0;
  out.batch_rate = out.no_eligible_pairs
                       ? 0.0
                       : static_cast<double>(out.batched_pairs) /
                             static_cast<double>(out.eligible_pairs);

  // Baseline: sweep the time-sorted stream once.
  std::vector<const Event*> sorted;
  sorted.reserve(stream.size());
  for (const Event& e : stream) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), time_less);
  std::set<std::pair<size_t, size_t>> close;
  for (size_t i = 0; i < sorted.size(); ++i) {
    size_t ai = actor_index.at(sorted[i]->actor);
    for (size_t j = i + 1;
         j < sorted.size() && sorted[j]->t - sorted[i]->t <= cutoff; ++j) {
      if (sorted[j]->item == sorted[i]->item) continue;
      size_t aj = actor_index.at(sorted[j]->actor);
      if (ai == aj) continue;
      close.emplace(std::min(ai, aj), std::max(ai, aj));
    }
  }
  out.actors = by_actor.size();
  out.actor_pairs = out.actors * (out.actors - 1) / 2;
  out.close_actor_pairs = close.size();
  out.baseline_pair_rate = out.actor_pairs == 0
                               ? 0.0
                               : static_cast<double>(out.close_actor_pairs) /
                                     static_cast<double>(out.actor_pairs);
  return out;
}

absl::StatusOr<Posterior> PosteriorLinkage(int k, double p_batch,
                                           double p_base,
                                           Observation observed) {
  if (k < 1) {
    return ConfigError("NonPositiveParam", absl::StrCat("K ", k));
  }
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_batch) || !prob(p_base)) {
    return ConfigError("NonPositiveParam", "probabilities must lie in [0, 1]");
  }
  Posterior out{1.0, p_base > p_batch};
  if (k == 1) return out;
  const double others = static_cast<double>(k - 1);
  double num;
  double den;
  if (observed == Observation::kTogether) {
    num = p_batch;
    den = p_batch + others * p_base;
  } else {
    // Weight on one specific other candidate.
    num = 1.0 - p_base;
    den = (1.0 - p_batch) + others * (1.0 - p_base);
  }
  if (den == 0.0) {
    return DataError("ZeroDenominator", "posterior denominator is zero");
  }
  out.probability = num / den;
  return out;
}

}  // namespace delaymask
