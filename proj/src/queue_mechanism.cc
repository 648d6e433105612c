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

#include "delaymask/queue_mechanism.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "delaymask/status.h"

namespace delaymask {

std::optional<Event> QueueStep(QueueState& state, std::span<const Event> arrivals,
                               Rng& rng) {
  ++state.step;
  std::vector<Event> shuffled(arrivals.begin(), arrivals.end());
  rng.Shuffle(std::span<Event>(shuffled));
  std::optional<Event> posted;
  size_t first = 0;
  if (!state.pending.empty()) {
    posted = std::move(state.pending.front());
    state.pending.pop_front();
  } else if (!shuffled.empty()) {
    // A uniformly random member of the batch goes out now.
    posted = std::move(shuffled[0]);
    first = 1;
  }
  for (size_t i = first; i < shuffled.size(); ++i) {
    state.pending.push_back(std::move(shuffled[i]));
  }
  return posted;
}

std::vector<PostedEvent> RunQueueSteps(
    const std::vector<std::vector<Event>>& arrivals_per_step, Rng& rng,
    int64_t first_step) {
  QueueState state;
  state.step = first_step;
  std::unordered_set<std::string> in_batch;
  std::vector<PostedEvent> out;
  auto emit = [&](std::optional<Event> e, int64_t step) {
    if (!e.has_value()) return;
    PostedEvent p;
    p.batched = in_batch.count(e->id) > 0;
    p.post_t = static_cast<double>(step);
    p.delay = p.post_t - e->t;
    p.event = std::move(*e);
    out.push_back(std::move(p));
  };
  for (size_t s = 0; s < arrivals_per_step.size(); ++s) {
    const std::vector<Event>& arrivals = arrivals_per_step[s];
    if (arrivals.size() > 1) {
      for (const Event& e : arrivals) in_batch.insert(e.id);
    }
    int64_t step = first_step + static_cast<int64_t>(s);
    state.step = step - 1;
    emit(QueueStep(state, arrivals, rng), step);
  }
  int64_t step = first_step + static_cast<int64_t>(arrivals_per_step.size());
  while (!state.pending.empty()) {
    state.step = step - 1;
    emit(QueueStep(state, {}, rng), step);
    ++step;
  }
  return out;
}

absl::StatusOr<std::vector<PostedEvent>> RunQueue(std::span<const Event> stream,
                                                  Rng& rng) {
  DELAYMASK_RETURN_IF_ERROR(CheckSorted(stream));
  if (stream.empty()) return std::vector<PostedEvent>{};
  for (const Event& e : stream) {
    if (e.t != std::floor(e.t) || e.t > 9.0e15) {
      return DataError("NonIntegerStep",
                       absl::StrCat("event '", e.id, "' has t=", e.t,
                                    "; queue mode needs integer steps"));
    }
  }
  // Walk only the steps that have arrivals or a non-empty queue.
  QueueState state;
  std::unordered_set<std::string> in_batch;
  std::vector<PostedEvent> out;
  std::vector<Event> arrivals;
  size_t i = 0;
  int64_t step = static_cast<int64_t>(stream.front().t);
  while (i < stream.size() || !state.pending.empty()) {
    arrivals.clear();
    if (i < stream.size() && state.pending.empty()) {
      step = std::max(step, static_cast<int64_t>(stream[i].t));
    }
    while (i < stream.size() && static_cast<int64_t>(stream[i].t) == step) {
      arrivals.push_back(stream[i++]);
    }
    if (arrivals.size() > 1) {
      for (const Event& e : arrivals) in_batch.insert(e.id);
    }
    state.step = step - 1;
    std::optional<Event> e = QueueStep(state, arrivals, rng);
    if (e.has_value()) {
      PostedEvent p;
      p.batched = in_batch.count(e->id) > 0;
      p.post_t = static_cast<double>(step);
      p.delay = p.post_t - e->t;
      p.event = std::move(*e);
      out.push_back(std::move(p));
    }
    ++step;
  }
  return out;
}

}  // namespace delaymask
