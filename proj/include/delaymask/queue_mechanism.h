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

#ifndef DELAYMASK_QUEUE_MECHANISM_H_
#define DELAYMASK_QUEUE_MECHANISM_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/event.h"
#include "delaymask/rng.h"

namespace delaymask {

// Discrete-time FIFO that posts at most one event per step.
struct QueueState {
  std::deque<Event> pending;
  int64_t step = 0;
};

// Advances one step: posts the queue head (or one arrival when the queue is
// empty) and enqueues the remaining arrivals in random order. Returns
// nothing only when queue and arrivals are both empty.
std::optional<Event> QueueStep(QueueState& state, std::span<const Event> arrivals,
                               Rng& rng);

// Runs arrivals_per_step[s] at step first_step + s, then drains the queue.
// post_t is the posting step and delay the number of steps waited. An event
// is marked batched when it arrived together with another one.
std::vector<PostedEvent> RunQueueSteps(
    const std::vector<std::vector<Event>>& arrivals_per_step, Rng& rng,
    int64_t first_step = 0);

// Same, with steps taken from integer event times. Steps without arrivals
// drain one queued event.
absl::StatusOr<std::vector<PostedEvent>> RunQueue(std::span<const Event> stream,
                                                  Rng& rng);

}  // namespace delaymask

#endif  // DELAYMASK_QUEUE_MECHANISM_H_
