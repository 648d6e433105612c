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

#ifndef DELAYMASK_EVENT_H_
#define DELAYMASK_EVENT_H_

#include <optional>
#include <span>
#include <string>

#include "absl/status/status.h"

namespace delaymask {

// One pseudonymous action. `group` is an optional scope label (category,
// output address) used by calibration and the attack.
struct Event {
  std::string id;
  std::string actor;
  std::string item;
  double t = 0.0;
  std::optional<bool> declared_batch;
  std::string group;

  friend bool operator==(const Event&, const Event&) = default;
};

struct PostedEvent {
  Event event;
  bool batched = false;
  // Noise delay only; post_t also includes any hold.
  double delay = 0.0;
  double post_t = 0.0;
  // Declared as batched but no other event by the same actor followed.
  bool declared_alone = false;

  double total_delay() const { return post_t - event.t; }

  friend bool operator==(const PostedEvent&, const PostedEvent&) = default;
};

// Orders by (t, id).
bool ArrivalLess(const Event& a, const Event& b);

// UnsortedStream unless events are ordered by (t, id).
absl::Status CheckSorted(std::span<const Event> stream);

}  // namespace delaymask

#endif  // DELAYMASK_EVENT_H_
