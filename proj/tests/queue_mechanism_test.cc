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
#include <string>
#include <vector>

#include "delaymask/event.h"
#include "delaymask/rng.h"
#include "delaymask/status.h"
#include "gtest/gtest.h"

namespace delaymask {
namespace {

Event At(int64_t step, int k) {
  Event e;
  e.id = "s" + std::to_string(step) + "_" + std::to_string(k);
  e.actor = "a" + std::to_string(step);
  e.item = "i" + std::to_string(k);
  e.t = static_cast<double>(step);
  return e;
}

// One arrival per step, plus `extra[s]` more at step s.
std::vector<Event> Schedule(int steps, const std::vector<int>& extra_steps) {
  std::vector<Event> out;
  for (int s = 0; s < steps; ++s) {
    int n = 1 + static_cast<int>(
                    std::count(extra_steps.begin(), extra_steps.end(), s));
    for (int k = 0; k < n; ++k) out.push_back(At(s, k));
  }
  return out;
}

TEST(QueueStepTest, SingleArrivalOnEmptyQueue) {
  QueueState state;
  Rng rng(1);
  std::vector<Event> a = {At(0, 0)};
  auto posted = QueueStep(state, a, rng);
  ASSERT_TRUE(posted.has_value());
  EXPECT_EQ(posted->id, "s0_0");
  EXPECT_TRUE(state.pending.empty());
}

TEST(QueueStepTest, HeadPostedAndBatchEnqueued) {
  QueueState state;
  state.pending.push_back(At(0, 1));
  Rng rng(1);
  std::vector<Event> a = {At(1, 0), At(1, 1)};
  auto posted = QueueStep(state, a, rng);
  ASSERT_TRUE(posted.has_value());
  EXPECT_EQ(posted->id, "s0_1");
  EXPECT_EQ(state.pending.size(), 2u);
  state.pending.push_front(At(0, 2));
  std::vector<Event> b = {At(2, 0), At(2, 1)};
  QueueStep(state, b, rng);
  EXPECT_EQ(state.pending.size(), 4u);
}

TEST(QueueStepTest, EmptyStepPostsNothingOnEmptyQueue) {
  QueueState state;
  Rng rng(1);
  EXPECT_FALSE(QueueStep(state, {}, rng).has_value());
}

TEST(QueueStepTest, BatchOnEmptyQueuePostsEachMemberUniformly) {
  std::vector<int> first(3, 0);
  for (uint64_t seed = 0; seed < 3000; ++seed) {
    QueueState state;
    Rng rng(seed);
    std::vector<Event> a = {At(0, 0), At(0, 1), At(0, 2)};
    auto posted = QueueStep(state, a, rng);
    first[posted->item.back() - '0']++;
    EXPECT_EQ(state.pending.size(), 2u);
  }
  for (int c : first) EXPECT_NEAR(c, 1000, 120);
}

TEST(RunQueueTest, NoBatchingIsIdentity) {
  std::vector<Event> s = Schedule(40, {});
  Rng rng(5);
  auto out = RunQueue(s, rng);
  ASSERT_TRUE(out.ok());
  ASSERT_EQ(out->size(), s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ((*out)[i].event, s[i]);
    EXPECT_EQ((*out)[i].delay, 0.0);
    EXPECT_FALSE((*out)[i].batched);
  }
}

TEST(RunQueueTest, ThetaScheduleDelaysByThree) {
  std::vector<Event> s = Schedule(30, {10, 10, 15});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto out = RunQueue(s, rng);
    ASSERT_TRUE(out.ok());
    ASSERT_EQ(out->size(), s.size());
    double max_delay = 0.0;
    std::vector<std::string> singles;
    for (const PostedEvent& p : *out) {
      max_delay = std::max(max_delay, p.delay);
      if (p.event.t > 15) {
        EXPECT_EQ(p.delay, 3.0) << p.event.id;
      }
      if (p.event.t < 10) {
        EXPECT_EQ(p.delay, 0.0);
      }
      if (!p.batched) singles.push_back(p.event.id);
    }
    EXPECT_EQ(max_delay, 3.0);
    std::vector<std::string> want;
    for (const Event& e : s) {
      if (e.t != 10 && e.t != 15) want.push_back(e.id);
    }
    EXPECT_EQ(singles, want);
  }
}

TEST(RunQueueTest, OneBatchDelaysLaterEventsByBMinusOne) {
  for (int b : {2, 3, 5}) {
    std::vector<int> extra(b - 1, 6);
    std::vector<Event> s = Schedule(20, extra);
    Rng rng(b);
    auto out = RunQueue(s, rng);
    ASSERT_TRUE(out.ok());
    for (const PostedEvent& p : *out) {
      if (p.event.t > 6) {
        EXPECT_EQ(p.delay, b - 1.0);
      }
    }
  }
}

TEST(RunQueueTest, GapsDrainTheQueue) {
  std::vector<Event> s = {At(0, 0), At(0, 1), At(0, 2), At(100, 0)};
  Rng rng(2);
  auto out = RunQueue(s, rng);
  ASSERT_TRUE(out.ok());
  ASSERT_EQ(out->size(), 4u);
  EXPECT_EQ((*out)[0].post_t, 0.0);
  EXPECT_EQ((*out)[1].post_t, 1.0);
  EXPECT_EQ((*out)[2].post_t, 2.0);
  EXPECT_EQ((*out)[3].post_t, 100.0);
  EXPECT_EQ((*out)[3].delay, 0.0);
}

TEST(RunQueueTest, RejectsNonIntegerSteps) {
  Event e = At(0, 0);
  e.t = 0.5;
  std::vector<Event> s = {e};
  Rng rng(1);
  EXPECT_TRUE(HasErrorKind(RunQueue(s, rng).status(), "NonIntegerStep"));
}

TEST(RunQueueStepsTest, MatchesRunQueueOnDenseSchedule) {
  std::vector<Event> s = Schedule(25, {3, 3, 9});
  std::vector<std::vector<Event>> steps(25);
  for (const Event& e : s) steps[static_cast<size_t>(e.t)].push_back(e);
  Rng r1(7), r2(7);
  auto a = RunQueue(s, r1);
  auto b = RunQueueSteps(steps, r2);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(*a, b);
}

}  // namespace
}  // namespace delaymask
