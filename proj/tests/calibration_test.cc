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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "delaymask/event.h"
#include "delaymask/mechanism.h"
#include "delaymask/rng.h"
#include "delaymask/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace delaymask {
namespace {

Event Ev(std::string id, std::string actor, std::string item, double t) {
  Event e;
  e.id = std::move(id);
  e.actor = std::move(actor);
  e.item = std::move(item);
  e.t = t;
  return e;
}

TEST(InterArrivalTest, ConsecutiveDifferences) {
  std::vector<Event> s = {Ev("a", "u", "p", 0), Ev("b", "v", "p", 3),
                          Ev("c", "u", "q", 10)};
  auto gaps = InterArrivalSamples(s);
  ASSERT_TRUE(gaps.ok());
  EXPECT_THAT(*gaps, ::testing::ElementsAre(3.0, 7.0));
  std::vector<Event> one = {Ev("a", "u", "p", 0)};
  EXPECT_TRUE(HasErrorKind(InterArrivalSamples(one).status(),
                           "InsufficientData"));
}

TEST(InterArrivalTest, PerGroupMatchesSeparateStreams) {
  std::vector<Event> s = {Ev("a", "u", "p", 0), Ev("b", "v", "p", 1),
                          Ev("c", "u", "q", 4), Ev("d", "v", "q", 9),
                          Ev("e", "u", "r", 10)};
  auto by = InterArrivalSamplesByGroup(s, GroupKey::kActor);
  ASSERT_EQ(by.size(), 2u);
  EXPECT_THAT(by["u"], ::testing::ElementsAre(4.0, 6.0));
  EXPECT_THAT(by["v"], ::testing::ElementsAre(8.0));
  std::vector<Event> only_u = {s[0], s[2], s[4]};
  EXPECT_EQ(by["u"], *InterArrivalSamples(only_u));
}

TEST(EmpiricalCdfTest, EvaluateAndQuantile) {
  EmpiricalCdf cdf({4, 1, 3, 2});
  EXPECT_EQ(cdf.Evaluate(0.5), 0.0);
  EXPECT_EQ(cdf.Evaluate(2.0), 0.5);
  EXPECT_EQ(cdf.Evaluate(1e300), 1.0);
  EXPECT_EQ(cdf.Quantile(0.5), 2.0);
  EXPECT_EQ(cdf.Quantile(0.51), 3.0);
  EXPECT_EQ(cdf.Quantile(1.0), 4.0);
}

TEST(ChooseGapTest, WorkedExampleGivesSeventyFifthPercentile) {
  EXPECT_NEAR(RequiredLevel(0.8, 0.25), 0.7418, 1e-4);
  std::vector<double> samples;
  for (int i = 1; i <= 100; ++i) samples.push_back(i);
  auto g = ChooseGap(EmpiricalCdf(samples), 0.8, 0.25);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->gap, 75.0);
  EXPECT_EQ(g->percentile, 75.0);
  EXPECT_EQ(g->n_samples, 100u);
}

TEST(ChooseGapTest, TinyTargetPicksSmallestSample) {
  auto g = ChooseGap(EmpiricalCdf({5, 2, 9}), 1.0, 1e-9);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->gap, 2.0);
}

TEST(ChooseGapTest, Infeasible) {
  EXPECT_NEAR(RequiredLevel(0.1, 0.49), 1.0617, 1e-3);
  auto g = ChooseGap(EmpiricalCdf({1, 2, 3}), 0.1, 0.49);
  EXPECT_TRUE(HasErrorKind(g.status(), "InfeasibleTarget"));
  EXPECT_EQ(g.status().code(), absl::StatusCode::kOutOfRange);
}

TEST(ChooseGapTest, Monotone) {
  Rng rng(3);
  std::vector<double> samples(500);
  for (double& x : samples) x = -std::log1p(-rng.Uniform()) * 60.0;
  EmpiricalCdf cdf(samples);
  double prev = 0.0;
  for (double target = 0.01; target < 0.3; target += 0.01) {
    auto g = ChooseGap(cdf, 0.8, target);
    ASSERT_TRUE(g.ok());
    EXPECT_GE(g->gap, prev);
    prev = g->gap;
  }
  // The required level grows with eps, so g does too.
  prev = 0.0;
  for (double eps = 0.1; eps < 1.0; eps += 0.1) {
    auto g = ChooseGap(cdf, eps, 0.2);
    ASSERT_TRUE(g.ok());
    EXPECT_GE(g->gap, prev);
    prev = g->gap;
  }
}

TEST(CrossoverBoundTest, Values) {
  EXPECT_NEAR(CrossoverBound(0.8, 0.75), 0.2521, 1e-4);
  EXPECT_GE(CrossoverBound(0.8, 0.75), 0.25);
  EXPECT_EQ(CrossoverBound(0.0, 1.0), 0.5);
  EXPECT_NEAR(CrossoverBound(1.0, 1e-12), 0.0, 1e-11);
  for (double eps : {0.01, 0.5, 3.0}) EXPECT_LT(CrossoverBound(eps, 1.0), 0.5);
}

TEST(BatchingStatsTest, WorkedSequenceIsHalf) {
  std::vector<Event> s = {Ev("1", "r", "p1", 0), Ev("2", "r", "p2", 5),
                          Ev("3", "r", "p2", 6), Ev("4", "r", "p2", 8),
                          Ev("5", "r", "p3", 100)};
  auto st = ComputeBatchingStats(s, 5.0);
  ASSERT_TRUE(st.ok());
  EXPECT_EQ(st->eligible_pairs, 2u);
  EXPECT_EQ(st->batch_rate, 0.5);
}

TEST(BatchingStatsTest, NoEligiblePairs) {
  std::vector<Event> s = {Ev("1", "r", "p1", 0), Ev("2", "r", "p1", 1)};
  auto st = ComputeBatchingStats(s, 5.0);
  ASSERT_TRUE(st.ok());
  EXPECT_TRUE(st->no_eligible_pairs);
  EXPECT_EQ(st->batch_rate, 0.0);
  EXPECT_TRUE(HasErrorKind(ComputeBatchingStats({}, 1.0).status(),
                           "EmptyStream"));
}

TEST(BatchingStatsTest, BaselineMatchesBruteForce) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::vector<Event> s;
    double t = 0;
    for (int i = 0; i < 150; ++i) {
      t += rng.Uniform() * 3.0;
      s.push_back(Ev(std::to_string(i), "a" + std::to_string(rng.Below(12)),
                     "p" + std::to_string(rng.Below(6)), t));
    }
    const double cutoff = 2.0;
    std::set<std::string> actors;
    for (const Event& e : s) actors.insert(e.actor);
    std::set<std::pair<std::string, std::string>> close;
    for (const Event& a : s) {
      for (const Event& b : s) {
        if (a.actor < b.actor && a.item != b.item &&
            std::abs(a.t - b.t) <= cutoff) {
          close.emplace(a.actor, b.actor);
        }
      }
    }
    auto st = ComputeBatchingStats(s, cutoff);
    ASSERT_TRUE(st.ok());
    size_t n = actors.size();
    EXPECT_EQ(st->actors, n);
    EXPECT_EQ(st->close_actor_pairs, close.size());
    EXPECT_DOUBLE_EQ(st->baseline_pair_rate,
                     static_cast<double>(close.size()) / (n * (n - 1) / 2));
  }
}

TEST(PosteriorTest, WorkedNumbers) {
  auto together = PosteriorLinkage(10, 0.301, 0.0066, Observation::kTogether);
  ASSERT_TRUE(together.ok());
  EXPECT_NEAR(together->probability, 0.8351, 1e-4);
  EXPECT_FALSE(together->ordering_warning);
  auto apart = PosteriorLinkage(10, 0.301, 0.0066, Observation::kApart);
  ASSERT_TRUE(apart.ok());
  EXPECT_NEAR(apart->probability, 0.9934 / (0.699 + 9 * 0.9934), 1e-9);
  EXPECT_NEAR(apart->probability, 0.10305, 1e-5);
  EXPECT_EQ(PosteriorLinkage(1, 0.3, 0.1, Observation::kTogether)
                ->probability,
            1.0);
  EXPECT_EQ(PosteriorLinkage(1, 0.3, 0.1, Observation::kApart)->probability,
            1.0);
}

TEST(PosteriorTest, PriorWhenUninformativeAndMonotoneInK) {
  for (int k = 1; k < 20; ++k) {
    EXPECT_NEAR(PosteriorLinkage(k, 0.2, 0.2, Observation::kTogether)
                    ->probability,
                1.0 / k, 1e-12);
  }
  double prev = 1.0;
  for (int k = 1; k < 50; ++k) {
    double p = PosteriorLinkage(k, 0.3, 0.01, Observation::kTogether)
                   ->probability;
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(PosteriorTest, Errors) {
  EXPECT_TRUE(PosteriorLinkage(3, 0.1, 0.5, Observation::kTogether)
                  ->ordering_warning);
  EXPECT_TRUE(HasErrorKind(
      PosteriorLinkage(3, 0.0, 0.0, Observation::kTogether).status(),
      "ZeroDenominator"));
  EXPECT_FALSE(PosteriorLinkage(0, 0.3, 0.1, Observation::kTogether).ok());
}

}  // namespace
}  // namespace delaymask
