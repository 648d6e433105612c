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

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "delaymask/event.h"
#include "delaymask/status.h"
#include "gtest/gtest.h"

namespace delaymask {
namespace {

std::vector<PostedEvent> Unmodified(const std::vector<Event>& events) {
  std::vector<PostedEvent> out;
  for (const Event& e : events) {
    PostedEvent p;
    p.event = e;
    p.post_t = e.t;
    out.push_back(p);
  }
  return out;
}

SyntheticConfig Config(uint64_t seed) {
  SyntheticConfig c;
  c.horizon = 20000.0;
  c.base_rate = 0.002;
  c.n_actors = 20;
  c.n_items = 12;
  c.batch_prob = 0.3;
  c.n_groups = 3;
  c.seed = seed;
  return c;
}

TEST(GenerateStreamTest, NoBatchingMeansNoTruth) {
  SyntheticConfig c = Config(1);
  c.batch_prob = 0.0;
  auto s = GenerateStream(c);
  ASSERT_TRUE(s.ok());
  EXPECT_TRUE(s->truth.empty());
  EXPECT_FALSE(s->events.empty());
}

TEST(GenerateStreamTest, FullBatchingPairsEveryEvent) {
  SyntheticConfig c = Config(2);
  c.batch_prob = 1.0;
  auto s = GenerateStream(c);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->truth.size() * 2, s->events.size());
  std::map<std::string, const Event*> by_id;
  for (const Event& e : s->events) by_id[e.id] = &e;
  for (const TruthPair& t : s->truth) {
    const Event* a = by_id.at(t.a);
    const Event* b = by_id.at(t.b);
    EXPECT_EQ(a->t, b->t);
    EXPECT_EQ(a->actor, b->actor);
    EXPECT_NE(a->item, b->item);
    EXPECT_EQ(a->group, b->group);
  }
  for (size_t i = 1; i < s->events.size(); ++i) {
    EXPECT_TRUE(ArrivalLess(s->events[i - 1], s->events[i]));
  }
}

TEST(GenerateStreamTest, RateSanity) {
  SyntheticConfig c = Config(0);
  const double lambda = c.n_actors * c.base_rate * c.horizon;
  const double mean = lambda * (1.0 + c.batch_prob);
  const double sigma = std::sqrt(lambda * (1.0 + 3.0 * c.batch_prob));
  double total = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    c.seed = 100 + s;
    auto out = GenerateStream(c);
    ASSERT_TRUE(out.ok());
    EXPECT_NEAR(out->events.size(), mean, 4.0 * sigma);
    total += out->events.size();
  }
  EXPECT_NEAR(total / seeds, mean, 3.0 * sigma / std::sqrt(seeds));
}

TEST(GenerateStreamTest, RejectsBadConfig) {
  SyntheticConfig c = Config(1);
  c.base_rate = 0.0;
  EXPECT_FALSE(GenerateStream(c).ok());
  c = Config(1);
  c.group_rate_scale = {1.0};
  EXPECT_FALSE(GenerateStream(c).ok());
}

TEST(DeriveTruthTest, MatchesGeneratedPairsWithoutJitter) {
  SyntheticConfig c = Config(9);
  auto s = GenerateStream(c);
  ASSERT_TRUE(s.ok());
  auto derived = DeriveTruth(s->events, 0.0);
  std::set<std::pair<std::string, std::string>> want, got;
  for (const TruthPair& t : s->truth) want.emplace(std::min(t.a, t.b), std::max(t.a, t.b));
  for (const TruthPair& t : derived) got.emplace(t.a, t.b);
  EXPECT_EQ(got, want);
}

TEST(BasicAttackTest, ExactMatchWithoutMechanism) {
  auto s = GenerateStream(Config(3));
  ASSERT_TRUE(s.ok());
  std::vector<PostedEvent> posted = Unmodified(s->events);
  std::vector<double> c = {0.0, std::numeric_limits<double>::infinity()};
  auto r = BasicAttack(posted, s->truth, c);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->curve[0].recall, 1.0);
  EXPECT_EQ(r->curve[0].precision, 1.0);
  EXPECT_EQ(r->curve[1].recall, 1.0);
  EXPECT_EQ(r->curve[1].classified, r->candidate_pairs);
  EXPECT_DOUBLE_EQ(r->curve[1].precision,
                   static_cast<double>(r->truth_pairs_in_scope) /
                       r->candidate_pairs);
}

TEST(BasicAttackTest, CountsMatchBruteForce) {
  SyntheticConfig cfg = Config(4);
  cfg.intra_batch_jitter = 30.0;
  auto s = GenerateStream(cfg);
  ASSERT_TRUE(s.ok());
  std::vector<PostedEvent> posted = Unmodified(s->events);
  for (size_t i = 0; i < posted.size(); ++i) posted[i].post_t += (i * 37 % 101);
  std::set<std::pair<std::string, std::string>> truth;
  for (const TruthPair& t : s->truth) truth.emplace(std::min(t.a, t.b), std::max(t.a, t.b));
  std::vector<double> cs = {0.0, 10.0, 50.0, 200.0};
  for (PairScope scope : {PairScope::kGroup, PairScope::kAll}) {
    auto r = BasicAttack(posted, s->truth, cs, scope);
    ASSERT_TRUE(r.ok());
    for (size_t k = 0; k < cs.size(); ++k) {
      uint64_t classified = 0, tp = 0;
      for (size_t i = 0; i < posted.size(); ++i) {
        for (size_t j = i + 1; j < posted.size(); ++j) {
          const Event& a = posted[i].event;
          const Event& b = posted[j].event;
          if (a.item == b.item) continue;
          if (scope == PairScope::kGroup && a.group != b.group) continue;
          if (std::abs(posted[i].post_t - posted[j].post_t) > cs[k]) continue;
          ++classified;
          if (truth.count({std::min(a.id, b.id), std::max(a.id, b.id)})) ++tp;
        }
      }
      EXPECT_EQ(r->curve[k].classified, classified);
      EXPECT_EQ(r->curve[k].true_positives, tp);
    }
  }
}

TEST(BasicAttackTest, RecallMonotoneInThreshold) {
  auto s = GenerateStream(Config(5));
  ASSERT_TRUE(s.ok());
  std::vector<PostedEvent> posted = Unmodified(s->events);
  for (size_t i = 0; i < posted.size(); ++i) posted[i].post_t += (i * 53 % 97);
  std::vector<double> cs;
  for (int i = 0; i <= 50; ++i) cs.push_back(i * 3.0);
  auto r = BasicAttack(posted, s->truth, cs);
  ASSERT_TRUE(r.ok());
  for (size_t i = 1; i < r->curve.size(); ++i) {
    EXPECT_GE(r->curve[i].recall, r->curve[i - 1].recall);
    EXPECT_GE(r->curve[i].precision, 0.0);
    EXPECT_LE(r->curve[i].precision, 1.0);
  }
  double auc = PrAuc(*r);
  EXPECT_GT(auc, 0.0);
  EXPECT_LE(auc, 1.0);
  EXPECT_GE(PrecisionAtRecall(*r, 0.5), 0.0);
}

TEST(BasicAttackTest, Errors) {
  auto s = GenerateStream(Config(6));
  std::vector<PostedEvent> posted = Unmodified(s->events);
  std::vector<double> cs = {1.0};
  EXPECT_TRUE(HasErrorKind(BasicAttack(posted, {}, cs).status(), "EmptyTruth"));
  std::vector<TruthPair> bogus = {{"nope", s->events[0].id}};
  EXPECT_TRUE(HasErrorKind(BasicAttack(posted, bogus, cs).status(),
                           "MissingTruthEvent"));
}

TEST(InformedAttackTest, UniformGapReducesToBasic) {
  auto s = GenerateStream(Config(7));
  ASSERT_TRUE(s.ok());
  std::vector<PostedEvent> posted = Unmodified(s->events);
  for (size_t i = 0; i < posted.size(); ++i) posted[i].post_t += (i * 29 % 83);
  std::map<std::string, double> gaps = {{"g0", 20.0}, {"g1", 20.0}, {"g2", 20.0}};
  std::vector<double> ks = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> cs = {0.0, 10.0, 20.0, 40.0};
  auto inf = InformedAttack(posted, s->truth, gaps, ks);
  auto basic = BasicAttack(posted, s->truth, cs);
  ASSERT_TRUE(inf.ok());
  ASSERT_TRUE(basic.ok());
  for (size_t i = 0; i < ks.size(); ++i) {
    EXPECT_EQ(inf->curve[i].classified, basic->curve[i].classified);
    EXPECT_EQ(inf->curve[i].true_positives, basic->curve[i].true_positives);
  }
}

TEST(InformedAttackTest, ZeroCoefficientCountsOnlyTies) {
  std::vector<Event> ev(4);
  const char* items[] = {"p", "q", "p", "q"};
  const double ts[] = {0, 0, 5, 6};
  for (int i = 0; i < 4; ++i) {
    ev[i].id = std::to_string(i);
    ev[i].actor = "a";
    ev[i].item = items[i];
    ev[i].t = ts[i];
    ev[i].group = "g";
  }
  std::vector<PostedEvent> posted = Unmodified(ev);
  std::vector<TruthPair> truth = {{"0", "1"}};
  std::vector<double> ks = {0.0};
  auto r = InformedAttack(posted, truth, {{"g", 10.0}}, ks);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->curve[0].classified, 1u);
  EXPECT_EQ(r->curve[0].true_positives, 1u);
  EXPECT_TRUE(HasErrorKind(InformedAttack(posted, truth, {}, ks).status(),
                           "MissingGroupGap"));
}

}  // namespace
}  // namespace delaymask
