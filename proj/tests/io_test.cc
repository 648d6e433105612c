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

#include "delaymask/io.h"

#include <sstream>
#include <string>
#include <vector>

#include "delaymask/distributions.h"
#include "delaymask/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace delaymask {
namespace {

TEST(EventsJsonlTest, RoundTrip) {
  std::vector<Event> events(3);
  events[0] = {"a", "u", "p", 0.1, std::nullopt, ""};
  events[1] = {"b", "u", "q", 1.0 / 3.0, true, "g1"};
  events[2] = {"c", "v", "p", 1e9, false, ""};
  std::stringstream ss;
  WriteEventsJsonl(ss, events);
  auto back = ReadEventsJsonl(ss);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, events);
}

TEST(EventsJsonlTest, TimeScaleAndBlankLines) {
  std::stringstream ss(
      "{\"id\":\"a\",\"actor\":\"u\",\"item\":\"p\",\"t\":2}\n\n"
      "{\"id\":\"b\",\"actor\":\"u\",\"item\":\"q\",\"t\":3.5}\n");
  auto ev = ReadEventsJsonl(ss, 60.0);
  ASSERT_TRUE(ev.ok());
  ASSERT_EQ(ev->size(), 2u);
  EXPECT_EQ((*ev)[0].t, 120.0);
  EXPECT_EQ((*ev)[1].t, 210.0);
}

TEST(EventsJsonlTest, ErrorsNameTheLine) {
  std::stringstream missing(
      "{\"id\":\"a\",\"actor\":\"u\",\"item\":\"p\",\"t\":2}\n"
      "{\"id\":\"b\",\"actor\":\"u\",\"t\":3}\n");
  auto r = ReadEventsJsonl(missing);
  EXPECT_TRUE(HasErrorKind(r.status(), "SchemaError"));
  EXPECT_THAT(std::string(r.status().message()), ::testing::HasSubstr("line 2"));
  EXPECT_THAT(std::string(r.status().message()), ::testing::HasSubstr("item"));
  std::stringstream bad_json("{\"id\":\n");
  EXPECT_TRUE(HasErrorKind(ReadEventsJsonl(bad_json).status(), "SchemaError"));
  std::stringstream negative(
      "{\"id\":\"a\",\"actor\":\"u\",\"item\":\"p\",\"t\":-1}\n");
  EXPECT_FALSE(ReadEventsJsonl(negative).ok());
  std::stringstream wrong_type(
      "{\"id\":\"a\",\"actor\":\"u\",\"item\":\"p\",\"t\":\"x\"}\n");
  EXPECT_FALSE(ReadEventsJsonl(wrong_type).ok());
}

TEST(EventsCsvTest, ReadsColumnsInAnyOrder) {
  std::stringstream ss(
      "t,item,actor,id,declared_batch\n"
      "0,p,u,a,true\n"
      "1.5,q,u,b,false\n");
  auto ev = ReadEventsCsv(ss);
  ASSERT_TRUE(ev.ok()) << ev.status();
  ASSERT_EQ(ev->size(), 2u);
  EXPECT_EQ((*ev)[1].id, "b");
  EXPECT_EQ((*ev)[1].t, 1.5);
  EXPECT_EQ((*ev)[0].declared_batch, true);
  EXPECT_EQ((*ev)[1].declared_batch, false);
}

TEST(EventsCsvTest, Errors) {
  std::stringstream no_col("id,actor,t\na,u,0\n");
  EXPECT_TRUE(HasErrorKind(ReadEventsCsv(no_col).status(), "SchemaError"));
  std::stringstream bad_t("id,actor,item,t\na,u,p,zz\n");
  auto r = ReadEventsCsv(bad_t);
  EXPECT_THAT(std::string(r.status().message()), ::testing::HasSubstr("line 2"));
  std::stringstream ragged("id,actor,item,t\na,u,p\n");
  EXPECT_FALSE(ReadEventsCsv(ragged).ok());
}

TEST(EventsFileTest, MissingFile) {
  auto r = ReadEventsFile("/nonexistent/events.jsonl");
  EXPECT_TRUE(HasErrorKind(r.status(), "InputNotFound"));
  EXPECT_EQ(ExitCodeFor(r.status()), 3);
}

TEST(PostedJsonlTest, RoundTrip) {
  std::vector<PostedEvent> posted(2);
  posted[0].event = {"a", "u", "p", 1.0, std::nullopt, ""};
  posted[0].batched = true;
  posted[0].delay = 0.7;
  posted[0].post_t = 1.7;
  posted[1].event = {"b", "u", "q", 2.0, true, ""};
  posted[1].delay = 0.0;
  posted[1].post_t = 2.0;
  posted[1].declared_alone = true;
  std::stringstream ss;
  WritePostedJsonl(ss, posted);
  EXPECT_EQ(ss.str().find("declared_alone"), ss.str().rfind("declared_alone"));
  auto back = ReadPostedJsonl(ss);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, posted);
}

TEST(TruthJsonlTest, RoundTrip) {
  std::vector<TruthPair> truth = {{"a", "b"}, {"c", "d"}};
  std::stringstream ss;
  WriteTruthJsonl(ss, truth);
  auto back = ReadTruthJsonl(ss);
  ASSERT_TRUE(back.ok());
  ASSERT_EQ(back->size(), 2u);
  EXPECT_EQ((*back)[1].a, "c");
  EXPECT_EQ((*back)[1].b, "d");
}

TEST(DelaySpecJsonTest, RoundTripsEveryVariant) {
  std::vector<DelaySpec> specs = {
      Exponential{0.5},
      StaircaseAbs{0.3, 2.0, 0.25},
      Uniform{1.0, 3.0},
      ZeroInflatedUniform{0.7, 4.0},
      DelaySpec::ShiftedBy(2.0, Exponential{1.5}),
  };
  for (const DelaySpec& s : specs) {
    Json j = DelaySpecToJson(s);
    auto back = DelaySpecFromJson(Json::parse(j.dump()));
    ASSERT_TRUE(back.ok()) << j.dump();
    EXPECT_TRUE(*back == s) << j.dump();
  }
}

TEST(DelaySpecJsonTest, RejectsUnknownFamily) {
  auto r = DelaySpecFromJson(Json::parse(R"({"family":"gamma"})"));
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(DelaySpecFromJson(Json::parse("[1,2]")).ok());
}

TEST(NoisePairJsonTest, CarriesParameters) {
  auto pair = BuildPair(Family::kUniform, 0.5, 2.0);
  ASSERT_TRUE(pair.ok());
  Json j = NoisePairToJson(*pair);
  EXPECT_EQ(j["eps_ind"].get<double>(), 0.5);
  EXPECT_EQ(j["gap"].get<double>(), 2.0);
  EXPECT_TRUE(j.contains("batched"));
  EXPECT_TRUE(j.contains("unbatched"));
}

}  // namespace
}  // namespace delaymask
