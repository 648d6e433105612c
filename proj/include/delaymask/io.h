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

#ifndef DELAYMASK_IO_H_
#define DELAYMASK_IO_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "delaymask/attack.h"
#include "delaymask/distributions.h"
#include "delaymask/event.h"
#include "json.hpp"

namespace delaymask {

using Json = nlohmann::ordered_json;

// One event object per line. Times are multiplied by `time_scale`.
absl::StatusOr<std::vector<Event>> ReadEventsJsonl(std::istream& in,
                                                   double time_scale = 1.0);
// Header row naming id, actor, item, t and optionally declared_batch, group.
absl::StatusOr<std::vector<Event>> ReadEventsCsv(std::istream& in,
                                                 double time_scale = 1.0);
// Picks CSV for a ".csv" suffix, JSONL otherwise.
absl::StatusOr<std::vector<Event>> ReadEventsFile(const std::string& path,
                                                  double time_scale = 1.0);

void WriteEventsJsonl(std::ostream& out, std::span<const Event> events);

// Posted events also carry batched, delay and post_t.
absl::StatusOr<std::vector<PostedEvent>> ReadPostedJsonl(std::istream& in,
                                                         double time_scale = 1.0);
absl::StatusOr<std::vector<PostedEvent>> ReadPostedFile(const std::string& path,
                                                        double time_scale = 1.0);
void WritePostedJsonl(std::ostream& out, std::span<const PostedEvent> posted);

// {"a": id, "b": id} per line.
absl::StatusOr<std::vector<TruthPair>> ReadTruthJsonl(std::istream& in);
absl::StatusOr<std::vector<TruthPair>> ReadTruthFile(const std::string& path);
void WriteTruthJsonl(std::ostream& out, std::span<const TruthPair> truth);

Json DelaySpecToJson(const DelaySpec& spec);
absl::StatusOr<DelaySpec> DelaySpecFromJson(const Json& json);

Json NoisePairToJson(const NoisePair& pair);

// Parses a whole JSON document.
absl::StatusOr<Json> ReadJsonFile(const std::string& path);

}  // namespace delaymask

#endif  // DELAYMASK_IO_H_
