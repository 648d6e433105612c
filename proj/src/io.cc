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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "delaymask/status.h"

namespace delaymask {
namespace {

absl::Status SchemaError(size_t line, absl::string_view detail) {
  return DataError("SchemaError", absl::StrCat("line ", line, ": ", detail));
}

absl::StatusOr<std::string> StringField(const Json& j, const char* name,
                                        size_t line) {
  auto it = j.find(name);
  if (it == j.end()) {
    return SchemaError(line, absl::StrCat("missing field '", name, "'"));
  }
  if (!it->is_string()) {
    return SchemaError(line, absl::StrCat("field '", name,
                                          "' must be a string"));
  }
  return it->get<std::string>();
}

absl::StatusOr<double> NumberField(const Json& j, const char* name,
                                   size_t line) {
  auto it = j.find(name);
  if (it == j.end()) {
    return SchemaError(line, absl::StrCat("missing field '", name, "'"));
  }
  if (!it->is_number()) {
    return SchemaError(line, absl::StrCat("field '", name,
                                          "' must be a number"));
  }
  double v = it->get<double>();
  if (!std::isfinite(v)) {
    return SchemaError(line, absl::StrCat("field '", name, "' is not finite"));
  }
  return v;
}

absl::StatusOr<std::optional<bool>> OptionalBool(const Json& j,
                                                 const char* name,
                                                 size_t line) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::optional<bool>();
  if (!it->is_boolean()) {
    return SchemaError(line, absl::StrCat("field '", name,
                                          "' must be a boolean"));
  }
  return std::optional<bool>(it->get<bool>());
}

absl::Status CheckTime(double t, size_t line) {
  if (!(t >= 0.0)) {
    return SchemaError(line, absl::StrCat("t=", t, " is negative"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Event> EventFromJson(const Json& j, size_t line,
                                    double time_scale) {
  if (!j.is_object()) return SchemaError(line, "expected a JSON object");
  Event e;
  DELAYMASK_ASSIGN_OR_RETURN(e.id, StringField(j, "id", line));
  DELAYMASK_ASSIGN_OR_RETURN(e.actor, StringField(j, "actor", line));
  DELAYMASK_ASSIGN_OR_RETURN(e.item, StringField(j, "item", line));
  DELAYMASK_ASSIGN_OR_RETURN(double t, NumberField(j, "t", line));
  DELAYMASK_RETURN_IF_ERROR(CheckTime(t, line));
  e.t = t * time_scale;
  DELAYMASK_ASSIGN_OR_RETURN(e.declared_batch,
                             OptionalBool(j, "declared_batch", line));
  if (auto it = j.find("group"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) {
      return SchemaError(line, "field 'group' must be a string");
    }
    e.group = it->get<std::string>();
  }
  return e;
}

Json EventToJson(const Event& e) {
  Json j;
  j["id"] = e.id;
  j["actor"] = e.actor;
  j["item"] = e.item;
  j["t"] = e.t;
  if (e.declared_batch.has_value()) j["declared_batch"] = *e.declared_batch;
  if (!e.group.empty()) j["group"] = e.group;
  return j;
}

// Calls fn(json, line) for every non-blank line.
template <typename Fn>
absl::Status ForEachJsonLine(std::istream& in, Fn fn) {
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (absl::StripAsciiWhitespace(text).empty()) continue;
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return SchemaError(line, "malformed JSON");
    DELAYMASK_RETURN_IF_ERROR(fn(j, line));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::ifstream> OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return DataError("InputNotFound", absl::StrCat("cannot open '", path, "'"));
  }
  return in;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else if (ch != '\r') {
      out.back() += ch;
    }
  }
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

absl::StatusOr<std::vector<Event>> ReadEventsJsonl(std::istream& in,
                                                   double time_scale) {
  std::vector<Event> out;
  DELAYMASK_RETURN_IF_ERROR(
      ForEachJsonLine(in, [&](const Json& j, size_t line) -> absl::Status {
        DELAYMASK_ASSIGN_OR_RETURN(Event e, EventFromJson(j, line, time_scale));
        out.push_back(std::move(e));
        return absl::OkStatus();
      }));
  return out;
}

absl::StatusOr<std::vector<Event>> ReadEventsCsv(std::istream& in,
                                                 double time_scale) {
  std::string text;
  if (!std::getline(in, text)) return std::vector<Event>{};
  std::map<std::string, size_t> col;
  std::vector<std::string> header = SplitCsvLine(text);
  for (size_t i = 0; i < header.size(); ++i) {
    col[std::string(absl::StripAsciiWhitespace(header[i]))] = i;
  }
  for (const char* name : {"id", "actor", "item", "t"}) {
    if (col.find(name) == col.end()) {
      return SchemaError(1, absl::StrCat("header lacks column '", name, "'"));
    }
  }
  std::vector<Event> out;
  size_t line = 1;
  while (std::getline(in, text)) {
    ++line;
    if (absl::StripAsciiWhitespace(text).empty()) continue;
    std::vector<std::string> f = SplitCsvLine(text);
    if (f.size() != header.size()) {
      return SchemaError(line, absl::StrCat("expected ", header.size(),
                                            " columns, found ", f.size()));
    }
    Event e;
    e.id = f[col["id"]];
    e.actor = f[col["actor"]];
    e.item = f[col["item"]];
    const std::string& ts = f[col["t"]];
    char* end = nullptr;
    double t = std::strtod(ts.c_str(), &end);
    if (ts.empty() || *end != '\0' || !std::isfinite(t)) {
      return SchemaError(line, absl::StrCat("t='", ts, "' is not a number"));
    }
    DELAYMASK_RETURN_IF_ERROR(CheckTime(t, line));
    e.t = t * time_scale;
    if (auto it = col.find("declared_batch"); it != col.end()) {
      std::string v = absl::AsciiStrToLower(f[it->second]);
      if (v == "true" || v == "1") {
        e.declared_batch = true;
      } else if (v == "false" || v == "0") {
        e.declared_batch = false;
      } else if (!v.empty()) {
        return SchemaError(line, absl::StrCat("declared_batch='", v,
                                              "' is not a boolean"));
      }
    }
    if (auto it = col.find("group"); it != col.end()) e.group = f[it->second];
    out.push_back(std::move(e));
  }
  return out;
}

absl::StatusOr<std::vector<Event>> ReadEventsFile(const std::string& path,
                                                  double time_scale) {
  DELAYMASK_ASSIGN_OR_RETURN(std::ifstream in, OpenInput(path));
  if (absl::EndsWithIgnoreCase(path, ".csv")) {
    return ReadEventsCsv(in, time_scale);
  }
  return ReadEventsJsonl(in, time_scale);
}

void WriteEventsJsonl(std::ostream& out, std::span<const Event> events) {
  for (const Event& e : events) out << EventToJson(e).dump() << '\n';
}

absl::StatusOr<std::vector<PostedEvent>> ReadPostedJsonl(std::istream& in,
                                                         double time_scale) {
  std::vector<PostedEvent> out;
  DELAYMASK_RETURN_IF_ERROR(
      ForEachJsonLine(in, [&](const Json& j, size_t line) -> absl::Status {
        PostedEvent p;
        DELAYMASK_ASSIGN_OR_RETURN(p.event, EventFromJson(j, line, time_scale));
        auto batched = j.find("batched");
        if (batched == j.end() || !batched->is_boolean()) {
          return SchemaError(line, "field 'batched' must be a boolean");
        }
        p.batched = batched->get<bool>();
        DELAYMASK_ASSIGN_OR_RETURN(double delay, NumberField(j, "delay", line));
        DELAYMASK_ASSIGN_OR_RETURN(double post_t,
                                   NumberField(j, "post_t", line));
        p.delay = delay * time_scale;
        p.post_t = post_t * time_scale;
        DELAYMASK_ASSIGN_OR_RETURN(std::optional<bool> alone,
                                   OptionalBool(j, "declared_alone", line));
        p.declared_alone = alone.value_or(false);
        out.push_back(std::move(p));
        return absl::OkStatus();
      }));
  return out;
}

absl::StatusOr<std::vector<PostedEvent>> ReadPostedFile(const std::string& path,
                                                        double time_scale) {
  DELAYMASK_ASSIGN_OR_RETURN(std::ifstream in, OpenInput(path));
  return ReadPostedJsonl(in, time_scale);
}

void WritePostedJsonl(std::ostream& out, std::span<const PostedEvent> posted) {
  for (const PostedEvent& p : posted) {
    Json j = EventToJson(p.event);
    j["batched"] = p.batched;
    j["delay"] = p.delay;
    j["post_t"] = p.post_t;
    if (p.declared_alone) j["declared_alone"] = true;
    out << j.dump() << '\n';
  }
}

absl::StatusOr<std::vector<TruthPair>> ReadTruthJsonl(std::istream& in) {
  std::vector<TruthPair> out;
  DELAYMASK_RETURN_IF_ERROR(
      ForEachJsonLine(in, [&](const Json& j, size_t line) -> absl::Status {
        if (!j.is_object()) return SchemaError(line, "expected a JSON object");
        TruthPair p;
        DELAYMASK_ASSIGN_OR_RETURN(p.a, StringField(j, "a", line));
        DELAYMASK_ASSIGN_OR_RETURN(p.b, StringField(j, "b", line));
        out.push_back(std::move(p));
        return absl::OkStatus();
      }));
  return out;
}

absl::StatusOr<std::vector<TruthPair>> ReadTruthFile(const std::string& path) {
  DELAYMASK_ASSIGN_OR_RETURN(std::ifstream in, OpenInput(path));
  return ReadTruthJsonl(in);
}

void WriteTruthJsonl(std::ostream& out, std::span<const TruthPair> truth) {
  for (const TruthPair& p : truth) {
    Json j;
    j["a"] = p.a;
    j["b"] = p.b;
    out << j.dump() << '\n';
  }
}

Json DelaySpecToJson(const DelaySpec& spec) {
  Json j;
  std::visit(Overloaded{[&](const Exponential& x) {
                          j["family"] = "exponential";
                          j["rate"] = x.rate;
                        },
                        [&](const StaircaseAbs& x) {
                          j["family"] = "staircase";
                          j["eps"] = x.eps;
                          j["delta"] = x.delta;
                          j["gamma"] = x.gamma;
                        },
                        [&](const Uniform& x) {
                          j["family"] = "uniform";
                          j["lo"] = x.lo;
                          j["hi"] = x.hi;
                        },
                        [&](const ZeroInflatedUniform& x) {
                          j["family"] = "ziu";
                          j["eta"] = x.eta;
                          j["hi"] = x.hi;
                        },
                        [&](const Shifted& x) {
                          j["family"] = "shifted";
                          j["offset"] = x.offset;
                          j["inner"] = DelaySpecToJson(*x.inner);
                        }},
             spec.variant());
  return j;
}

absl::StatusOr<DelaySpec> DelaySpecFromJson(const Json& j) {
  if (!j.is_object()) return SchemaError(0, "delay spec must be an object");
  DELAYMASK_ASSIGN_OR_RETURN(std::string family, StringField(j, "family", 0));
  auto finish = [](DelaySpec spec) -> absl::StatusOr<DelaySpec> {
    DELAYMASK_RETURN_IF_ERROR(ValidateSpec(spec));
    return spec;
  };
  if (family == "exponential") {
    DELAYMASK_ASSIGN_OR_RETURN(double rate, NumberField(j, "rate", 0));
    return finish(Exponential{rate});
  }
  if (family == "staircase") {
    DELAYMASK_ASSIGN_OR_RETURN(double eps, NumberField(j, "eps", 0));
    DELAYMASK_ASSIGN_OR_RETURN(double delta, NumberField(j, "delta", 0));
    DELAYMASK_ASSIGN_OR_RETURN(double gamma, NumberField(j, "gamma", 0));
    return finish(StaircaseAbs{eps, delta, gamma});
  }
  if (family == "uniform") {
    DELAYMASK_ASSIGN_OR_RETURN(double lo, NumberField(j, "lo", 0));
    DELAYMASK_ASSIGN_OR_RETURN(double hi, NumberField(j, "hi", 0));
    return finish(Uniform{lo, hi});
  }
  if (family == "ziu") {
    DELAYMASK_ASSIGN_OR_RETURN(double eta, NumberField(j, "eta", 0));
    DELAYMASK_ASSIGN_OR_RETURN(double hi, NumberField(j, "hi", 0));
    return finish(ZeroInflatedUniform{eta, hi});
  }
  if (family == "shifted") {
    DELAYMASK_ASSIGN_OR_RETURN(double offset, NumberField(j, "offset", 0));
    auto inner = j.find("inner");
    if (inner == j.end()) return SchemaError(0, "shifted spec lacks 'inner'");
    DELAYMASK_ASSIGN_OR_RETURN(DelaySpec in, DelaySpecFromJson(*inner));
    return finish(DelaySpec::ShiftedBy(offset, std::move(in)));
  }
  return SchemaError(0, absl::StrCat("unknown family '", family, "'"));
}

Json NoisePairToJson(const NoisePair& pair) {
  Json j;
  j["eps_ind"] = pair.eps_ind;
  j["gap"] = pair.gap;
  j["batched"] = DelaySpecToJson(pair.batched);
  j["unbatched"] = DelaySpecToJson(pair.unbatched);
  return j;
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  DELAYMASK_ASSIGN_OR_RETURN(std::ifstream in, OpenInput(path));
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return DataError("SchemaError", absl::StrCat("'", path,
                                                 "' is not valid JSON"));
  }
  return j;
}

}  // namespace delaymask
