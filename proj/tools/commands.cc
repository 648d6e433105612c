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

#include "commands.h"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "delaymask/attack.h"
#include "delaymask/calibration.h"
#include "delaymask/distributions.h"
#include "delaymask/frontier.h"
#include "delaymask/io.h"
#include "delaymask/mechanism.h"
#include "delaymask/queue_mechanism.h"
#include "delaymask/rng.h"
#include "delaymask/status.h"

namespace delaymask::cli {
namespace {

// Reads {"subcommand": {"flag-name": value}} plus top-level flags.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    Json j = Json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        j[name] = opt->results().size() == 1 ? Json(opt->results().front())
                                             : Json(opt->results());
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j = Json::parse(input, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw CLI::ConversionError("config", "config file must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    Flatten(j, {}, items);
    return items;
  }

 private:
  static std::string Scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void Flatten(const Json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      std::string name = absl::StrReplaceAll(key, {{"_", "-"}});
      if (value.is_object()) {
        std::vector<std::string> next = parents;
        next.push_back(key);
        Flatten(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = name;
      if (value.is_array()) {
        for (const Json& v : value) item.inputs.push_back(Scalar(v));
      } else {
        item.inputs.push_back(Scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

std::string Num(double x) { return Json(x).dump(); }

double UnitScale(const std::string& unit) {
  return unit == "minutes" ? 60.0 : 1.0;
}

absl::Status WriteText(const std::string& path, const std::string& text,
                       std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return absl::OkStatus();
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("OutputError: cannot write '", path, "'"));
  }
  out << text;
  out.close();
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("OutputError: write to '", path, "' failed"));
  }
  return absl::OkStatus();
}

Json GapChoiceJson(const GapChoice& c) {
  Json j;
  j["level"] = c.level;
  j["g"] = c.gap;
  j["percentile"] = c.percentile;
  j["n_samples"] = c.n_samples;
  j["feasible"] = true;
  return j;
}

Json ClassStatsJson(const absl::StatusOr<ClassStats>& s) {
  if (!s.ok()) return nullptr;
  Json j;
  j["count"] = s->count;
  j["mean"] = s->mean;
  j["max"] = s->max;
  j["zero_fraction"] = s->zero_fraction;
  j["cdf"] = s->cdf;
  return j;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string input;
  std::string output;
  double eps = 0.0;
  double target = 0.25;
  std::string scope = "global";
  std::optional<double> default_gap;
  std::string unit = "seconds";
};

absl::Status Calibrate(const CalibrateArgs& a, std::ostream& out) {
  const double scale = UnitScale(a.unit);
  DELAYMASK_ASSIGN_OR_RETURN(std::vector<Event> events,
                             ReadEventsFile(a.input, scale));
  Json report;
  report["eps"] = a.eps;
  report["target_crossover"] = a.target;
  report["scope"] = a.scope;
  if (a.scope == "global") {
    DELAYMASK_ASSIGN_OR_RETURN(std::vector<double> gaps,
                               InterArrivalSamples(events));
    DELAYMASK_ASSIGN_OR_RETURN(GapChoice c,
                               ChooseGap(EmpiricalCdf(gaps), a.eps, a.target));
    Json choice = GapChoiceJson(c);
    for (const auto& [k, v] : choice.items()) report[k] = v;
    report["crossover_bound"] = CrossoverBound(a.eps, c.percentile / 100.0);
  } else {
    DELAYMASK_ASSIGN_OR_RETURN(GroupKey key, ParseGroupKey(a.scope));
    Json groups = Json::object();
    for (auto& [name, gaps] : InterArrivalSamplesByGroup(events, key)) {
      if (gaps.empty()) {
        if (!a.default_gap.has_value()) {
          return DataError("InsufficientData",
                           absl::StrCat("group '", name,
                                        "' has one event; pass --default-gap"));
        }
        Json j;
        j["g"] = *a.default_gap * scale;
        j["n_samples"] = 0;
        j["default"] = true;
        groups[name] = j;
        continue;
      }
      DELAYMASK_ASSIGN_OR_RETURN(
          GapChoice c, ChooseGap(EmpiricalCdf(gaps), a.eps, a.target));
      groups[name] = GapChoiceJson(c);
    }
    report["level"] = RequiredLevel(a.eps, a.target);
    report["groups"] = groups;
  }
  return WriteText(a.output, report.dump(2) + "\n", out);
}

// -------------------------------------------------------------------- delay

struct DelayArgs {
  std::string input;
  std::string output;
  std::string stats;
  std::string cdf_csv;
  double eps = 1.0;
  std::optional<double> gap;
  std::string gap_policy = "fixed";
  double level = 0.75;
  std::string group_key = "group";
  std::optional<double> default_gap;
  double beta = 0.0;
  double w = 1.0;
  std::string family = "ziu";
  std::string mode = "simultaneous";
  uint64_t seed = 0;
  std::string unit = "seconds";
};

absl::Status Delay(const DelayArgs& a, std::ostream& out) {
  const double scale = UnitScale(a.unit);
  DELAYMASK_ASSIGN_OR_RETURN(std::vector<Event> events,
                             ReadEventsFile(a.input, scale));
  Json sidecar;
  sidecar["mode"] = a.mode;
  sidecar["seed"] = a.seed;
  sidecar["workers"] = 1;
  sidecar["n_events"] = events.size();
  std::vector<PostedEvent> posted;

  if (a.mode == "queue") {
    Rng rng = Rng::ForStream(a.seed, StreamId::kQueue);
    DELAYMASK_ASSIGN_OR_RETURN(posted, RunQueue(events, rng));
  } else {
    DELAYMASK_ASSIGN_OR_RETURN(Family family, ParseFamily(a.family));
    PrivacyConfig config;
    config.eps = a.eps;
    config.beta = a.beta * scale;
    config.w = a.w;
    DELAYMASK_ASSIGN_OR_RETURN(config.mode, ParseBatchMode(a.mode));

    std::optional<GroupGaps> group_gaps;
    if (a.gap_policy == "fixed") {
      if (!a.gap.has_value()) {
        return ConfigError("MissingGap", "--gap is required with fixed policy");
      }
      config.gap = *a.gap * scale;
    } else if (a.gap_policy == "percentile") {
      DELAYMASK_ASSIGN_OR_RETURN(std::vector<double> gaps,
                                 InterArrivalSamples(events));
      config.gap = EmpiricalCdf(gaps).Quantile(a.level);
    } else if (a.gap_policy == "per_group_percentile") {
      if (!a.default_gap.has_value()) {
        return ConfigError("MissingGap",
                           "--default-gap is required with per-group gaps");
      }
      GroupGaps gg;
      DELAYMASK_ASSIGN_OR_RETURN(gg.key, ParseGroupKey(a.group_key));
      gg.default_gap = *a.default_gap * scale;
      for (auto& [name, gaps] : InterArrivalSamplesByGroup(events, gg.key)) {
        if (!gaps.empty()) gg.gaps[name] = EmpiricalCdf(gaps).Quantile(a.level);
      }
      config.gap = gg.default_gap;
      group_gaps = std::move(gg);
    } else {
      return ConfigError("UnknownGapPolicy",
                         absl::StrCat("no gap policy '", a.gap_policy, "'"));
    }

    Rng rng = Rng::ForStream(a.seed, StreamId::kMechanism);
    DELAYMASK_ASSIGN_OR_RETURN(
        posted, RunMechanism(events, config, family, rng,
                             group_gaps ? &*group_gaps : nullptr));

    sidecar["family"] = a.family;
    sidecar["eps"] = config.eps;
    sidecar["eps_ind"] = config.eps / 2.0;
    sidecar["beta"] = config.beta;
    sidecar["w"] = config.w;
    if (family == Family::kZeroInflatedUniform) {
      sidecar["eta"] = OptimalEta(config.eps, config.w);
    }
    sidecar["gap_policy"] = a.gap_policy;
    sidecar["gap"] = config.gap;
    DELAYMASK_ASSIGN_OR_RETURN(NoisePair pair,
                               MechanismPair(config, family, config.gap));
    sidecar["noise_pair"] = NoisePairToJson(pair);
    if (group_gaps) {
      Json gaps;
      gaps["key"] = std::string(GroupKeyName(group_gaps->key));
      gaps["default_gap"] = group_gaps->default_gap;
      gaps["values"] = group_gaps->gaps;
      sidecar["gaps"] = gaps;
    }
  }

  std::ostringstream body;
  WritePostedJsonl(body, posted);
  DELAYMASK_RETURN_IF_ERROR(WriteText(a.output, body.str(), out));

  absl::StatusOr<ClassStats> b = ClassDelayStats(posted, true);
  absl::StatusOr<ClassStats> u = ClassDelayStats(posted, false);
  Json stats;
  stats["batched"] = ClassStatsJson(b);
  stats["unbatched"] = ClassStatsJson(u);
  sidecar["delay_stats"] = stats;
  std::string stats_path = a.stats.empty() ? a.output + ".stats.json" : a.stats;
  if (a.output.empty() || a.output == "-") stats_path = a.stats;
  if (!stats_path.empty()) {
    DELAYMASK_RETURN_IF_ERROR(WriteText(stats_path, sidecar.dump(2) + "\n", out));
  }
  if (!a.cdf_csv.empty()) {
    std::string csv = "quantile,batched,unbatched\n";
    for (int q = 0; q <= 100; ++q) {
      absl::StrAppend(&csv, Num(q / 100.0), ",",
                      b.ok() ? Num(b->cdf[q]) : "", ",",
                      u.ok() ? Num(u->cdf[q]) : "", "\n");
    }
    DELAYMASK_RETURN_IF_ERROR(WriteText(a.cdf_csv, csv, out));
  }
  return absl::OkStatus();
}

// ------------------------------------------------------------------- attack

struct AttackArgs {
  std::string posted;
  std::string truth;
  double beta = 0.0;
  std::string attack = "basic";
  std::string scope = "group";
  std::vector<double> thresholds;
  double max_threshold = -1.0;
  int n_thresholds = 101;
  std::string gaps;
  std::string output;
  std::string csv;
  std::string unit = "seconds";
};

absl::StatusOr<std::map<std::string, double>> LoadGaps(const std::string& path,
                                                       double scale) {
  DELAYMASK_ASSIGN_OR_RETURN(Json j, ReadJsonFile(path));
  // Accept a delay sidecar or a plain {group: gap} object.
  const Json* values = &j;
  if (j.contains("gaps") && j["gaps"].contains("values")) {
    values = &j["gaps"]["values"];
    scale = 1.0;
  }
  if (!values->is_object()) {
    return DataError("SchemaError", absl::StrCat("'", path,
                                                 "' has no group gaps"));
  }
  std::map<std::string, double> out;
  for (const auto& [k, v] : values->items()) {
    if (!v.is_number()) {
      return DataError("SchemaError",
                       absl::StrCat("gap for group '", k, "' is not a number"));
    }
    out[k] = v.get<double>() * scale;
  }
  return out;
}

absl::Status Attack(const AttackArgs& a, std::ostream& out) {
  const double scale = UnitScale(a.unit);
  DELAYMASK_ASSIGN_OR_RETURN(std::vector<PostedEvent> posted,
                             ReadPostedFile(a.posted, scale));
  std::vector<TruthPair> truth;
  if (!a.truth.empty()) {
    DELAYMASK_ASSIGN_OR_RETURN(truth, ReadTruthFile(a.truth));
  } else {
    std::vector<Event> original;
    for (const PostedEvent& p : posted) original.push_back(p.event);
    std::sort(original.begin(), original.end(), ArrivalLess);
    truth = DeriveTruth(original, a.beta * scale);
  }

  std::vector<double> grid = a.thresholds;
  const bool informed = a.attack == "informed";
  if (grid.empty()) {
    if (!(a.max_threshold > 0.0) || a.n_thresholds < 2) {
      return ConfigError("MissingThresholds",
                         "pass --thresholds or --max-threshold");
    }
    for (int j = 0; j < a.n_thresholds; ++j) {
      grid.push_back(a.max_threshold * j / (a.n_thresholds - 1));
    }
  }
  if (!informed) {
    for (double& c : grid) c *= scale;
  }

  AttackReport report;
  if (informed) {
    if (a.gaps.empty()) {
      return ConfigError("MissingGroupGap", "--gaps is required");
    }
    DELAYMASK_ASSIGN_OR_RETURN(auto gaps, LoadGaps(a.gaps, scale));
    DELAYMASK_ASSIGN_OR_RETURN(report,
                               InformedAttack(posted, truth, gaps, grid));
  } else if (a.attack == "basic") {
    PairScope scope =
        a.scope == "all" ? PairScope::kAll : PairScope::kGroup;
    DELAYMASK_ASSIGN_OR_RETURN(report,
                               BasicAttack(posted, truth, grid, scope));
  } else {
    return ConfigError("UnknownAttack", absl::StrCat("no attack '", a.attack,
                                                     "'"));
  }

  Json j;
  j["attack"] = a.attack;
  j["scope"] = informed ? "group" : a.scope;
  j["truth_pairs"] = report.truth_pairs;
  j["truth_pairs_in_scope"] = report.truth_pairs_in_scope;
  j["candidate_pairs"] = report.candidate_pairs;
  j["pr_auc"] = PrAuc(report);
  Json curve = Json::array();
  std::string csv = informed ? "coeff,precision,recall\n"
                             : "threshold,precision,recall\n";
  for (const CurvePoint& p : report.curve) {
    Json c;
    c["threshold"] = p.threshold;
    c["precision"] = p.precision;
    c["recall"] = p.recall;
    c["classified"] = p.classified;
    c["true_positives"] = p.true_positives;
    curve.push_back(c);
    absl::StrAppend(&csv, Num(p.threshold), ",", Num(p.precision), ",",
                    Num(p.recall), "\n");
  }
  j["curve"] = curve;
  DELAYMASK_RETURN_IF_ERROR(WriteText(a.output, j.dump(2) + "\n", out));
  if (!a.csv.empty()) DELAYMASK_RETURN_IF_ERROR(WriteText(a.csv, csv, out));
  return absl::OkStatus();
}

// ----------------------------------------------------------------- frontier

struct FrontierArgs {
  double eps = 0.0;
  double gap = 1.0;
  int n_points = 200;
  bool oracle = false;
  int cells_per_gap = 64;
  int levels = 200;
  std::string output;
  std::string oracle_output;
};

absl::Status Frontier(const FrontierArgs& a, std::ostream& out) {
  if (!(a.eps > 0.0) || !(a.gap > 0.0) || a.n_points < 1) {
    return ConfigError("NonPositiveParam",
                       "--eps, --gap and --n-points must be positive");
  }
  const double eps_ind = a.eps / 2.0;
  std::string csv = "eta,E_B,E_U\n";
  for (const FrontierPoint& p : AnalyticFrontier(eps_ind, a.gap, a.n_points)) {
    absl::StrAppend(&csv, Num(p.eta), ",", Num(p.e_batched), ",",
                    Num(p.e_unbatched), "\n");
  }
  DELAYMASK_RETURN_IF_ERROR(WriteText(a.output, csv, out));
  if (a.oracle) {
    DELAYMASK_ASSIGN_OR_RETURN(
        std::vector<FrontierPoint> points,
        BruteForceFrontier(eps_ind, a.gap, a.cells_per_gap, a.levels));
    std::string ocsv = "eta,E_B,E_U,rel_distance\n";
    for (const FrontierPoint& p : points) {
      absl::StrAppend(&ocsv, Num(p.eta), ",", Num(p.e_batched), ",",
                      Num(p.e_unbatched), ",",
                      Num(RelativeFrontierDistance(p, eps_ind, a.gap, 20000)),
                      "\n");
    }
    std::string path = a.oracle_output;
    if (path.empty() && !a.output.empty() && a.output != "-") {
      path = a.output + ".oracle.csv";
    }
    DELAYMASK_RETURN_IF_ERROR(WriteText(path, ocsv, out));
  }
  return absl::OkStatus();
}

// -------------------------------------------------------------------- stats

struct StatsArgs {
  std::string input;
  double cutoff = 0.0;
  std::string output;
  std::string unit = "seconds";
};

absl::Status Stats(const StatsArgs& a, std::ostream& out) {
  const double scale = UnitScale(a.unit);
  DELAYMASK_ASSIGN_OR_RETURN(std::vector<Event> events,
                             ReadEventsFile(a.input, scale));
  DELAYMASK_ASSIGN_OR_RETURN(BatchingStats s,
                             ComputeBatchingStats(events, a.cutoff * scale));
  Json j;
  j["cutoff"] = a.cutoff * scale;
  j["batch_rate"] = s.batch_rate;
  j["baseline_pair_rate"] = s.baseline_pair_rate;
  j["eligible_pairs"] = s.eligible_pairs;
  j["batched_pairs"] = s.batched_pairs;
  j["no_eligible_pairs"] = s.no_eligible_pairs;
  j["actors"] = s.actors;
  j["actor_pairs"] = s.actor_pairs;
  j["close_actor_pairs"] = s.close_actor_pairs;
  return WriteText(a.output, j.dump(2) + "\n", out);
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
  SyntheticConfig config;
  std::string output;
  std::string truth_output;
  std::string unit = "seconds";
};

absl::Status Synth(SynthArgs a, std::ostream& out) {
  const double scale = UnitScale(a.unit);
  a.config.horizon *= scale;
  a.config.base_rate /= scale;
  a.config.intra_batch_jitter *= scale;
  DELAYMASK_ASSIGN_OR_RETURN(SyntheticStream s, GenerateStream(a.config));
  std::ostringstream events;
  WriteEventsJsonl(events, s.events);
  DELAYMASK_RETURN_IF_ERROR(WriteText(a.output, events.str(), out));
  if (!a.truth_output.empty()) {
    std::ostringstream truth;
    WriteTruthJsonl(truth, s.truth);
    DELAYMASK_RETURN_IF_ERROR(WriteText(a.truth_output, truth.str(), out));
  }
  return absl::OkStatus();
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Random-delay protection against timing-linkage attacks"};
  app.name("delaymask");
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags");
  app.allow_config_extras(CLI::config_extras_mode::error);

  const uint64_t default_seed = DefaultSeed(0);
  const std::vector<std::string> units = {"seconds", "minutes"};

  CalibrateArgs cal;
  CLI::App* c = app.add_subcommand("calibrate", "Choose g from inter-arrival data");
  c->add_option("--input", cal.input, "Events (JSONL or CSV)")->required();
  c->add_option("--output", cal.output, "Report path (default stdout)");
  c->add_option("--eps", cal.eps, "Mechanism epsilon")->required();
  c->add_option("--target", cal.target, "Target error-crossover rate");
  c->add_option("--scope", cal.scope, "global, actor, item or group")
      ->check(CLI::IsMember({"global", "actor", "item", "group"}));
  c->add_option("--default-gap", cal.default_gap,
                "Gap for groups with a single event");
  c->add_option("--unit", cal.unit, "Time unit of inputs and flags")
      ->check(CLI::IsMember(units));

  DelayArgs del;
  del.seed = default_seed;
  CLI::App* d = app.add_subcommand("delay", "Delay an event stream");
  d->add_option("--input", del.input, "Events (JSONL or CSV)")->required();
  d->add_option("--output", del.output, "Posted events JSONL")->required();
  d->add_option("--stats", del.stats, "Sidecar path (default OUTPUT.stats.json)");
  d->add_option("--cdf-csv", del.cdf_csv, "Delay CDF CSV path");
  d->add_option("--eps", del.eps, "Mechanism epsilon");
  d->add_option("--gap", del.gap, "Neighbor gap g");
  d->add_option("--gap-policy", del.gap_policy,
                "fixed, percentile or per_group_percentile")
      ->check(CLI::IsMember({"fixed", "percentile", "per_group_percentile"}));
  d->add_option("--level", del.level, "CDF level for percentile policies");
  d->add_option("--group-key", del.group_key, "actor, item or group")
      ->check(CLI::IsMember({"actor", "item", "group"}));
  d->add_option("--default-gap", del.default_gap,
                "Gap for groups without history");
  d->add_option("--beta", del.beta, "Batching window");
  d->add_option("--w", del.w, "Weight on batched delay");
  d->add_option("--family", del.family, "exponential, staircase, uniform, ziu")
      ->check(CLI::IsMember({"exponential", "staircase", "uniform", "ziu"}));
  d->add_option("--mode", del.mode,
                "simultaneous, hold_window, self_report or queue")
      ->check(CLI::IsMember(
          {"simultaneous", "hold_window", "self_report", "queue"}));
  d->add_option("--seed", del.seed, "Master seed (default $DELAYMASK_SEED)");
  d->add_option("--unit", del.unit, "Time unit of inputs and flags")
      ->check(CLI::IsMember(units));

  AttackArgs att;
  CLI::App* at = app.add_subcommand("attack", "Run a threshold linkage attack");
  at->add_option("--posted", att.posted, "Posted events JSONL")->required();
  at->add_option("--truth", att.truth, "Truth pairs JSONL");
  at->add_option("--beta", att.beta,
                 "Window for deriving truth when --truth is absent");
  at->add_option("--attack", att.attack, "basic or informed")
      ->check(CLI::IsMember({"basic", "informed"}));
  at->add_option("--scope", att.scope, "group or all")
      ->check(CLI::IsMember({"group", "all"}));
  at->add_option("--thresholds", att.thresholds,
                 "Cutoffs c (basic) or coefficients k (informed)");
  at->add_option("--max-threshold", att.max_threshold,
                 "Largest value of an even grid starting at 0");
  at->add_option("--n-thresholds", att.n_thresholds, "Grid size");
  at->add_option("--gaps", att.gaps, "Group gaps JSON or delay sidecar");
  at->add_option("--output", att.output, "Report JSON path (default stdout)");
  at->add_option("--csv", att.csv, "Curve CSV path");
  at->add_option("--unit", att.unit, "Time unit of inputs and flags")
      ->check(CLI::IsMember(units));

  FrontierArgs fr;
  CLI::App* f = app.add_subcommand("frontier", "Delay Pareto frontier");
  f->add_option("--eps", fr.eps, "Mechanism epsilon")->required();
  f->add_option("--gap", fr.gap, "Gap (default 1: multiples of g)");
  f->add_option("--n-points", fr.n_points, "Eta sweep size");
  f->add_flag("--oracle", fr.oracle, "Also emit the discretized oracle");
  f->add_option("--cells-per-gap", fr.cells_per_gap, "Oracle cells per gap");
  f->add_option("--levels", fr.levels, "Oracle level grid size");
  f->add_option("--output", fr.output, "Frontier CSV path (default stdout)");
  f->add_option("--oracle-output", fr.oracle_output,
                "Oracle CSV path (default OUTPUT.oracle.csv)");

  StatsArgs st;
  CLI::App* s = app.add_subcommand("stats", "Batching statistics");
  s->add_option("--input", st.input, "Events (JSONL or CSV)")->required();
  s->add_option("--cutoff", st.cutoff, "Batching cutoff")->required();
  s->add_option("--output", st.output, "Report path (default stdout)");
  s->add_option("--unit", st.unit, "Time unit of inputs and flags")
      ->check(CLI::IsMember(units));

  SynthArgs sy;
  sy.config.seed = default_seed;
  CLI::App* y = app.add_subcommand("synth", "Generate a synthetic stream");
  y->add_option("--output", sy.output, "Events JSONL")->required();
  y->add_option("--truth-output", sy.truth_output, "Truth pairs JSONL");
  y->add_option("--horizon", sy.config.horizon, "Stream length");
  y->add_option("--base-rate", sy.config.base_rate, "Arrivals per actor per unit");
  y->add_option("--actors", sy.config.n_actors, "Number of actors");
  y->add_option("--items", sy.config.n_items, "Number of items");
  y->add_option("--batch-prob", sy.config.batch_prob, "Batch partner probability");
  y->add_option("--jitter", sy.config.intra_batch_jitter, "Partner offset bound");
  y->add_option("--groups", sy.config.n_groups, "Number of item groups");
  y->add_option("--group-rate-scale", sy.config.group_rate_scale,
                "Relative arrival rate per group");
  y->add_option("--seed", sy.config.seed, "Seed (default $DELAYMASK_SEED)");
  y->add_option("--unit", sy.unit, "Time unit of flags")
      ->check(CLI::IsMember(units));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  absl::Status status;
  if (c->parsed()) {
    status = Calibrate(cal, out);
  } else if (d->parsed()) {
    status = Delay(del, out);
  } else if (at->parsed()) {
    status = Attack(att, out);
  } else if (f->parsed()) {
    status = Frontier(fr, out);
  } else if (s->parsed()) {
    status = Stats(st, out);
  } else if (y->parsed()) {
    status = Synth(sy, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return 0;
}

}  // namespace delaymask::cli
