// Copyright 2026 The crisisnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crisisnet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "crisisnet/dynamics.hpp"
#include "crisisnet/error.hpp"
#include "crisisnet/powerlaw.hpp"
#include "parallel.hpp"

namespace crisisnet {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, where + " must be an object");
  for (const auto& item : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return item.key() == a; })) {
      throw Error(ErrorCode::kConfig, "unknown key '" + item.key() + "' in " + where);
    }
  }
}

const char* DirectionName(Direction d) {
  switch (d) {
    case Direction::kOut: return "out";
    case Direction::kIn: return "in";
    case Direction::kTotal: return "total";
  }
  return "?";
}

Direction DirectionFromName(const std::string& name) {
  if (name == "out") return Direction::kOut;
  if (name == "in") return Direction::kIn;
  if (name == "total") return Direction::kTotal;
  throw Error(ErrorCode::kConfig, "direction must be out, in or total");
}

const char* ColumnName(Column c) {
  switch (c) {
    case Column::kSender: return "sender";
    case Column::kRecipient: return "recipient";
    case Column::kTimestamp: return "timestamp";
  }
  return "?";
}

CivilDay DayFromJson(const json& j, const std::string& what) {
  const auto day = ParseCivilDay(j.get<std::string>());
  if (!day) throw Error(ErrorCode::kConfig, what + " must be a YYYY-MM-DD date");
  return *day;
}

std::string StrategyKey(const RemovalStrategy& s) { return RemovalStrategyName(s); }

json FitToJson(const PowerLawFit& fit) {
  json j{{"method", FitMethodName(fit.method)},
         {"gamma", fit.gamma},
         {"xmin", fit.xmin},
         {"n_tail", fit.n_tail}};
  if (fit.r_squared) j["r_squared"] = *fit.r_squared;
  if (fit.ks_statistic) j["ks_statistic"] = *fit.ks_statistic;
  return j;
}

json OptionalNumber(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json DistributionToJson(const DegreeHistogram& h) {
  return {{"k", h.support}, {"pdf", h.pdf}, {"ccdf", h.ccdf}, {"n", h.n},
          {"zeros", h.zero_count}};
}

// Every fit the report carries for one degree sample. Fits that lack support
// come back as null with a note.
json FitAll(const std::vector<std::uint64_t>& degrees, const FitConfig& cfg,
            json& notes, json* distribution) {
  json fits{{"ols_pdf", nullptr}, {"ols_ccdf", nullptr}, {"ols_binned", nullptr},
            {"mle", nullptr}};
  std::optional<DegreeHistogram> h;
  try {
    h = Histogram(degrees);
    if (distribution) *distribution = DistributionToJson(*h);
  } catch (const Error& e) {
    notes.push_back(e.what());
    return fits;
  }
  auto attempt = [&](const char* name, auto&& fn) {
    try {
      fits[name] = FitToJson(fn());
    } catch (const Error& e) {
      notes.push_back(std::string(name) + ": " + e.what());
    }
  };
  const std::uint64_t ols_xmin = cfg.xmin.value_or(1);
  attempt("ols_pdf", [&] { return FitOls(*h, FitTarget::kPdf, ols_xmin); });
  attempt("ols_ccdf", [&] { return FitOls(*h, FitTarget::kCcdf, ols_xmin); });
  attempt("ols_binned", [&] {
    return FitOlsBinned(LogBinHistogram(*h, cfg.log_bin_ratio), ols_xmin);
  });
  attempt("mle", [&] {
    return cfg.xmin ? FitMle(degrees, *cfg.xmin) : FitMleScanXmin(degrees, cfg.min_tail);
  });
  return fits;
}

std::optional<double> Median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string NumberOrNan(const json& j) {
  return j.is_number() ? FormatNumber(j.get<double>()) : "nan";
}

double SafeLog10(double v) { return v > 0 ? std::log10(v) : std::nan(""); }

void AppendDistributionRows(std::ostringstream& out, const json& dist,
                            const std::string& prefix) {
  const auto& ks = dist.at("k");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i].get<double>();
    const double pdf = dist.at("pdf")[i].get<double>();
    const double ccdf = dist.at("ccdf")[i].get<double>();
    out << prefix << FormatNumber(k) << ' ' << FormatNumber(pdf) << ' '
        << FormatNumber(ccdf) << ' ' << FormatNumber(SafeLog10(k)) << ' '
        << FormatNumber(SafeLog10(pdf)) << ' ' << FormatNumber(SafeLog10(ccdf)) << '\n';
  }
}

std::string CurveTable(const json& curve) {
  std::ostringstream out;
  out << "fraction_removed removed giant_fraction avg_path_length\n";
  for (const json& p : curve.at("points")) {
    out << FormatNumber(p.at("fraction_removed").get<double>()) << ' '
        << p.at("removed").get<std::uint64_t>() << ' '
        << FormatNumber(p.at("giant_fraction").get<double>()) << ' '
        << NumberOrNan(p.at("avg_path_length")) << '\n';
  }
  return out.str();
}

json CurveToJson(const RobustnessCurve& curve) {
  json points = json::array();
  for (const CurvePoint& p : curve.points) {
    points.push_back({{"fraction_removed", p.fraction_removed},
                      {"removed", p.removed},
                      {"giant_fraction", p.giant_fraction},
                      {"avg_path_length", OptionalNumber(p.avg_path_length)}});
  }
  json j{{"strategy", StrategyKey(curve.strategy)},
         {"original_n", curve.original_n},
         {"points", std::move(points)}};
  if (curve.strategy.kind == RemovalKind::kRandom) j["seed"] = curve.strategy.seed;
  return j;
}

// Random strategies get distinct seeds derived from the run seed.
json RunCurves(const UndirectedGraph& g, const std::vector<RemovalStrategy>& strategies,
               const std::vector<double>& steps, bool path_lengths, std::uint64_t seed) {
  std::vector<json> curves(strategies.size());
  internal::ParallelFor(strategies.size(), [&](std::size_t i) {
    RemovalStrategy s = strategies[i];
    if (s.kind == RemovalKind::kRandom) s.seed = seed + 1 + i;
    CurveOptions options;
    options.path_lengths = path_lengths;
    options.path.seed = seed;
    options.path.threads = 1;
    curves[i] = CurveToJson(ComputeRobustnessCurve(g, s, steps, options));
  });
  return json(curves);
}

std::vector<RemovalStrategy> StrategiesFromJson(const json& j) {
  std::vector<RemovalStrategy> out;
  for (const json& name : j) out.push_back(RemovalStrategyFromName(name.get<std::string>()));
  return out;
}

json NodeRow(const TemporalEdgeStream& stream, NodeId id) {
  return {{"node", id}, {"label", stream.label(id)}};
}

}  // namespace

PipelineConfig PaperRecipe() {
  PipelineConfig c;
  c.window.day_count = 131;
  c.direction = Direction::kOut;
  c.k = 10;
  c.k_values = {5, 10, 15, 20};
  c.cv_threshold = kDefaultCvThreshold;
  return c;
}

RemovalStrategy RemovalStrategyFromName(const std::string& name) {
  if (name == "random") return {RemovalKind::kRandom, true, 0};
  if (name == "targeted" || name == "targeted-adaptive") return {RemovalKind::kTargeted, true, 0};
  if (name == "targeted-static") return {RemovalKind::kTargeted, false, 0};
  throw Error(ErrorCode::kConfig, "unknown removal strategy '" + name +
                                      "' (random, targeted-adaptive, targeted-static)");
}

LogFormatConfig LogFormatFromJson(const json& j) {
  LogFormatConfig cfg;
  try {
    CheckKeys(j, {"columns", "timestamp", "delimiter", "header", "malformed_threshold",
                  "collapse_duplicates"},
              "format");
    if (j.contains("columns")) {
      const auto& cols = j.at("columns");
      if (!cols.is_array() || cols.size() != 3) {
        throw Error(ErrorCode::kConfig, "format.columns must list 3 column names");
      }
      for (std::size_t i = 0; i < 3; ++i) {
        const auto name = cols[i].get<std::string>();
        if (name == "sender") cfg.columns[i] = Column::kSender;
        else if (name == "recipient") cfg.columns[i] = Column::kRecipient;
        else if (name == "timestamp") cfg.columns[i] = Column::kTimestamp;
        else throw Error(ErrorCode::kConfig, "unknown column '" + name + "'");
      }
    }
    if (j.contains("timestamp")) {
      const auto ts = j.at("timestamp").get<std::string>();
      if (ts == "unix") cfg.timestamp_format = TimestampFormat::kUnixSeconds;
      else if (ts == "iso8601") cfg.timestamp_format = TimestampFormat::kIso8601;
      else throw Error(ErrorCode::kConfig, "format.timestamp must be unix or iso8601");
    }
    if (j.contains("delimiter")) {
      const auto d = j.at("delimiter").get<std::string>();
      if (d.size() != 1) throw Error(ErrorCode::kConfig, "delimiter must be a single byte");
      cfg.delimiter = d[0];
    }
    cfg.header = j.value("header", cfg.header);
    cfg.malformed_threshold = j.value("malformed_threshold", cfg.malformed_threshold);
    cfg.collapse_duplicates = j.value("collapse_duplicates", cfg.collapse_duplicates);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("format: ") + e.what());
  }
  ValidateLogFormat(cfg);
  return cfg;
}

json LogFormatToJson(const LogFormatConfig& cfg) {
  return {{"columns",
           {ColumnName(cfg.columns[0]), ColumnName(cfg.columns[1]), ColumnName(cfg.columns[2])}},
          {"timestamp", cfg.timestamp_format == TimestampFormat::kUnixSeconds ? "unix" : "iso8601"},
          {"delimiter", std::string(1, cfg.delimiter)},
          {"header", cfg.header},
          {"malformed_threshold", cfg.malformed_threshold},
          {"collapse_duplicates", cfg.collapse_duplicates}};
}

HubCorpusParams HubCorpusFromJson(const json& j) {
  HubCorpusParams p;
  try {
    CheckKeys(j, {"node_count", "day_count", "hub_count", "hub_rate", "background_rate",
                  "start", "seed"},
              "synthetic");
    p.node_count = j.value("node_count", p.node_count);
    p.day_count = j.value("day_count", p.day_count);
    p.hub_count = j.value("hub_count", p.hub_count);
    p.hub_rate = j.value("hub_rate", p.hub_rate);
    p.background_rate = j.value("background_rate", p.background_rate);
    if (j.contains("start")) {
      const json& s = j.at("start");
      p.start = s.is_string() ? DayStart(DayFromJson(s, "synthetic.start"))
                              : s.get<Timestamp>();
    }
    p.seed = j.value("seed", p.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("synthetic: ") + e.what());
  }
  if (p.hub_count > p.node_count || p.node_count < 2 || !(p.hub_rate > 0) ||
      !(p.background_rate > 0)) {
    throw Error(ErrorCode::kConfig,
                "synthetic corpus needs hub_count <= node_count, node_count >= 2 and "
                "positive rates");
  }
  return p;
}

PipelineConfig PipelineConfigFromJson(const json& j) {
  PipelineConfig c;
  try {
    CheckKeys(j, {"input", "format", "synthetic", "window", "direction", "k", "k_values",
                  "cv_threshold", "fit", "robustness", "seed", "output_dir"},
              "config");
    c.seed = j.value("seed", c.seed);
    if (j.contains("input") == j.contains("synthetic")) {
      throw Error(ErrorCode::kConfig, "config needs exactly one of input / synthetic");
    }
    if (j.contains("input")) c.input_path = j.at("input").get<std::string>();
    if (j.contains("format")) c.format = LogFormatFromJson(j.at("format"));
    if (j.contains("synthetic")) {
      const json& s = j.at("synthetic");
      c.synthetic = HubCorpusFromJson(s);
      if (!s.contains("seed")) c.synthetic->seed = c.seed;
    }
    if (j.contains("window")) {
      const json& w = j.at("window");
      CheckKeys(w, {"first_day", "day_count", "utc_offset_seconds"}, "window");
      if (w.contains("first_day") && !w.at("first_day").is_null()) {
        c.window.first_day = DayFromJson(w.at("first_day"), "window.first_day");
      }
      if (w.contains("day_count") && !w.at("day_count").is_null()) {
        c.window.day_count = w.at("day_count").get<std::size_t>();
      }
      c.window.utc_offset_seconds = w.value("utc_offset_seconds", std::int64_t{0});
    }
    if (j.contains("direction")) c.direction = DirectionFromName(j.at("direction").get<std::string>());
    c.k = j.value("k", c.k);
    if (j.contains("k_values")) c.k_values = j.at("k_values").get<std::vector<std::size_t>>();
    c.cv_threshold = j.value("cv_threshold", c.cv_threshold);
    if (j.contains("fit")) {
      const json& f = j.at("fit");
      CheckKeys(f, {"xmin", "min_tail", "log_bin_ratio"}, "fit");
      if (f.contains("xmin")) {
        const json& x = f.at("xmin");
        if (x.is_string() && x.get<std::string>() == "scan") {
          c.fit.xmin.reset();
        } else if (x.is_number_unsigned() && x.get<std::uint64_t>() >= 1) {
          c.fit.xmin = x.get<std::uint64_t>();
        } else {
          throw Error(ErrorCode::kConfig, "fit.xmin must be a positive integer or \"scan\"");
        }
      }
      c.fit.min_tail = f.value("min_tail", c.fit.min_tail);
      c.fit.log_bin_ratio = f.value("log_bin_ratio", c.fit.log_bin_ratio);
    }
    if (j.contains("robustness")) {
      const json& r = j.at("robustness");
      CheckKeys(r, {"enabled", "steps", "strategies", "path_lengths"}, "robustness");
      c.robustness.enabled = r.value("enabled", c.robustness.enabled);
      if (r.contains("steps")) c.robustness.steps = r.at("steps").get<std::vector<double>>();
      if (r.contains("strategies")) c.robustness.strategies = StrategiesFromJson(r.at("strategies"));
      c.robustness.path_lengths = r.value("path_lengths", c.robustness.path_lengths);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config: ") + e.what());
  }

  if (c.k == 0) throw Error(ErrorCode::kConfig, "k must be >= 1");
  for (std::size_t i = 0; i < c.k_values.size(); ++i) {
    if (c.k_values[i] == 0 || (i > 0 && c.k_values[i] <= c.k_values[i - 1])) {
      throw Error(ErrorCode::kConfig, "k_values must be positive and strictly ascending");
    }
  }
  if (!(c.cv_threshold >= 0)) throw Error(ErrorCode::kConfig, "cv_threshold must be >= 0");
  if (!(c.fit.log_bin_ratio > 1)) throw Error(ErrorCode::kConfig, "log_bin_ratio must exceed 1");
  for (std::size_t i = 0; i < c.robustness.steps.size(); ++i) {
    const double s = c.robustness.steps[i];
    if (!(s >= 0 && s < 1) || (i > 0 && s <= c.robustness.steps[i - 1])) {
      throw Error(ErrorCode::kConfig, "robustness steps must be strictly ascending in [0, 1)");
    }
  }
  if (c.output_dir.empty()) throw Error(ErrorCode::kConfig, "output_dir must not be empty");
  return c;
}

json PipelineConfigToJson(const PipelineConfig& c) {
  json j;
  if (c.input_path) {
    j["input"] = *c.input_path;
    j["format"] = LogFormatToJson(c.format);
  }
  if (c.synthetic) {
    const HubCorpusParams& p = *c.synthetic;
    j["synthetic"] = {{"node_count", p.node_count}, {"day_count", p.day_count},
                      {"hub_count", p.hub_count},   {"hub_rate", p.hub_rate},
                      {"background_rate", p.background_rate},
                      {"start", p.start},           {"seed", p.seed}};
  }
  j["window"] = {{"first_day", c.window.first_day ? json(FormatCivilDay(*c.window.first_day))
                                                  : json(nullptr)},
                 {"day_count", c.window.day_count ? json(*c.window.day_count) : json(nullptr)},
                 {"utc_offset_seconds", c.window.utc_offset_seconds}};
  j["direction"] = DirectionName(c.direction);
  j["k"] = c.k;
  j["k_values"] = c.k_values;
  j["cv_threshold"] = c.cv_threshold;
  j["fit"] = {{"xmin", c.fit.xmin ? json(*c.fit.xmin) : json("scan")},
              {"min_tail", c.fit.min_tail},
              {"log_bin_ratio", c.fit.log_bin_ratio}};
  json strategies = json::array();
  for (const auto& s : c.robustness.strategies) strategies.push_back(StrategyKey(s));
  j["robustness"] = {{"enabled", c.robustness.enabled},
                     {"steps", c.robustness.steps},
                     {"strategies", strategies},
                     {"path_lengths", c.robustness.path_lengths}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j;
}

PipelineResult RunPipeline(const PipelineConfig& config) {
  if (config.input_path.has_value() == config.synthetic.has_value()) {
    throw Error(ErrorCode::kConfig, "config needs exactly one of input / synthetic");
  }
  json report;
  report["schema"] = kReportSchema;
  report["config"] = PipelineConfigToJson(config);

  TemporalEdgeStream full;
  if (config.input_path) {
    ParsedLog parsed = ParseEdgeLogFile(*config.input_path, config.format);
    json malformed = json::array();
    for (const MalformedRow& m : parsed.report.malformed) {
      malformed.push_back({{"line", m.line}, {"reason", m.reason}});
    }
    report["ingest"] = {{"rows_read", parsed.report.rows_read},
                        {"accepted", parsed.report.accepted},
                        {"self_loops_dropped", parsed.report.self_loops_dropped},
                        {"duplicates_collapsed", parsed.report.duplicates_collapsed},
                        {"malformed", std::move(malformed)}};
    full = std::move(parsed.stream);
  } else {
    full = GenerateHubCorpus(*config.synthetic);
  }

  // Window bounds, then drop messages outside them.
  const std::chrono::seconds offset(config.window.utc_offset_seconds);
  ObservationWindow window;
  window.utc_offset = offset;
  if (config.window.first_day) {
    window.first_day = *config.window.first_day;
  } else if (config.synthetic) {
    window.first_day = DayOf(config.synthetic->start, offset);
    window.day_count = config.window.day_count.value_or(config.synthetic->day_count);
  } else if (!full.empty()) {
    window.first_day = DayOf(full.edges().front().timestamp, offset);
  }
  if (config.window.day_count) window.day_count = config.window.day_count;

  std::vector<TemporalEdge> inside;
  std::size_t outside = 0;
  for (const TemporalEdge& e : full.edges()) {
    const auto day = DayOf(e.timestamp, offset);
    const bool after_end =
        window.day_count &&
        (day - window.first_day).count() >= static_cast<long>(*window.day_count);
    if (day < window.first_day || after_end) {
      ++outside;
    } else {
      inside.push_back(e);
    }
  }
  const TemporalEdgeStream stream(std::move(inside), full.labels());
  if (stream.empty() && !window.day_count) window.day_count = 0;
  const std::vector<DailySnapshot> snapshots = BuildSnapshots(stream, window);
  const AggregateGraph aggregate = Aggregate(snapshots);
  const bool empty = stream.empty();

  std::size_t empty_days = 0;
  for (const DailySnapshot& s : snapshots) empty_days += s.empty() ? 1 : 0;
  report["status"] = empty ? "empty" : "ok";
  report["corpus"] = {{"source", config.input_path ? "log" : "synthetic"},
                      {"messages", stream.size()},
                      {"messages_outside_window", outside},
                      {"nodes", stream.registry().size()},
                      {"first_day", FormatCivilDay(window.first_day)},
                      {"day_count", snapshots.size()},
                      {"empty_days", empty_days}};

  // Per-day degree distributions and fits.
  std::vector<json> daily(snapshots.size());
  internal::ParallelFor(snapshots.size(), [&](std::size_t i) {
    const DailySnapshot& s = snapshots[i];
    const DegreeMap d = Degree(s.graph, config.direction);
    std::size_t active = 0;
    for (std::uint64_t v : d.values()) active += v > 0 ? 1 : 0;
    json notes = json::array();
    json distribution = nullptr;
    json fits = s.empty() ? json(nullptr) : FitAll(d.values(), config.fit, notes, &distribution);
    daily[i] = {{"day", s.day_index},
                {"date", FormatCivilDay(s.date)},
                {"empty", s.empty()},
                {"messages", s.graph.total_messages()},
                {"active_nodes", active},
                {"fits", std::move(fits)},
                {"distribution", std::move(distribution)},
                {"notes", std::move(notes)}};
  });
  report["daily"] = json(daily);

  // Aggregate degrees, distribution and concentration.
  const DegreeMap agg_degrees = Degree(aggregate, config.direction);
  {
    json rows = json::array();
    for (std::size_t i = 0; i < agg_degrees.size(); ++i) {
      json row = NodeRow(stream, agg_degrees.nodes()[i]);
      row["degree"] = agg_degrees.values()[i];
      rows.push_back(std::move(row));
    }
    json notes = json::array();
    json distribution = nullptr;
    json fits = empty ? json(nullptr) : FitAll(agg_degrees.values(), config.fit, notes, &distribution);
    report["aggregate"] = {{"messages", aggregate.total_messages()},
                           {"degrees", std::move(rows)},
                           {"fits", std::move(fits)},
                           {"distribution", std::move(distribution)},
                           {"notes", std::move(notes)}};
  }
  const RankList agg_top = TopK(agg_degrees, config.k);
  {
    std::uint64_t top_degree = 0;
    json top = json::array();
    for (const RankEntry& e : agg_top.entries) {
      top_degree += e.degree;
      json row = NodeRow(stream, e.node);
      row["degree"] = e.degree;
      top.push_back(std::move(row));
    }
    report["concentration"] = {{"k", config.k},
                               {"share", DegreeShare(agg_degrees, agg_top)},
                               {"top_degree", top_degree},
                               {"total_degree", agg_degrees.total()},
                               {"node_count", agg_degrees.size()},
                               {"top", std::move(top)}};
  }

  // Day-to-day correlation, with the identity-shuffled control.
  {
    json corr{{"domain", "registry"}, {"pairs", json::array()}, {"excluded", json::array()},
              {"median_r", nullptr}, {"shuffled_control", nullptr}};
    if (snapshots.size() >= 2) {
      const CorrelationSeries series = ConsecutiveDayCorrelation(snapshots, config.direction);
      std::vector<double> rs;
      for (const DayPairCorrelation& p : series.pairs) {
        corr["pairs"].push_back({{"day", p.day}, {"r", OptionalNumber(p.r)}});
        if (p.r) rs.push_back(*p.r);
      }
      corr["excluded"] = series.excluded;
      corr["median_r"] = OptionalNumber(Median(rs));

      const auto shuffled = ShuffleIdentities(snapshots, config.seed);
      std::vector<double> abs_rs;
      for (const auto& p : ConsecutiveDayCorrelation(shuffled, config.direction).pairs) {
        if (p.r) abs_rs.push_back(std::abs(*p.r));
      }
      corr["shuffled_control"] = {{"seed", config.seed},
                                  {"median_abs_r", OptionalNumber(Median(abs_rs))}};
    }
    report["correlation"] = std::move(corr);
  }

  {
    json rows = json::array();
    for (const OverlapRow& r : OverlapVsK(snapshots, config.k_values, config.direction)) {
      rows.push_back({{"k", r.k}, {"mean_fraction", r.mean_fraction}, {"day_pairs", r.day_pairs}});
    }
    report["overlap_vs_k"] = std::move(rows);
  }

  // Daily top-k frequency against the aggregate ranking, and the stability of
  // every node that appears in either list.
  const ConsistencyResult consistency =
      DailyVsAggregateConsistency(snapshots, aggregate, config.k, config.direction);
  {
    json frequency = json::array();
    for (const TopKFrequency& f : consistency.frequency) {
      json row = NodeRow(stream, f.node);
      row["days"] = f.days;
      frequency.push_back(std::move(row));
    }
    report["top_k_frequency"] = std::move(frequency);
    json frequent = json::array();
    for (const RankEntry& e : consistency.frequent.entries) {
      json row = NodeRow(stream, e.node);
      row["days"] = e.degree;
      frequent.push_back(std::move(row));
    }
    json aggregate_top = json::array();
    for (const RankEntry& e : consistency.aggregate.entries) {
      json row = NodeRow(stream, e.node);
      row["degree"] = e.degree;
      aggregate_top.push_back(std::move(row));
    }
    report["consistency"] = {{"k", config.k},
                             {"count", consistency.overlap.count},
                             {"fraction", consistency.overlap.fraction},
                             {"frequent", std::move(frequent)},
                             {"aggregate_top", std::move(aggregate_top)}};
  }
  {
    std::set<NodeId> tracked;
    for (const RankEntry& e : consistency.frequent.entries) tracked.insert(e.node);
    for (const RankEntry& e : consistency.aggregate.entries) tracked.insert(e.node);
    json nodes = json::array();
    for (NodeId id : tracked) {
      const DegreeSeries s = NodeSeries(snapshots, id, config.direction);
      json row = NodeRow(stream, id);
      row["mean"] = s.mean;
      row["stddev"] = s.stddev;
      row["cv"] = OptionalNumber(s.cv);
      row["class"] = StabilityName(ClassifyStability(s, config.cv_threshold));
      row["series"] = s.values;
      nodes.push_back(std::move(row));
    }
    report["stability"] = {{"cv_threshold", config.cv_threshold}, {"nodes", std::move(nodes)}};
  }

  if (config.robustness.enabled) {
    const UndirectedGraph g = UndirectedProjection(aggregate);
    report["robustness"] = {
        {"graph", {{"nodes", g.node_count()}, {"edges", g.edge_count()}}},
        {"curves", g.node_count() == 0
                       ? json::array()
                       : RunCurves(g, config.robustness.strategies, config.robustness.steps,
                                   config.robustness.path_lengths, config.seed)}};
  }
  if (empty) {
    json sections = json::array();
    for (const char* name : {"daily", "aggregate", "concentration", "correlation", "overlap_vs_k",
                             "top_k_frequency", "consistency", "stability", "robustness"}) {
      if (report.contains(name)) sections.push_back(name);
    }
    report["empty_sections"] = std::move(sections);
  }
  return {std::move(report), empty};
}

std::map<std::string, std::string> PlotData(const json& report) {
  std::map<std::string, std::string> files;
  if (report.contains("correlation")) {
    std::ostringstream out;
    out << "day r\n";
    for (const json& p : report["correlation"]["pairs"]) {
      out << p.at("day").get<std::uint64_t>() << ' ' << NumberOrNan(p.at("r")) << '\n';
    }
    files["fig1_correlation.dat"] = out.str();
  }
  if (report.contains("daily")) {
    std::ostringstream dist;
    dist << "day k pdf ccdf log10_k log10_pdf log10_ccdf\n";
    std::ostringstream fits;
    fits << "day messages gamma_mle ks xmin_mle gamma_ols_ccdf r2_ols_ccdf gamma_ols_pdf "
            "r2_ols_pdf\n";
    for (const json& d : report["daily"]) {
      const auto day = d.at("day").get<std::uint64_t>();
      if (d.at("distribution").is_object()) {
        AppendDistributionRows(dist, d.at("distribution"), std::to_string(day) + " ");
      }
      const json& f = d.at("fits");
      auto field = [&](const char* fit, const char* key) {
        return f.is_object() && f.at(fit).is_object() && f.at(fit).contains(key)
                   ? NumberOrNan(f.at(fit).at(key))
                   : std::string("nan");
      };
      fits << day << ' ' << d.at("messages").get<std::uint64_t>() << ' '
           << field("mle", "gamma") << ' ' << field("mle", "ks_statistic") << ' '
           << field("mle", "xmin") << ' ' << field("ols_ccdf", "gamma") << ' '
           << field("ols_ccdf", "r_squared") << ' ' << field("ols_pdf", "gamma") << ' '
           << field("ols_pdf", "r_squared") << '\n';
    }
    files["fig2_daily_distribution.dat"] = dist.str();
    files["daily_fits.dat"] = fits.str();
  }
  if (report.contains("aggregate")) {
    std::ostringstream out;
    out << "k pdf ccdf log10_k log10_pdf log10_ccdf\n";
    const json& dist = report["aggregate"]["distribution"];
    if (dist.is_object()) AppendDistributionRows(out, dist, "");
    files["aggregate_distribution.dat"] = out.str();
  }
  if (report.contains("stability")) {
    const json& nodes = report["stability"]["nodes"];
    std::ostringstream out;
    out << "day";
    for (const json& n : nodes) out << " n" << n.at("node").get<std::uint64_t>();
    out << '\n';
    const std::size_t days = nodes.empty() ? 0 : nodes[0].at("series").size();
    for (std::size_t t = 0; t < days; ++t) {
      out << t;
      for (const json& n : nodes) out << ' ' << FormatNumber(n.at("series")[t].get<double>());
      out << '\n';
    }
    files["fig3_4_hub_series.dat"] = out.str();
  }
  if (report.contains("overlap_vs_k")) {
    std::ostringstream out;
    out << "k mean_overlap day_pairs\n";
    for (const json& r : report["overlap_vs_k"]) {
      out << r.at("k").get<std::uint64_t>() << ' '
          << FormatNumber(r.at("mean_fraction").get<double>()) << ' '
          << r.at("day_pairs").get<std::uint64_t>() << '\n';
    }
    files["overlap_vs_k.dat"] = out.str();
  }
  const json* curves = nullptr;
  if (report.contains("robustness")) curves = &report["robustness"]["curves"];
  if (report.contains("curves")) curves = &report["curves"];
  if (curves) {
    for (const json& c : *curves) {
      files["robustness_" + c.at("strategy").get<std::string>() + ".dat"] = CurveTable(c);
    }
  }
  return files;
}

void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp =
      path.parent_path() / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into '" + path.string() + "'");
  }
}

void WriteOutputs(const std::filesystem::path& dir, const json& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());

  std::map<std::string, std::string> files = PlotData(report);
  const bool robustness_only =
      report.contains("schema") && report["schema"] == kRobustnessSchema;
  files[robustness_only ? "robustness.json" : "report.json"] = report.dump(2) + "\n";

  const std::string suffix = ".staged-" + std::to_string(::getpid());
  std::vector<std::filesystem::path> staged;
  try {
    for (const auto& [name, contents] : files) {
      const auto tmp = dir / ("." + name + suffix);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      staged.push_back(tmp);
      out << contents;
      out.flush();
      if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    }
  } catch (...) {
    for (const auto& p : staged) std::filesystem::remove(p, ec);
    throw;
  }
  std::size_t i = 0;
  for (const auto& [name, contents] : files) {
    std::filesystem::rename(staged[i++], dir / name, ec);
    if (ec) {
      for (std::size_t j = i - 1; j < staged.size(); ++j) std::filesystem::remove(staged[j], ec);
      throw Error(ErrorCode::kIo, "cannot rename into '" + (dir / name).string() + "'");
    }
  }
}

UndirectedGraph ReadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<long long> ids;
    long long v = 0;
    while (fields >> v) ids.push_back(v);
    if (!fields.eof() || ids.size() > 2 ||
        std::any_of(ids.begin(), ids.end(), [](long long x) {
          return x < 0 || x > std::numeric_limits<NodeId>::max();
        })) {
      throw Error(ErrorCode::kIngest, path + ":" + std::to_string(line_no) +
                                          ": expected 'u v' or a single node id");
    }
    for (long long x : ids) nodes.push_back(static_cast<NodeId>(x));
    if (ids.size() == 2) edges.emplace_back(static_cast<NodeId>(ids[0]), static_cast<NodeId>(ids[1]));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return UndirectedGraph(std::move(nodes), edges);
}

void WriteEdgeList(const std::string& path, const UndirectedGraph& g) {
  std::ostringstream out;
  out << "# undirected edge list: " << g.node_count() << " nodes, " << g.edge_count()
      << " edges\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) out << g.node_id(i) << '\n';
  }
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  WriteFileAtomic(path, out.str());
}

json RunRobustness(const json& config) {
  std::optional<UndirectedGraph> graph;
  json source;
  std::vector<double> steps{0.0, 0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  std::vector<RemovalStrategy> strategies{{RemovalKind::kRandom, true, 0},
                                          {RemovalKind::kTargeted, true, 0}};
  std::uint64_t seed = 0;
  bool path_lengths = true;
  try {
    CheckKeys(config, {"edge_list", "log", "format", "ba", "er", "steps", "strategies",
                       "seed", "path_lengths", "output_dir"},
              "robustness config");
    const int sources = static_cast<int>(config.contains("edge_list")) +
                        static_cast<int>(config.contains("log")) +
                        static_cast<int>(config.contains("ba")) +
                        static_cast<int>(config.contains("er"));
    if (sources != 1) {
      throw Error(ErrorCode::kConfig, "robustness needs exactly one of edge_list, log, ba, er");
    }
    seed = config.value("seed", seed);
    path_lengths = config.value("path_lengths", path_lengths);
    if (config.contains("steps")) steps = config.at("steps").get<std::vector<double>>();
    if (config.contains("strategies")) strategies = StrategiesFromJson(config.at("strategies"));
    if (config.contains("edge_list")) {
      const auto path = config.at("edge_list").get<std::string>();
      graph = ReadEdgeList(path);
      source = {{"edge_list", path}};
    } else if (config.contains("log")) {
      const auto path = config.at("log").get<std::string>();
      const LogFormatConfig fmt =
          config.contains("format") ? LogFormatFromJson(config.at("format")) : LogFormatConfig{};
      const ParsedLog parsed = ParseEdgeLogFile(path, fmt);
      const std::vector<TemporalEdge>& edges = parsed.stream.edges();
      std::vector<Arc> arcs;
      arcs.reserve(edges.size());
      for (const TemporalEdge& e : edges) arcs.push_back({e.sender, e.recipient, 1});
      graph = UndirectedProjection(Multigraph(std::move(arcs), parsed.stream.shared_registry()));
      source = {{"log", path}};
    } else if (config.contains("ba")) {
      const json& b = config.at("ba");
      CheckKeys(b, {"n", "m", "m0", "seed"}, "ba");
      BAParams p;
      p.n = b.at("n").get<std::size_t>();
      p.m = b.at("m").get<std::size_t>();
      if (b.contains("m0")) p.m0 = b.at("m0").get<std::size_t>();
      p.seed = b.value("seed", seed);
      graph = GenerateBarabasiAlbert(p);
      source = {{"ba", {{"n", p.n}, {"m", p.m}, {"m0", p.m0.value_or(p.m)}, {"seed", p.seed}}}};
    } else {
      const json& e = config.at("er");
      CheckKeys(e, {"n", "p", "seed"}, "er");
      ERParams p;
      p.n = e.at("n").get<std::size_t>();
      p.p = e.at("p").get<double>();
      p.seed = e.value("seed", seed);
      graph = GenerateErdosRenyi(p);
      source = {{"er", {{"n", p.n}, {"p", p.p}, {"seed", p.seed}}}};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("robustness config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw Error(ErrorCode::kConfig, e.what());
    throw;
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] >= 0 && steps[i] < 1) || (i > 0 && steps[i] <= steps[i - 1])) {
      throw Error(ErrorCode::kConfig, "robustness steps must be strictly ascending in [0, 1)");
    }
  }
  if (graph->node_count() == 0) {
    throw Error(ErrorCode::kInsufficientData, "graph has no nodes");
  }
  json strategy_names = json::array();
  for (const auto& s : strategies) strategy_names.push_back(StrategyKey(s));
  return {{"schema", kRobustnessSchema},
          {"source", source},
          {"seed", seed},
          {"steps", steps},
          {"strategies", strategy_names},
          {"graph", {{"nodes", graph->node_count()}, {"edges", graph->edge_count()}}},
          {"curves", RunCurves(*graph, strategies, steps, path_lengths, seed)}};
}

}  // namespace crisisnet
