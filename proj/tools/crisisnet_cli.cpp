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

// crisisnet command-line tool.
//
//   crisisnet ingest     --input log.csv [--write normalized.csv]
//   crisisnet generate   ba|er|hub ...
//   crisisnet analyze    --input log.csv | --synthetic [--config c.json] ...
//   crisisnet robustness --edge-list g.txt | --log log.csv | --ba-n N ... | --er-n N ...
//   crisisnet report     --report out/report.json [--output-dir dir]
//
// Exit codes: 0 success, 1 internal or usage error, 2 config error,
// 3 ingest error, 4 insufficient data (including an empty window), 5 I/O.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crisisnet/crisisnet.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIngest = 3;
constexpr int kExitInsufficient = 4;
constexpr int kExitIo = 5;

constexpr const char* kOutputDirEnv = "CRISISNET_OUTPUT_DIR";

int ExitCodeFor(cn_status s) {
  switch (s) {
    case CN_OK: return kExitOk;
    case CN_ERR_CONFIG: return kExitConfig;
    case CN_ERR_INGEST:
    case CN_ERR_ORDERING:
    case CN_ERR_WINDOW: return kExitIngest;
    case CN_ERR_INSUFFICIENT_DATA: return kExitInsufficient;
    case CN_ERR_IO: return kExitIo;
    default: return kExitInternal;
  }
}

struct Failure {
  int code;
  std::string message;
};

void Check(cn_status s, const std::string& context) {
  if (s != CN_OK) {
    throw Failure{ExitCodeFor(s), context + ": " + cn_status_string(s) + ": " + cn_last_error()};
  }
}

struct CString {
  char* p = nullptr;
  ~CString() { cn_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct StreamDeleter {
  void operator()(cn_stream* s) const { cn_stream_free(s); }
};
struct GraphDeleter {
  void operator()(cn_graph* g) const { cn_graph_free(g); }
};
using StreamPtr = std::unique_ptr<cn_stream, StreamDeleter>;
using GraphPtr = std::unique_ptr<cn_graph, GraphDeleter>;

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitIo, "cannot open '" + path + "'"};
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Failure{kExitConfig, path + ": " + e.what()};
  }
}

std::string DefaultOutputDir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? env : "crisisnet-out";
}

// Log-format flags shared by every verb that reads a message log.
struct FormatFlags {
  std::vector<std::string> columns;
  std::string timestamp;
  std::string delimiter;
  bool header = false;
  std::optional<double> malformed_threshold;
  bool collapse_duplicates = false;

  void Register(CLI::App* app) {
    app->add_option("--columns", columns, "column order, e.g. sender recipient timestamp")
        ->expected(3);
    app->add_option("--timestamp-format", timestamp, "unix or iso8601")
        ->check(CLI::IsMember({"unix", "iso8601"}));
    app->add_option("--delimiter", delimiter, "single-byte field delimiter");
    app->add_flag("--header", header, "first line is a header");
    app->add_option("--malformed-threshold", malformed_threshold,
                    "maximum tolerated fraction of malformed rows");
    app->add_flag("--collapse-duplicates", collapse_duplicates,
                  "merge exact (sender, recipient, timestamp) repeats");
  }

  void ApplyTo(json& format) const {
    if (!columns.empty()) format["columns"] = columns;
    if (!timestamp.empty()) format["timestamp"] = timestamp;
    if (!delimiter.empty()) format["delimiter"] = delimiter == "\\t" ? "\t" : delimiter;
    if (header) format["header"] = true;
    if (malformed_threshold) format["malformed_threshold"] = *malformed_threshold;
    if (collapse_duplicates) format["collapse_duplicates"] = true;
  }

  json ToJson() const {
    json format = json::object();
    ApplyTo(format);
    return format;
  }
};

struct HubFlags {
  std::optional<std::size_t> node_count, day_count, hub_count;
  std::optional<double> hub_rate, background_rate;
  std::string start;

  void Register(CLI::App* app) {
    app->add_option("--nodes", node_count, "actors in the planted-hub corpus");
    app->add_option("--days", day_count, "days of traffic");
    app->add_option("--hubs", hub_count, "planted hubs (ids 0..hubs-1)");
    app->add_option("--hub-rate", hub_rate, "mean messages per hub per day");
    app->add_option("--background-rate", background_rate, "mean messages per other actor per day");
    app->add_option("--start", start, "first day, YYYY-MM-DD");
  }

  void ApplyTo(json& p) const {
    if (node_count) p["node_count"] = *node_count;
    if (day_count) p["day_count"] = *day_count;
    if (hub_count) p["hub_count"] = *hub_count;
    if (hub_rate) p["hub_rate"] = *hub_rate;
    if (background_rate) p["background_rate"] = *background_rate;
    if (!start.empty()) p["start"] = start;
  }
};

StreamPtr ParseLog(const std::string& path, const json& format) {
  cn_stream* raw = nullptr;
  const std::string fmt = format.dump();
  Check(cn_stream_parse_file(path.c_str(), fmt.c_str(), &raw), "ingest");
  return StreamPtr(raw);
}

void PrintJson(const std::string& text) { std::cout << text << '\n'; }

// --- ingest ---------------------------------------------------------------

struct IngestCmd {
  std::string input;
  std::string write;
  FormatFlags format;

  void Register(CLI::App* app) {
    app->add_option("-i,--input", input, "message log")->required();
    app->add_option("-w,--write", write, "write the normalized (sorted) log here");
    format.Register(app);
  }

  int Run() {
    const json fmt = format.ToJson();
    StreamPtr stream = ParseLog(input, fmt);
    CString report;
    Check(cn_stream_ingest_report(stream.get(), &report.p), "ingest");
    if (!write.empty()) {
      Check(cn_stream_write_file(stream.get(), write.c_str(), fmt.dump().c_str()), "write");
    }
    PrintJson(report.str());
    return kExitOk;
  }
};

// --- generate -------------------------------------------------------------

struct GenerateCmd {
  CLI::App* ba = nullptr;
  CLI::App* er = nullptr;
  CLI::App* hub = nullptr;
  std::size_t n = 0, m = 1, m0 = 0;
  double p = 0;
  std::uint64_t seed = 0;
  std::string output;
  HubFlags hub_flags;
  FormatFlags format;

  void Register(CLI::App* app) {
    app->require_subcommand(1);
    ba = app->add_subcommand("ba", "preferential-attachment graph (edge list)");
    ba->add_option("-n,--n", n, "final node count")->required();
    ba->add_option("-m,--m", m, "edges per new node");
    ba->add_option("--m0", m0, "seed clique size (default m)");
    er = app->add_subcommand("er", "G(n, p) random graph (edge list)");
    er->add_option("-n,--n", n, "node count")->required();
    er->add_option("-p,--p", p, "edge probability")->required();
    hub = app->add_subcommand("hub", "planted-hub message log");
    hub_flags.Register(hub);
    format.Register(hub);
    for (CLI::App* sub : {ba, er, hub}) {
      sub->add_option("--seed", seed, "RNG seed");
      sub->add_option("-o,--output", output, "output file")->required();
    }
  }

  int Run() {
    if (hub->parsed()) {
      json params = json::object();
      hub_flags.ApplyTo(params);
      params["seed"] = seed;
      cn_stream* raw = nullptr;
      Check(cn_stream_generate_hub_corpus(params.dump().c_str(), &raw), "generate");
      StreamPtr stream(raw);
      Check(cn_stream_write_file(stream.get(), output.c_str(), format.ToJson().dump().c_str()),
            "write");
      std::cout << "wrote " << cn_stream_edge_count(stream.get()) << " messages among "
                << cn_stream_node_count(stream.get()) << " actors to " << output << '\n';
      return kExitOk;
    }
    cn_graph* raw = nullptr;
    if (ba->parsed()) {
      Check(cn_graph_generate_ba(n, m, m0, seed, &raw), "generate ba");
    } else {
      Check(cn_graph_generate_er(n, p, seed, &raw), "generate er");
    }
    GraphPtr graph(raw);
    Check(cn_graph_write_edge_list(graph.get(), output.c_str()), "write");
    std::cout << "wrote " << cn_graph_node_count(graph.get()) << " nodes, "
              << cn_graph_edge_count(graph.get()) << " edges to " << output << '\n';
    return kExitOk;
  }
};

// --- analyze --------------------------------------------------------------

struct AnalyzeCmd {
  std::string config_path;
  bool paper_recipe = false;
  std::string input;
  bool synthetic = false;
  FormatFlags format;
  HubFlags hub;
  std::string first_day;
  std::optional<std::size_t> window_days;
  std::optional<std::int64_t> utc_offset;
  std::string direction;
  std::optional<std::size_t> k;
  std::vector<std::size_t> k_values;
  std::optional<double> cv_threshold;
  std::string xmin;
  std::optional<std::size_t> min_tail;
  std::optional<double> log_bin_ratio;
  bool no_robustness = false;
  std::vector<double> steps;
  std::vector<std::string> strategies;
  bool no_path_lengths = false;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  bool print_config = false;

  void Register(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON pipeline config; flags override it");
    app->add_flag("--paper-recipe", paper_recipe,
                  "daily out-degree networks, k=10, 131-day window (supply --input)");
    app->add_option("-i,--input", input, "message log");
    app->add_flag("--synthetic", synthetic, "analyze a generated planted-hub corpus");
    format.Register(app);
    hub.Register(app);
    app->add_option("--first-day", first_day, "window start, YYYY-MM-DD");
    app->add_option("--window-days", window_days, "window length in days");
    app->add_option("--utc-offset", utc_offset, "seconds added to UTC before cutting days");
    app->add_option("--direction", direction, "degree direction")
        ->check(CLI::IsMember({"out", "in", "total"}));
    app->add_option("-k,--k", k, "top-k list size");
    app->add_option("--k-values", k_values, "k values for the overlap table");
    app->add_option("--cv-threshold", cv_threshold, "stable if CV <= threshold");
    app->add_option("--xmin", xmin, "MLE xmin: integer or 'scan'");
    app->add_option("--min-tail", min_tail, "smallest tail kept by the xmin scan");
    app->add_option("--log-bin-ratio", log_bin_ratio, "log-bin width ratio");
    app->add_flag("--no-robustness", no_robustness, "skip the robustness curves");
    app->add_option("--steps", steps, "cumulative removal fractions");
    app->add_option("--strategies", strategies,
                    "random, targeted-adaptive, targeted-static");
    app->add_flag("--no-path-lengths", no_path_lengths, "skip path lengths in the curves");
    app->add_option("--seed", seed, "global seed");
    app->add_option("-o,--output-dir", output_dir,
                    std::string("output directory (default $") + kOutputDirEnv +
                        " or crisisnet-out)");
    app->add_flag("--print-config", print_config, "print the effective config and exit");
  }

  json BuildConfig() const {
    json config = json::object();
    if (paper_recipe) {
      CString recipe;
      Check(cn_paper_recipe(&recipe.p), "paper recipe");
      config = json::parse(recipe.str());
    }
    if (!config_path.empty()) config.merge_patch(ReadJsonFile(config_path));
    if (!input.empty()) {
      config.erase("synthetic");
      config["input"] = input;
    }
    if (synthetic) {
      config.erase("input");
      config.erase("format");
      if (!config.contains("synthetic")) config["synthetic"] = json::object();
    }
    if (config.contains("input")) {
      json fmt = config.value("format", json::object());
      format.ApplyTo(fmt);
      config["format"] = fmt;
    }
    if (config.contains("synthetic")) hub.ApplyTo(config["synthetic"]);
    if (!first_day.empty() || window_days || utc_offset) {
      json& w = config["window"];
      if (!w.is_object()) w = json::object();
      if (!first_day.empty()) w["first_day"] = first_day;
      if (window_days) w["day_count"] = *window_days;
      if (utc_offset) w["utc_offset_seconds"] = *utc_offset;
    }
    if (!direction.empty()) config["direction"] = direction;
    if (k) config["k"] = *k;
    if (!k_values.empty()) config["k_values"] = k_values;
    if (cv_threshold) config["cv_threshold"] = *cv_threshold;
    if (!xmin.empty() || min_tail || log_bin_ratio) {
      json& f = config["fit"];
      if (!f.is_object()) f = json::object();
      if (!xmin.empty()) {
        if (xmin == "scan") {
          f["xmin"] = "scan";
        } else {
          try {
            f["xmin"] = std::stoull(xmin);
          } catch (const std::exception&) {
            throw Failure{kExitConfig, "--xmin must be a positive integer or 'scan'"};
          }
        }
      }
      if (min_tail) f["min_tail"] = *min_tail;
      if (log_bin_ratio) f["log_bin_ratio"] = *log_bin_ratio;
    }
    if (no_robustness || !steps.empty() || !strategies.empty() || no_path_lengths) {
      json& r = config["robustness"];
      if (!r.is_object()) r = json::object();
      if (no_robustness) r["enabled"] = false;
      if (!steps.empty()) r["steps"] = steps;
      if (!strategies.empty()) r["strategies"] = strategies;
      if (no_path_lengths) r["path_lengths"] = false;
    }
    if (seed) config["seed"] = *seed;
    if (!output_dir.empty()) {
      config["output_dir"] = output_dir;
    } else if (!config.contains("output_dir")) {
      config["output_dir"] = DefaultOutputDir();
    }
    return config;
  }

  int Run() {
    const json config = BuildConfig();
    const std::string text = config.dump();
    CString normalized;
    Check(cn_config_normalize(text.c_str(), &normalized.p), "config");
    if (print_config) {
      PrintJson(normalized.str());
      return kExitOk;
    }
    CString report;
    const cn_status status = cn_pipeline_run(text.c_str(), &report.p);
    if (status != CN_OK && status != CN_ERR_INSUFFICIENT_DATA) Check(status, "analyze");
    if (!report.p) Check(status, "analyze");
    const std::string dir = config.at("output_dir").get<std::string>();
    Check(cn_report_emit(report.p, dir.c_str()), "emit");
    PrintSummary(json::parse(report.str()), dir);
    if (status == CN_ERR_INSUFFICIENT_DATA) {
      std::cerr << "crisisnet: no messages inside the observation window; "
                   "report sections are empty\n";
      return kExitInsufficient;
    }
    return kExitOk;
  }

  static void PrintSummary(const json& r, const std::string& dir);
};

std::string Num(const json& v) {
  if (!v.is_number()) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v.get<double>());
  return buf;
}

void AnalyzeCmd::PrintSummary(const json& r, const std::string& dir) {
  const json& c = r.at("corpus");
  std::cout << "status: " << r.at("status").get<std::string>() << '\n'
            << "corpus: " << c.at("messages") << " messages, " << c.at("nodes") << " actors, "
            << c.at("day_count") << " days from " << c.at("first_day").get<std::string>()
            << " (" << c.at("empty_days") << " empty, " << c.at("messages_outside_window")
            << " messages outside the window)\n";
  if (r.at("status") == "ok") {
    const json& fits = r.at("aggregate").at("fits");
    if (fits.is_object() && fits.at("mle").is_object()) {
      std::cout << "aggregate MLE gamma: " << Num(fits["mle"]["gamma"])
                << " (xmin " << fits["mle"]["xmin"] << ")\n";
    }
    const json& corr = r.at("correlation");
    std::cout << "median consecutive-day r: " << Num(corr.at("median_r"));
    if (corr.at("shuffled_control").is_object()) {
      std::cout << " (shuffled control |r|: "
                << Num(corr["shuffled_control"]["median_abs_r"]) << ")";
    }
    std::cout << '\n';
    const json& cons = r.at("consistency");
    std::cout << "daily/aggregate consistency: " << cons.at("count") << '/' << cons.at("k")
              << '\n'
              << "top-" << r.at("concentration").at("k")
              << " concentration share: " << Num(r.at("concentration").at("share")) << '\n';
    if (r.contains("robustness")) {
      for (const json& curve : r["robustness"]["curves"]) {
        std::cout << "robustness " << curve.at("strategy").get<std::string>()
                  << ": giant fraction at last step "
                  << Num(curve.at("points").back().at("giant_fraction")) << '\n';
      }
    }
  }
  std::cout << "outputs: " << dir << '\n';
}

// --- robustness -----------------------------------------------------------

struct RobustnessCmd {
  std::string config_path;
  std::string edge_list;
  std::string log;
  FormatFlags format;
  std::optional<std::size_t> ba_n, ba_m, ba_m0, er_n;
  std::optional<double> er_p;
  std::vector<double> steps;
  std::vector<std::string> strategies;
  std::optional<std::uint64_t> seed;
  bool no_path_lengths = false;
  std::string output_dir;

  void Register(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON robustness config; flags override it");
    app->add_option("--edge-list", edge_list, "undirected edge list");
    app->add_option("--log", log, "message log (projected to an undirected graph)");
    format.Register(app);
    app->add_option("--ba-n", ba_n, "generate a BA graph with n nodes");
    app->add_option("--ba-m", ba_m, "BA edges per new node");
    app->add_option("--ba-m0", ba_m0, "BA seed clique size");
    app->add_option("--er-n", er_n, "generate a G(n, p) graph with n nodes");
    app->add_option("--er-p", er_p, "G(n, p) edge probability");
    app->add_option("--steps", steps, "cumulative removal fractions");
    app->add_option("--strategies", strategies, "random, targeted-adaptive, targeted-static");
    app->add_option("--seed", seed, "seed for random removal, sampling and generators");
    app->add_flag("--no-path-lengths", no_path_lengths, "giant component only");
    app->add_option("-o,--output-dir", output_dir,
                    std::string("output directory (default $") + kOutputDirEnv +
                        " or crisisnet-out)");
  }

  int Run() {
    json config = config_path.empty() ? json::object() : ReadJsonFile(config_path);
    auto set_source = [&](const char* key, json value) {
      for (const char* k : {"edge_list", "log", "format", "ba", "er"}) config.erase(k);
      config[key] = std::move(value);
    };
    if (!edge_list.empty()) set_source("edge_list", edge_list);
    if (!log.empty()) {
      set_source("log", log);
      config["format"] = format.ToJson();
    }
    if (ba_n) {
      json ba{{"n", *ba_n}, {"m", ba_m.value_or(1)}};
      if (ba_m0) ba["m0"] = *ba_m0;
      set_source("ba", ba);
    }
    if (er_n) {
      if (!er_p) throw Failure{kExitConfig, "--er-n needs --er-p"};
      set_source("er", {{"n", *er_n}, {"p", *er_p}});
    }
    if (!steps.empty()) config["steps"] = steps;
    if (!strategies.empty()) config["strategies"] = strategies;
    if (seed) config["seed"] = *seed;
    if (no_path_lengths) config["path_lengths"] = false;
    std::string dir = output_dir;
    if (dir.empty()) dir = config.value("output_dir", DefaultOutputDir());
    config.erase("output_dir");

    CString result;
    Check(cn_robustness_run(config.dump().c_str(), &result.p), "robustness");
    Check(cn_report_emit(result.p, dir.c_str()), "emit");
    const json r = json::parse(result.str());
    std::cout << "graph: " << r["graph"]["nodes"] << " nodes, " << r["graph"]["edges"]
              << " edges\n";
    for (const json& curve : r["curves"]) {
      std::cout << curve.at("strategy").get<std::string>() << ":";
      for (const json& p : curve["points"]) {
        std::cout << ' ' << Num(p["fraction_removed"]) << "->" << Num(p["giant_fraction"]);
      }
      std::cout << '\n';
    }
    std::cout << "outputs: " << dir << '\n';
    return kExitOk;
  }
};

// --- report ---------------------------------------------------------------

struct ReportCmd {
  std::string report_path;
  std::string output_dir;

  void Register(CLI::App* app) {
    app->add_option("-r,--report", report_path, "report.json or robustness.json")->required();
    app->add_option("-o,--output-dir", output_dir,
                    "where to write plot files (default: beside the report)");
  }

  int Run() {
    const json report = ReadJsonFile(report_path);
    std::string dir = output_dir;
    if (dir.empty()) {
      const auto slash = report_path.find_last_of('/');
      dir = slash == std::string::npos ? "." : report_path.substr(0, slash);
    }
    Check(cn_report_emit(report.dump().c_str(), dir.c_str()), "emit");
    std::cout << "schema: " << report.value("schema", std::string("?")) << '\n';
    if (report.contains("corpus")) {
      AnalyzeCmd::PrintSummary(report, dir);
    } else {
      std::cout << "outputs: " << dir << '\n';
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication-network analysis: daily degree structure, hub dynamics "
               "and robustness."};
  app.set_version_flag("--version", cn_version());
  app.require_subcommand(1);

  IngestCmd ingest;
  GenerateCmd generate;
  AnalyzeCmd analyze;
  RobustnessCmd robustness;
  ReportCmd report;
  CLI::App* ingest_app = app.add_subcommand("ingest", "parse and validate a message log");
  CLI::App* generate_app = app.add_subcommand("generate", "write a synthetic graph or log");
  CLI::App* analyze_app = app.add_subcommand("analyze", "run the full temporal pipeline");
  CLI::App* robustness_app =
      app.add_subcommand("robustness", "random failure vs targeted attack curves");
  CLI::App* report_app = app.add_subcommand("report", "re-emit plot files from a report");
  ingest.Register(ingest_app);
  generate.Register(generate_app);
  analyze.Register(analyze_app);
  robustness.Register(robustness_app);
  report.Register(report_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (ingest_app->parsed()) return ingest.Run();
    if (generate_app->parsed()) return generate.Run();
    if (analyze_app->parsed()) return analyze.Run();
    if (robustness_app->parsed()) return robustness.Run();
    return report.Run();
  } catch (const Failure& f) {
    std::cerr << "crisisnet: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "crisisnet: " << e.what() << '\n';
    return kExitInternal;
  }
}
