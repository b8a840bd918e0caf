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

#include "crisisnet/crisisnet.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "crisisnet/error.hpp"
#include "crisisnet/pipeline.hpp"
#include "crisisnet/powerlaw.hpp"

struct cn_stream {
  crisisnet::TemporalEdgeStream stream;
  crisisnet::IngestReport report;
};

struct cn_graph {
  crisisnet::UndirectedGraph graph;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

cn_status StatusOf(crisisnet::ErrorCode code) {
  using crisisnet::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return CN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kOrdering: return CN_ERR_ORDERING;
    case ErrorCode::kWindow: return CN_ERR_WINDOW;
    case ErrorCode::kIngest: return CN_ERR_INGEST;
    case ErrorCode::kInsufficientData:
    case ErrorCode::kEmptyHistogram: return CN_ERR_INSUFFICIENT_DATA;
    case ErrorCode::kUnknownNode: return CN_ERR_UNKNOWN_NODE;
    case ErrorCode::kConfig: return CN_ERR_CONFIG;
    case ErrorCode::kIo: return CN_ERR_IO;
  }
  return CN_ERR_INTERNAL;
}

template <typename Fn>
cn_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return CN_OK;
  } catch (const crisisnet::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return CN_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return CN_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw crisisnet::Error(crisisnet::ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

crisisnet::LogFormatConfig FormatFrom(const char* format_json) {
  if (!format_json) return {};
  return crisisnet::LogFormatFromJson(json::parse(format_json));
}

json ParseJson(const char* text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw crisisnet::Error(crisisnet::ErrorCode::kConfig,
                           std::string("invalid JSON: ") + e.what());
  }
}

cn_powerlaw_fit ToC(const crisisnet::PowerLawFit& fit) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {fit.gamma, fit.xmin, fit.r_squared.value_or(nan), fit.ks_statistic.value_or(nan),
          fit.n_tail};
}

}  // namespace

extern "C" {

const char* cn_version(void) { return "0.1.0"; }

const char* cn_status_string(cn_status status) {
  switch (status) {
    case CN_OK: return "ok";
    case CN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CN_ERR_CONFIG: return "configuration error";
    case CN_ERR_INGEST: return "ingest error";
    case CN_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case CN_ERR_IO: return "I/O error";
    case CN_ERR_ORDERING: return "ordering error";
    case CN_ERR_WINDOW: return "window error";
    case CN_ERR_UNKNOWN_NODE: return "unknown node";
    case CN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cn_last_error(void) { return last_error.c_str(); }

void cn_string_free(char* s) { std::free(s); }

cn_status cn_stream_parse_file(const char* path, const char* format_json, cn_stream** out) {
  return Guard([&] {
    Require(path && out, "path and out must be non-null");
    auto parsed = crisisnet::ParseEdgeLogFile(path, FormatFrom(format_json));
    *out = new cn_stream{std::move(parsed.stream), std::move(parsed.report)};
  });
}

cn_status cn_stream_parse_buffer(const char* data, size_t size, const char* format_json,
                                 cn_stream** out) {
  return Guard([&] {
    Require((data || size == 0) && out, "data and out must be non-null");
    std::istringstream in(std::string(data ? data : "", size));
    auto parsed = crisisnet::ParseEdgeLog(in, FormatFrom(format_json));
    *out = new cn_stream{std::move(parsed.stream), std::move(parsed.report)};
  });
}

cn_status cn_stream_write_file(const cn_stream* stream, const char* path,
                               const char* format_json) {
  return Guard([&] {
    Require(stream && path, "stream and path must be non-null");
    std::ostringstream out;
    crisisnet::WriteEdgeLog(out, stream->stream, FormatFrom(format_json));
    crisisnet::WriteFileAtomic(path, out.str());
  });
}

cn_status cn_stream_generate_hub_corpus(const char* params_json, cn_stream** out) {
  return Guard([&] {
    Require(out != nullptr, "out must be non-null");
    const auto params =
        crisisnet::HubCorpusFromJson(params_json ? ParseJson(params_json) : json::object());
    *out = new cn_stream{crisisnet::GenerateHubCorpus(params), {}};
  });
}

cn_status cn_stream_ingest_report(const cn_stream* stream, char** report_json) {
  return Guard([&] {
    Require(stream && report_json, "stream and report must be non-null");
    const crisisnet::IngestReport& r = stream->report;
    json malformed = json::array();
    for (const auto& m : r.malformed) malformed.push_back({{"line", m.line}, {"reason", m.reason}});
    const json j{{"rows_read", r.rows_read},
                 {"accepted", r.accepted},
                 {"self_loops_dropped", r.self_loops_dropped},
                 {"duplicates_collapsed", r.duplicates_collapsed},
                 {"malformed", std::move(malformed)},
                 {"nodes", stream->stream.registry().size()}};
    *report_json = CopyString(j.dump(2));
  });
}

size_t cn_stream_edge_count(const cn_stream* stream) {
  return stream ? stream->stream.size() : 0;
}

size_t cn_stream_node_count(const cn_stream* stream) {
  return stream ? stream->stream.registry().size() : 0;
}

void cn_stream_free(cn_stream* stream) { delete stream; }

cn_status cn_graph_generate_ba(size_t n, size_t m, size_t m0, uint64_t seed, cn_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "out must be non-null");
    crisisnet::BAParams p;
    p.n = n;
    p.m = m;
    if (m0 != 0) p.m0 = m0;
    p.seed = seed;
    *out = new cn_graph{crisisnet::GenerateBarabasiAlbert(p)};
  });
}

cn_status cn_graph_generate_er(size_t n, double p, uint64_t seed, cn_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "out must be non-null");
    *out = new cn_graph{crisisnet::GenerateErdosRenyi({n, p, seed})};
  });
}

cn_status cn_graph_from_stream(const cn_stream* stream, cn_graph** out) {
  return Guard([&] {
    Require(stream && out, "stream and out must be non-null");
    std::vector<crisisnet::Arc> arcs;
    arcs.reserve(stream->stream.size());
    for (const auto& e : stream->stream.edges()) arcs.push_back({e.sender, e.recipient, 1});
    const crisisnet::Multigraph g(std::move(arcs), stream->stream.shared_registry());
    *out = new cn_graph{crisisnet::UndirectedProjection(g)};
  });
}

cn_status cn_graph_read_edge_list(const char* path, cn_graph** out) {
  return Guard([&] {
    Require(path && out, "path and out must be non-null");
    *out = new cn_graph{crisisnet::ReadEdgeList(path)};
  });
}

cn_status cn_graph_write_edge_list(const cn_graph* graph, const char* path) {
  return Guard([&] {
    Require(graph && path, "graph and path must be non-null");
    crisisnet::WriteEdgeList(path, graph->graph);
  });
}

size_t cn_graph_node_count(const cn_graph* graph) { return graph ? graph->graph.node_count() : 0; }

size_t cn_graph_edge_count(const cn_graph* graph) { return graph ? graph->graph.edge_count() : 0; }

cn_status cn_graph_degrees(const cn_graph* graph, uint64_t* out, size_t capacity) {
  return Guard([&] {
    Require(graph != nullptr, "graph must be non-null");
    const size_t n = graph->graph.node_count();
    Require(capacity >= n && (out || n == 0), "output buffer smaller than node count");
    for (size_t i = 0; i < n; ++i) out[i] = graph->graph.degree(i);
  });
}

void cn_graph_free(cn_graph* graph) { delete graph; }

cn_status cn_fit_mle(const uint64_t* degrees, size_t count, uint64_t xmin,
                     cn_powerlaw_fit* out) {
  return Guard([&] {
    Require((degrees || count == 0) && out, "degrees and out must be non-null");
    const std::span<const uint64_t> d(degrees, count);
    *out = ToC(xmin == 0 ? crisisnet::FitMleScanXmin(d) : crisisnet::FitMle(d, xmin));
  });
}

cn_status cn_fit_ols(const uint64_t* degrees, size_t count, cn_fit_target target,
                     uint64_t xmin, cn_powerlaw_fit* out) {
  return Guard([&] {
    Require((degrees || count == 0) && out, "degrees and out must be non-null");
    Require(target == CN_FIT_PDF || target == CN_FIT_CCDF, "unknown fit target");
    const auto h = crisisnet::Histogram(std::span<const uint64_t>(degrees, count));
    *out = ToC(crisisnet::FitOls(
        h, target == CN_FIT_PDF ? crisisnet::FitTarget::kPdf : crisisnet::FitTarget::kCcdf,
        xmin == 0 ? 1 : xmin));
  });
}

cn_status cn_robustness_curve(const cn_graph* graph, cn_removal_kind kind, uint64_t seed,
                              const double* fractions, size_t count, int path_lengths,
                              cn_curve_point* out) {
  return Guard([&] {
    Require(graph && (fractions || count == 0) && (out || count == 0),
            "graph, fractions and out must be non-null");
    crisisnet::RemovalStrategy s;
    switch (kind) {
      case CN_REMOVAL_RANDOM: s = {crisisnet::RemovalKind::kRandom, true, seed}; break;
      case CN_REMOVAL_TARGETED_ADAPTIVE: s = {crisisnet::RemovalKind::kTargeted, true, 0}; break;
      case CN_REMOVAL_TARGETED_STATIC: s = {crisisnet::RemovalKind::kTargeted, false, 0}; break;
      default: Require(false, "unknown removal kind");
    }
    crisisnet::CurveOptions options;
    options.path_lengths = path_lengths != 0;
    options.path.seed = seed;
    const auto curve = crisisnet::ComputeRobustnessCurve(
        graph->graph, s, std::span<const double>(fractions, count), options);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < curve.points.size(); ++i) {
      const auto& p = curve.points[i];
      out[i] = {p.fraction_removed, p.removed, p.giant_fraction,
                p.avg_path_length.value_or(nan)};
    }
  });
}

cn_status cn_paper_recipe(char** config_json) {
  return Guard([&] {
    Require(config_json != nullptr, "config must be non-null");
    json j = crisisnet::PipelineConfigToJson(crisisnet::PaperRecipe());
    *config_json = CopyString(j.dump(2));
  });
}

cn_status cn_config_normalize(const char* config_json, char** normalized_json) {
  return Guard([&] {
    Require(config_json && normalized_json, "config and output must be non-null");
    const auto config = crisisnet::PipelineConfigFromJson(ParseJson(config_json));
    *normalized_json = CopyString(crisisnet::PipelineConfigToJson(config).dump(2));
  });
}

cn_status cn_pipeline_run(const char* config_json, char** report_json) {
  bool empty = false;
  const cn_status status = Guard([&] {
    Require(config_json && report_json, "config and report must be non-null");
    *report_json = nullptr;
    const auto config = crisisnet::PipelineConfigFromJson(ParseJson(config_json));
    auto result = crisisnet::RunPipeline(config);
    *report_json = CopyString(result.report.dump(2));
    empty = result.empty;
  });
  if (status == CN_OK && empty) {
    last_error = "no messages inside the observation window";
    return CN_ERR_INSUFFICIENT_DATA;
  }
  return status;
}

cn_status cn_report_emit(const char* report_json, const char* dir) {
  return Guard([&] {
    Require(report_json && dir, "report and dir must be non-null");
    crisisnet::WriteOutputs(dir, ParseJson(report_json));
  });
}

cn_status cn_robustness_run(const char* config_json, char** result_json) {
  return Guard([&] {
    Require(config_json && result_json, "config and result must be non-null");
    *result_json = nullptr;
    *result_json = CopyString(crisisnet::RunRobustness(ParseJson(config_json)).dump(2));
  });
}

}  // extern "C"
