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

// End-to-end batch pipeline: ingest or synthesize a corpus, slice it into
// days, run every analysis, and emit a versioned JSON report plus columnar
// plot-data files.

#ifndef CRISISNET_PIPELINE_HPP_
#define CRISISNET_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "crisisnet/centrality.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/ingest.hpp"
#include "crisisnet/powerlaw.hpp"
#include "crisisnet/robustness.hpp"

namespace crisisnet {

inline constexpr const char* kReportSchema = "crisisnet.report/1";
inline constexpr const char* kRobustnessSchema = "crisisnet.robustness/1";

struct WindowConfig {
  std::optional<CivilDay> first_day;  // default: day of the first message
  std::optional<std::size_t> day_count;
  std::int64_t utc_offset_seconds = 0;
};

struct FitConfig {
  // xmin for the MLE; unset selects the KS-optimal xmin.
  std::optional<std::uint64_t> xmin = 1;
  std::size_t min_tail = kMinMleTail;
  double log_bin_ratio = 2.0;
};

struct RobustnessConfig {
  bool enabled = true;
  std::vector<double> steps{0.0, 0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  std::vector<RemovalStrategy> strategies{
      {RemovalKind::kRandom, true, 0},
      {RemovalKind::kTargeted, true, 0},
  };
  bool path_lengths = true;
};

struct PipelineConfig {
  // Exactly one of input_path / synthetic.
  std::optional<std::string> input_path;
  LogFormatConfig format;
  std::optional<HubCorpusParams> synthetic;

  WindowConfig window;
  Direction direction = Direction::kOut;
  std::size_t k = 10;
  std::vector<std::size_t> k_values{5, 10, 20};
  double cv_threshold = 1.0;
  FitConfig fit;
  RobustnessConfig robustness;
  std::uint64_t seed = 0;
  std::string output_dir = "crisisnet-out";
};

// Settings for reproducing the published experiment on a user-supplied
// corpus: daily out-degree networks over a 131-day window, top-10 lists.
PipelineConfig PaperRecipe();

// Both throw kConfig on unknown keys, bad values or a missing/duplicated input.
PipelineConfig PipelineConfigFromJson(const nlohmann::json& j);
nlohmann::json PipelineConfigToJson(const PipelineConfig& config);
LogFormatConfig LogFormatFromJson(const nlohmann::json& j);
nlohmann::json LogFormatToJson(const LogFormatConfig& cfg);
HubCorpusParams HubCorpusFromJson(const nlohmann::json& j);
RemovalStrategy RemovalStrategyFromName(const std::string& name);

struct PipelineResult {
  nlohmann::json report;
  // No messages inside the window; every section is flagged empty.
  bool empty = false;
};

// Pure computation; deterministic for a given config.
PipelineResult RunPipeline(const PipelineConfig& config);

// Plot-data files (name -> contents) for every section present in a report:
// one header line, then space-separated numeric columns.
std::map<std::string, std::string> PlotData(const nlohmann::json& report);

// Writes the report (report.json, or robustness.json for a robustness result)
// and its plot files into `dir`. Every file is staged under a temporary name
// and renamed into place only once all of them were written.
void WriteOutputs(const std::filesystem::path& dir, const nlohmann::json& report);

// Standalone robustness experiment. Config keys: exactly one graph source
// ("edge_list", "log" with optional "format", "ba" or "er"), then "steps",
// "strategies", "seed", "path_lengths" and "output_dir". Computes only.
nlohmann::json RunRobustness(const nlohmann::json& config);

// Text edge list: '#' comments, "u v" per edge, a lone id per isolated node.
UndirectedGraph ReadEdgeList(const std::string& path);
void WriteEdgeList(const std::string& path, const UndirectedGraph& g);

// Writes `contents` to `path` through a sibling temporary and a rename.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace crisisnet

#endif  // CRISISNET_PIPELINE_HPP_
