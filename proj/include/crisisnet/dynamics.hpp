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

// Temporal prominence: day-to-day degree correlation, per-node degree series
// and their stability, and agreement between top-k lists.

#ifndef CRISISNET_DYNAMICS_HPP_
#define CRISISNET_DYNAMICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crisisnet/centrality.hpp"
#include "crisisnet/temporal_graph.hpp"

namespace crisisnet {

// Product-moment correlation. Lengths must match and be >= 2
// (kInvalidArgument). Returns nullopt when either vector is constant.
std::optional<double> Pearson(std::span<const double> x, std::span<const double> y);

enum class CorrelationDomain {
  kRegistry,      // every registered node, zeros included
  kActiveEither,  // nodes with nonzero degree on either day of the pair
};

struct DayPairCorrelation {
  std::size_t day = 0;      // pair (day, day + 1)
  std::optional<double> r;  // nullopt: undefined (constant vector)
};

struct CorrelationSeries {
  CorrelationDomain domain = CorrelationDomain::kRegistry;
  std::vector<DayPairCorrelation> pairs;
  // First day of each pair skipped because either day had no messages.
  std::vector<std::size_t> excluded;
};

// Needs at least two snapshots (kInsufficientData).
CorrelationSeries ConsecutiveDayCorrelation(
    std::span<const DailySnapshot> snapshots, Direction direction = Direction::kOut,
    CorrelationDomain domain = CorrelationDomain::kRegistry);

// Control corpus: each day's arcs are relabelled by an independent uniform
// permutation of the registry, destroying identity persistence across days
// while keeping every daily degree distribution.
std::vector<DailySnapshot> ShuffleIdentities(std::span<const DailySnapshot> snapshots,
                                             std::uint64_t seed);

struct DegreeSeries {
  NodeId node = 0;
  std::vector<double> values;  // one per snapshot
  double mean = 0;
  double stddev = 0;           // population
  std::optional<double> cv;    // stddev / mean; nullopt when mean == 0
};

// kUnknownNode if `node` is in no snapshot's registry.
DegreeSeries NodeSeries(std::span<const DailySnapshot> snapshots, NodeId node,
                        Direction direction = Direction::kOut);
DegreeSeries MakeDegreeSeries(NodeId node, std::vector<double> values);

enum class Stability { kStable, kFluctuating, kInactive };

const char* StabilityName(Stability s);

inline constexpr double kDefaultCvThreshold = 1.0;

// kInactive if the mean is 0; kStable if CV <= threshold.
Stability ClassifyStability(const DegreeSeries& series,
                            double cv_threshold = kDefaultCvThreshold);

struct OverlapResult {
  std::size_t k = 0;
  std::size_t count = 0;
  double fraction = 0;  // count / k
};

// kInvalidArgument if the lists were built with different k.
OverlapResult RankOverlap(const RankList& a, const RankList& b);

struct OverlapRow {
  std::size_t k = 0;
  double mean_fraction = 0;
  std::size_t day_pairs = 0;
};

// Mean RankOverlap over all unordered pairs of non-empty days, for each k.
// k values must be positive and strictly ascending.
std::vector<OverlapRow> OverlapVsK(std::span<const DailySnapshot> snapshots,
                                   std::span<const std::size_t> k_values,
                                   Direction direction = Direction::kOut);

struct TopKFrequency {
  NodeId node = 0;
  std::size_t days = 0;  // days on which the node made the daily top-k
};

struct ConsistencyResult {
  // Daily top-k appearance counts, most frequent first, ties by node id.
  std::vector<TopKFrequency> frequency;
  RankList frequent;   // k most frequent daily-top nodes (degree = days)
  RankList aggregate;  // top-k of the aggregate graph
  OverlapResult overlap;
};

ConsistencyResult DailyVsAggregateConsistency(
    std::span<const DailySnapshot> snapshots, const AggregateGraph& aggregate,
    std::size_t k, Direction direction = Direction::kOut);

}  // namespace crisisnet

#endif  // CRISISNET_DYNAMICS_HPP_
