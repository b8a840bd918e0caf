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

// Error and attack tolerance: how the giant component and the mean shortest
// path degrade as nodes are removed at random or by degree.

#ifndef CRISISNET_ROBUSTNESS_HPP_
#define CRISISNET_ROBUSTNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crisisnet/temporal_graph.hpp"

namespace crisisnet {

// Largest component size over original_n; 0 for an empty graph or
// original_n == 0.
double GiantComponentFraction(const UndirectedGraph& g, std::size_t original_n);

// Above this many nodes in the giant component, path lengths are estimated
// from a seeded sample of BFS sources.
inline constexpr std::size_t kExactPathLengthLimit = 50000;
inline constexpr std::size_t kSampledSources = 1000;

struct PathLengthOptions {
  std::size_t exact_limit = kExactPathLengthLimit;
  std::size_t sampled_sources = kSampledSources;
  std::uint64_t seed = 0;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

// Mean shortest-path distance over unordered pairs of the largest component
// (smallest node id wins a size tie). nullopt when it has fewer than 2 nodes.
std::optional<double> AveragePathLength(const UndirectedGraph& g,
                                        const PathLengthOptions& options = {});

enum class RemovalKind { kRandom, kTargeted };

struct RemovalStrategy {
  RemovalKind kind = RemovalKind::kRandom;
  // Targeted only: recompute degrees after every removal.
  bool adaptive = true;
  std::uint64_t seed = 0;  // random only
};

const char* RemovalStrategyName(const RemovalStrategy& s);

// Order in which nodes (dense indices) are removed. Targeted removal picks the
// highest current degree, ties by ascending node id.
std::vector<std::size_t> RemovalOrder(const UndirectedGraph& g,
                                      const RemovalStrategy& strategy);

struct CurvePoint {
  double fraction_removed = 0;
  std::size_t removed = 0;
  double giant_fraction = 0;  // relative to the original node count
  std::optional<double> avg_path_length;
};

struct RobustnessCurve {
  RemovalStrategy strategy;
  std::size_t original_n = 0;
  std::vector<CurvePoint> points;
};

struct CurveOptions {
  bool path_lengths = true;
  PathLengthOptions path;
};

// For each cumulative fraction f (strictly ascending within [0, 1)), removes
// round(f * n) nodes in removal order and measures the survivor graph.
RobustnessCurve ComputeRobustnessCurve(const UndirectedGraph& g,
                                       const RemovalStrategy& strategy,
                                       std::span<const double> fractions,
                                       const CurveOptions& options = {});

// Induced subgraph on the nodes whose `keep` flag is set.
UndirectedGraph InducedSubgraph(const UndirectedGraph& g, const std::vector<bool>& keep);

}  // namespace crisisnet

#endif  // CRISISNET_ROBUSTNESS_HPP_
