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

// Synthetic ground truth: preferential attachment, the G(n, p) baseline and a
// planted-hub message corpus. Same parameters and seed give identical output.

#ifndef CRISISNET_GENERATORS_HPP_
#define CRISISNET_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "crisisnet/temporal_graph.hpp"

namespace crisisnet {

struct BAParams {
  std::size_t n = 0;
  std::size_t m = 1;
  // Seed clique size; defaults to m.
  std::optional<std::size_t> m0;
  std::uint64_t seed = 0;
};

// Starts from the complete graph on m0 nodes; node t >= m0 then attaches to m
// distinct earlier nodes chosen with probability proportional to degree
// (uniform draws from the list of edge endpoints, re-drawing duplicates).
// When the endpoint list is empty (m0 == 1) the draw is uniform over existing
// nodes. Edge count is m0(m0-1)/2 + (n-m0)m. Requires n > m0 >= m >= 1.
UndirectedGraph GenerateBarabasiAlbert(const BAParams& params);

struct ERParams {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
};

// G(n, p) by geometric skipping over the lexicographic list of pairs.
UndirectedGraph GenerateErdosRenyi(const ERParams& params);

struct HubCorpusParams {
  std::size_t node_count = 151;
  std::size_t day_count = 131;
  std::size_t hub_count = 10;
  double hub_rate = 40.0;         // mean messages per hub per day
  double background_rate = 1.0;   // mean messages per other node per day
  Timestamp start = 988675200;    // 2001-05-01T00:00:00Z
  std::uint64_t seed = 0;
};

// Nodes 0..hub_count-1 are hubs. Each day every node sends Poisson(rate)
// messages to uniformly chosen other nodes at uniform times within the day.
// The stream is sorted; nodes that never send or receive are absent from its
// registry.
TemporalEdgeStream GenerateHubCorpus(const HubCorpusParams& params);

}  // namespace crisisnet

#endif  // CRISISNET_GENERATORS_HPP_
