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

#include "crisisnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "crisisnet/error.hpp"
#include "crisisnet/random.hpp"

namespace crisisnet {

UndirectedGraph GenerateBarabasiAlbert(const BAParams& params) {
  const std::size_t n = params.n;
  const std::size_t m = params.m;
  const std::size_t m0 = params.m0.value_or(m);
  if (!(m >= 1 && m0 >= m && n > m0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "BA parameters need n > m0 >= m >= 1 (n=" + std::to_string(n) +
                    ", m0=" + std::to_string(m0) + ", m=" + std::to_string(m) + ")");
  }
  Rng rng(params.seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m0 * (m0 - 1) / 2 + (n - m0) * m);
  // Each edge contributes both endpoints, so a node appears degree-many times.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (std::size_t u = 0; u < m0; ++u) {
    for (std::size_t v = u + 1; v < m0; ++v) {
      edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      endpoints.push_back(static_cast<NodeId>(u));
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  std::vector<NodeId> targets;
  targets.reserve(m);
  for (std::size_t t = m0; t < n; ++t) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick =
          endpoints.empty()
              ? static_cast<NodeId>(rng.UniformInt(t))
              : endpoints[static_cast<std::size_t>(rng.UniformInt(endpoints.size()))];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (NodeId target : targets) {
      edges.emplace_back(target, static_cast<NodeId>(t));
      endpoints.push_back(target);
      endpoints.push_back(static_cast<NodeId>(t));
    }
  }
  return UndirectedGraph::WithDenseNodes(n, edges);
}

UndirectedGraph GenerateErdosRenyi(const ERParams& params) {
  const std::size_t n = params.n;
  const double p = params.p;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge probability must lie in [0, 1]");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (p == 1.0) {
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t v = 1; v < n; ++v) {
      for (std::size_t w = 0; w < v; ++w) {
        edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
      }
    }
  } else if (p > 0.0 && n > 1) {
    Rng rng(params.seed);
    const double log_q = std::log1p(-p);
    long long v = 1;
    long long w = -1;
    const auto nn = static_cast<long long>(n);
    while (v < nn) {
      const double r = rng.UniformReal();
      w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
  }
  return UndirectedGraph::WithDenseNodes(n, edges);
}

TemporalEdgeStream GenerateHubCorpus(const HubCorpusParams& params) {
  if (params.hub_count > params.node_count) {
    throw Error(ErrorCode::kInvalidArgument, "hub count exceeds node count");
  }
  if (params.node_count < 2) {
    throw Error(ErrorCode::kInvalidArgument, "hub corpus needs at least 2 nodes");
  }
  if (!(params.hub_rate > 0.0) || !(params.background_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "message rates must be positive");
  }
  Rng rng(params.seed);
  std::vector<TemporalEdge> edges;
  const std::uint64_t others = params.node_count - 1;
  for (std::size_t day = 0; day < params.day_count; ++day) {
    const Timestamp day_start = params.start + static_cast<Timestamp>(day) * kSecondsPerDay;
    for (std::size_t node = 0; node < params.node_count; ++node) {
      const double rate =
          node < params.hub_count ? params.hub_rate : params.background_rate;
      const std::uint64_t count = rng.Poisson(rate);
      for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t recipient = rng.UniformInt(others);
        if (recipient >= node) ++recipient;
        const auto offset = static_cast<Timestamp>(rng.UniformInt(kSecondsPerDay));
        edges.push_back({static_cast<NodeId>(node), static_cast<NodeId>(recipient),
                         day_start + offset});
      }
    }
  }
  return TemporalEdgeStream::FromUnsorted(std::move(edges));
}

}  // namespace crisisnet
