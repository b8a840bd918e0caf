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

#include "crisisnet/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "crisisnet/error.hpp"
#include "crisisnet/random.hpp"

namespace crisisnet {
namespace {

// Component label per node plus the member list of the largest component.
struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::uint32_t> giant;
};

Components FindComponents(const UndirectedGraph& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  Components c;
  c.label.assign(g.node_count(), kUnset);
  std::vector<std::uint32_t> members;
  std::uint32_t next = 0;
  for (std::size_t root = 0; root < g.node_count(); ++root) {
    if (c.label[root] != kUnset) continue;
    members.clear();
    members.push_back(static_cast<std::uint32_t>(root));
    c.label[root] = next;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::uint32_t v : g.neighbors(members[head])) {
        if (c.label[v] == kUnset) {
          c.label[v] = next;
          members.push_back(v);
        }
      }
    }
    // Roots are visited in id order, so the first largest component has the
    // smallest id.
    if (members.size() > c.giant.size()) c.giant = members;
    ++next;
  }
  std::sort(c.giant.begin(), c.giant.end());
  return c;
}

// Sum of BFS distances from `source` to every node it reaches.
std::uint64_t DistanceSum(const UndirectedGraph& g, std::uint32_t source,
                          std::vector<std::uint32_t>& dist,
                          std::vector<std::uint32_t>& queue) {
  constexpr auto kUnseen = static_cast<std::uint32_t>(-1);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  std::uint64_t sum = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    sum += dist[u];
    for (std::uint32_t v : g.neighbors(u)) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (std::uint32_t u : queue) dist[u] = kUnseen;
  return sum;
}

}  // namespace

double GiantComponentFraction(const UndirectedGraph& g, std::size_t original_n) {
  if (original_n < g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "original node count is smaller than the current graph");
  }
  if (original_n == 0 || g.node_count() == 0) return 0.0;
  return static_cast<double>(FindComponents(g).giant.size()) /
         static_cast<double>(original_n);
}

std::optional<double> AveragePathLength(const UndirectedGraph& g,
                                        const PathLengthOptions& options) {
  const Components comp = FindComponents(g);
  const std::size_t size = comp.giant.size();
  if (size < 2) return std::nullopt;

  std::vector<std::uint32_t> sources = comp.giant;
  if (size > options.exact_limit) {
    Rng rng(options.seed);
    rng.Shuffle(sources);
    sources.resize(std::min(options.sampled_sources, size));
    std::sort(sources.begin(), sources.end());
  }

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sources.size())));
  // Integer partial sums, so the total is independent of scheduling.
  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned t) {
    std::vector<std::uint32_t> dist(g.node_count(), static_cast<std::uint32_t>(-1));
    std::vector<std::uint32_t> queue;
    queue.reserve(size);
    for (std::size_t i = t; i < sources.size(); i += threads) {
      partial[t] += DistanceSum(g, sources[i], dist, queue);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  const std::uint64_t total = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  // Each source sees size - 1 targets; exact mode counts every pair twice.
  return static_cast<double>(total) /
         (static_cast<double>(sources.size()) * static_cast<double>(size - 1));
}

const char* RemovalStrategyName(const RemovalStrategy& s) {
  if (s.kind == RemovalKind::kRandom) return "random";
  return s.adaptive ? "targeted-adaptive" : "targeted-static";
}

std::vector<std::size_t> RemovalOrder(const UndirectedGraph& g,
                                      const RemovalStrategy& strategy) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (strategy.kind == RemovalKind::kRandom) {
    Rng rng(strategy.seed);
    rng.Shuffle(order);
    return order;
  }
  // Dense indices follow ascending node id, so index order is the tie-break.
  if (!strategy.adaptive) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return g.degree(a) > g.degree(b);
    });
    return order;
  }
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, std::size_t>> queue;  // (-degree, index)
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.degree(i);
    queue.emplace(n - degree[i], i);
  }
  std::vector<bool> removed(n, false);
  order.clear();
  while (!queue.empty()) {
    const std::size_t u = queue.begin()->second;
    queue.erase(queue.begin());
    removed[u] = true;
    order.push_back(u);
    for (std::uint32_t v : g.neighbors(u)) {
      if (removed[v]) continue;
      queue.erase({n - degree[v], v});
      --degree[v];
      queue.emplace(n - degree[v], v);
    }
  }
  return order;
}

UndirectedGraph InducedSubgraph(const UndirectedGraph& g, const std::vector<bool>& keep) {
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (!keep[i]) continue;
    nodes.push_back(g.node_id(i));
    for (std::uint32_t j : g.neighbors(i)) {
      if (i < j && keep[j]) edges.emplace_back(g.node_id(i), g.node_id(j));
    }
  }
  return UndirectedGraph(std::move(nodes), edges);
}

RobustnessCurve ComputeRobustnessCurve(const UndirectedGraph& g,
                                       const RemovalStrategy& strategy,
                                       std::span<const double> fractions,
                                       const CurveOptions& options) {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] >= 0.0 && fractions[i] < 1.0) ||
        (i > 0 && fractions[i] <= fractions[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "removal fractions must be strictly ascending in [0, 1)");
    }
  }
  RobustnessCurve curve;
  curve.strategy = strategy;
  curve.original_n = g.node_count();
  const std::vector<std::size_t> order = RemovalOrder(g, strategy);
  std::vector<bool> keep(g.node_count(), true);
  std::size_t removed = 0;
  for (double f : fractions) {
    const auto target = std::min<std::size_t>(
        static_cast<std::size_t>(std::llround(f * static_cast<double>(curve.original_n))),
        curve.original_n);
    while (removed < target) keep[order[removed++]] = false;
    const UndirectedGraph survivors = InducedSubgraph(g, keep);
    CurvePoint point;
    point.fraction_removed = f;
    point.removed = removed;
    point.giant_fraction = GiantComponentFraction(survivors, curve.original_n);
    if (options.path_lengths) point.avg_path_length = AveragePathLength(survivors, options.path);
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace crisisnet
