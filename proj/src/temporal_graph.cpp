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

#include "crisisnet/temporal_graph.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <unordered_map>

#include "crisisnet/error.hpp"

namespace crisisnet {
namespace {

std::shared_ptr<const NodeRegistry> EmptyRegistry() {
  static const auto kEmpty = std::make_shared<const NodeRegistry>();
  return kEmpty;
}

void SortUnique(std::vector<NodeId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

Timestamp FloorDiv(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

TemporalEdgeStream::TemporalEdgeStream() : registry_(EmptyRegistry()) {}

TemporalEdgeStream::TemporalEdgeStream(std::vector<TemporalEdge> edges,
                                       std::vector<std::string> labels)
    : edges_(std::move(edges)), labels_(std::move(labels)) {
  std::vector<NodeId> ids;
  ids.reserve(edges_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const TemporalEdge& e = edges_[i];
    if (e.sender == e.recipient) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-loop at stream position " + std::to_string(i));
    }
    if (i > 0 && e.timestamp < edges_[i - 1].timestamp) {
      throw Error(ErrorCode::kOrdering,
                  "stream not sorted by timestamp at position " +
                      std::to_string(i));
    }
    ids.push_back(e.sender);
    ids.push_back(e.recipient);
  }
  SortUnique(ids);
  if (!labels_.empty() && !ids.empty() && ids.back() >= labels_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label table does not cover node id " +
                    std::to_string(ids.back()));
  }
  registry_ = std::make_shared<const NodeRegistry>(std::move(ids));
}

TemporalEdgeStream TemporalEdgeStream::FromUnsorted(
    std::vector<TemporalEdge> edges, std::vector<std::string> labels) {
  std::stable_sort(edges.begin(), edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) {
                     return a.timestamp < b.timestamp;
                   });
  return TemporalEdgeStream(std::move(edges), std::move(labels));
}

std::string TemporalEdgeStream::label(NodeId id) const {
  if (id < labels_.size()) return labels_[id];
  return std::to_string(id);
}

bool operator==(const TemporalEdgeStream& a, const TemporalEdgeStream& b) {
  return a.edges_ == b.edges_ && *a.registry_ == *b.registry_ &&
         a.labels_ == b.labels_;
}

TemporalEdgeStream MergeStreams(std::span<const TemporalEdgeStream> streams) {
  const bool labeled = std::any_of(
      streams.begin(), streams.end(),
      [](const TemporalEdgeStream& s) { return !s.labels().empty(); });

  struct Pending {
    std::string sender;
    std::string recipient;
    TemporalEdge edge;
  };
  std::vector<Pending> all;
  for (const TemporalEdgeStream& s : streams) {
    for (const TemporalEdge& e : s.edges()) {
      all.push_back({labeled ? s.label(e.sender) : std::string(),
                     labeled ? s.label(e.recipient) : std::string(), e});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Pending& a, const Pending& b) {
                     return a.edge.timestamp < b.edge.timestamp;
                   });
  std::vector<TemporalEdge> edges;
  edges.reserve(all.size());
  if (!labeled) {
    for (const Pending& p : all) edges.push_back(p.edge);
    return TemporalEdgeStream(std::move(edges));
  }
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(name);
    return it->second;
  };
  for (const Pending& p : all) {
    const NodeId s = intern(p.sender);
    const NodeId r = intern(p.recipient);
    edges.push_back({s, r, p.edge.timestamp});
  }
  return TemporalEdgeStream(std::move(edges), std::move(labels));
}

Multigraph::Multigraph() : registry_(EmptyRegistry()) {}

Multigraph::Multigraph(std::vector<Arc> arcs,
                       std::shared_ptr<const NodeRegistry> registry)
    : registry_(registry ? std::move(registry) : EmptyRegistry()) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::pair(a.sender, a.recipient) < std::pair(b.sender, b.recipient);
  });
  for (const Arc& a : arcs) {
    if (a.multiplicity == 0) {
      throw Error(ErrorCode::kInvalidArgument, "arc multiplicity must be >= 1");
    }
    if (!IndexOf(a.sender) || !IndexOf(a.recipient)) {
      throw Error(ErrorCode::kUnknownNode,
                  "arc endpoint missing from node registry");
    }
    if (!arcs_.empty() && arcs_.back().sender == a.sender &&
        arcs_.back().recipient == a.recipient) {
      arcs_.back().multiplicity += a.multiplicity;
    } else {
      arcs_.push_back(a);
    }
    total_messages_ += a.multiplicity;
  }
}

std::optional<std::size_t> Multigraph::IndexOf(NodeId id) const {
  auto it = std::lower_bound(registry_->begin(), registry_->end(), id);
  if (it == registry_->end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - registry_->begin());
}

bool operator==(const Multigraph& a, const Multigraph& b) {
  return a.arcs_ == b.arcs_ && *a.registry_ == *b.registry_;
}

CivilDay DayOf(Timestamp t, std::chrono::seconds utc_offset) {
  return CivilDay(std::chrono::days(
      FloorDiv(t + utc_offset.count(), kSecondsPerDay)));
}

Timestamp DayStart(CivilDay day, std::chrono::seconds utc_offset) {
  return static_cast<Timestamp>(day.time_since_epoch().count()) *
             kSecondsPerDay -
         utc_offset.count();
}

std::vector<DailySnapshot> BuildSnapshots(const TemporalEdgeStream& stream,
                                          const ObservationWindow& window) {
  const auto& edges = stream.edges();
  std::size_t day_count = 0;
  if (window.day_count) {
    day_count = *window.day_count;
  } else if (!edges.empty()) {
    const auto last = DayOf(edges.back().timestamp, window.utc_offset);
    if (last >= window.first_day) {
      day_count = static_cast<std::size_t>((last - window.first_day).count()) + 1;
    }
  }

  std::vector<std::vector<Arc>> buckets(day_count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const TemporalEdge& e = edges[i];
    if (i > 0 && e.timestamp < edges[i - 1].timestamp) {
      throw Error(ErrorCode::kOrdering, "stream not sorted by timestamp");
    }
    const auto offset = (DayOf(e.timestamp, window.utc_offset) - window.first_day).count();
    if (offset < 0 || static_cast<std::size_t>(offset) >= day_count) {
      throw Error(ErrorCode::kWindow,
                  "edge at timestamp " + std::to_string(e.timestamp) +
                      " lies outside the observation window");
    }
    buckets[static_cast<std::size_t>(offset)].push_back({e.sender, e.recipient, 1});
  }

  std::vector<DailySnapshot> out;
  out.reserve(day_count);
  for (std::size_t d = 0; d < day_count; ++d) {
    out.push_back({d, window.first_day + std::chrono::days(d),
                   Multigraph(std::move(buckets[d]), stream.shared_registry())});
  }
  return out;
}

AggregateGraph Aggregate(std::span<const DailySnapshot> snapshots) {
  if (snapshots.empty()) return AggregateGraph();
  std::shared_ptr<const NodeRegistry> registry = snapshots.front().graph.shared_registry();
  bool shared = true;
  std::size_t total = 0;
  for (const DailySnapshot& s : snapshots) {
    shared = shared && s.graph.shared_registry() == registry;
    total += s.graph.arcs().size();
  }
  if (!shared) {
    std::vector<NodeId> ids;
    for (const DailySnapshot& s : snapshots) {
      ids.insert(ids.end(), s.graph.registry().begin(), s.graph.registry().end());
    }
    SortUnique(ids);
    registry = std::make_shared<const NodeRegistry>(std::move(ids));
  }
  std::vector<Arc> arcs;
  arcs.reserve(total);
  for (const DailySnapshot& s : snapshots) {
    arcs.insert(arcs.end(), s.graph.arcs().begin(), s.graph.arcs().end());
  }
  return AggregateGraph(std::move(arcs), std::move(registry));
}

UndirectedGraph::UndirectedGraph(std::vector<NodeId> nodes,
                                 std::span<const std::pair<NodeId, NodeId>> edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate node id");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> half;
  half.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-edge on node " + std::to_string(u));
    }
    const auto iu = IndexOf(u);
    const auto iv = IndexOf(v);
    if (!iu || !iv) {
      throw Error(ErrorCode::kUnknownNode, "edge endpoint not in node set");
    }
    half.emplace_back(static_cast<std::uint32_t>(*iu), static_cast<std::uint32_t>(*iv));
    half.emplace_back(static_cast<std::uint32_t>(*iv), static_cast<std::uint32_t>(*iu));
  }
  std::sort(half.begin(), half.end());
  half.erase(std::unique(half.begin(), half.end()), half.end());

  offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& h : half) ++offsets_[h.first + 1];
  for (std::size_t i = 0; i < nodes_.size(); ++i) offsets_[i + 1] += offsets_[i];
  targets_.reserve(half.size());
  for (const auto& h : half) targets_.push_back(h.second);
}

UndirectedGraph UndirectedGraph::WithDenseNodes(
    std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<NodeId> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = static_cast<NodeId>(i);
  return UndirectedGraph(std::move(nodes), edges);
}

std::optional<std::size_t> UndirectedGraph::IndexOf(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<std::pair<NodeId, NodeId>> UndirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::uint32_t j : neighbors(i)) {
      if (i < j) out.emplace_back(nodes_[i], nodes_[j]);
    }
  }
  return out;
}

UndirectedGraph UndirectedProjection(const Multigraph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.arcs().size());
  for (const Arc& a : g.arcs()) edges.emplace_back(a.sender, a.recipient);
  return UndirectedGraph(g.registry(), edges);
}

}  // namespace crisisnet
