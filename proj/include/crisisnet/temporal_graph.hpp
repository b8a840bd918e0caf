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

// Core data model: a time-ordered stream of message events, its slicing into
// calendar-day snapshots, aggregation, and the undirected projection used by
// the connectivity metrics.

#ifndef CRISISNET_TEMPORAL_GRAPH_HPP_
#define CRISISNET_TEMPORAL_GRAPH_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crisisnet {

using NodeId = std::uint32_t;
// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;
using CivilDay = std::chrono::sys_days;

inline constexpr Timestamp kSecondsPerDay = 86400;

// Sorted, duplicate-free set of node ids.
using NodeRegistry = std::vector<NodeId>;

struct TemporalEdge {
  NodeId sender = 0;
  NodeId recipient = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

class TemporalEdgeStream {
 public:
  TemporalEdgeStream();

  // `edges` must be sorted by timestamp (kOrdering otherwise) and free of
  // self-loops (kInvalidArgument). `labels`, when given, maps each node id to
  // its original identifier and must cover every id used.
  explicit TemporalEdgeStream(std::vector<TemporalEdge> edges,
                              std::vector<std::string> labels = {});

  // Stable-sorts by timestamp first; ties keep their input order.
  static TemporalEdgeStream FromUnsorted(std::vector<TemporalEdge> edges,
                                         std::vector<std::string> labels = {});

  const std::vector<TemporalEdge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // Exactly the union of senders and recipients.
  const NodeRegistry& registry() const { return *registry_; }
  const std::shared_ptr<const NodeRegistry>& shared_registry() const {
    return registry_;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  // Original identifier, or the decimal id when the stream carries no labels.
  std::string label(NodeId id) const;

  friend bool operator==(const TemporalEdgeStream& a,
                         const TemporalEdgeStream& b);

 private:
  std::vector<TemporalEdge> edges_;
  std::shared_ptr<const NodeRegistry> registry_;
  std::vector<std::string> labels_;
};

// Merges independently parsed streams. Nodes are unified by label (or by id
// when unlabeled) and the result is re-sorted; ties keep source order.
TemporalEdgeStream MergeStreams(std::span<const TemporalEdgeStream> streams);

struct Arc {
  NodeId sender = 0;
  NodeId recipient = 0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed multigraph stored as (sender, recipient, multiplicity) triples in
// lexicographic order, over a node registry that may include isolates.
class Multigraph {
 public:
  Multigraph();
  // Repeated (sender, recipient) pairs are merged by summing multiplicities.
  Multigraph(std::vector<Arc> arcs, std::shared_ptr<const NodeRegistry> registry);

  const std::vector<Arc>& arcs() const { return arcs_; }
  const NodeRegistry& registry() const { return *registry_; }
  const std::shared_ptr<const NodeRegistry>& shared_registry() const {
    return registry_;
  }
  std::uint64_t total_messages() const { return total_messages_; }
  bool empty() const { return arcs_.empty(); }

  // Position of `id` in the registry.
  std::optional<std::size_t> IndexOf(NodeId id) const;

  friend bool operator==(const Multigraph& a, const Multigraph& b);

 private:
  std::vector<Arc> arcs_;
  std::shared_ptr<const NodeRegistry> registry_;
  std::uint64_t total_messages_ = 0;
};

struct DailySnapshot {
  std::size_t day_index = 0;
  CivilDay date{};
  Multigraph graph;

  bool empty() const { return graph.empty(); }
};

using AggregateGraph = Multigraph;

struct ObservationWindow {
  CivilDay first_day{};
  // Number of days to materialize. When unset the window ends on the day of
  // the last edge.
  std::optional<std::size_t> day_count;
  // Fixed offset added to UTC before cutting days.
  std::chrono::seconds utc_offset{0};
};

// Calendar day containing `t` under the given offset.
CivilDay DayOf(Timestamp t, std::chrono::seconds utc_offset = {});
// First second of `day` expressed in UTC.
Timestamp DayStart(CivilDay day, std::chrono::seconds utc_offset = {});

// One snapshot per day of the window, empty days included. Each edge lands in
// the half-open interval [00:00:00, 24:00:00) of its day. Edges before
// `first_day` or past the last requested day raise kWindow.
std::vector<DailySnapshot> BuildSnapshots(const TemporalEdgeStream& stream,
                                          const ObservationWindow& window);

// Sums multiplicities across snapshots; the registry is the union.
AggregateGraph Aggregate(std::span<const DailySnapshot> snapshots);

// Simple undirected graph with compressed adjacency. Nodes are addressed by
// dense index [0, node_count); `node_id(i)` maps back to the original id.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  // `nodes` need not be sorted but must be unique. Duplicate edges (in either
  // orientation) collapse; self-edges and unknown endpoints are rejected.
  UndirectedGraph(std::vector<NodeId> nodes,
                  std::span<const std::pair<NodeId, NodeId>> edges);

  // Nodes 0..n-1.
  static UndirectedGraph WithDenseNodes(
      std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  NodeId node_id(std::size_t index) const { return nodes_[index]; }
  std::optional<std::size_t> IndexOf(NodeId id) const;

  std::span<const std::uint32_t> neighbors(std::size_t index) const {
    return {targets_.data() + offsets_[index],
            targets_.data() + offsets_[index + 1]};
  }
  std::size_t degree(std::size_t index) const {
    return offsets_[index + 1] - offsets_[index];
  }

  // Each edge once as (smaller id, larger id), sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  std::vector<NodeId> nodes_;  // sorted
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
};

// {u, v} is an edge iff u->v or v->u carries at least one message. Every
// registry node becomes a vertex, isolates included.
UndirectedGraph UndirectedProjection(const Multigraph& g);

}  // namespace crisisnet

#endif  // CRISISNET_TEMPORAL_GRAPH_HPP_
