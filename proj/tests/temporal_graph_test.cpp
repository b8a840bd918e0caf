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

#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"

#include "crisisnet/error.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/temporal_graph.hpp"
#include "test_support.hpp"

namespace crisisnet {
namespace {

using testing::SnapshotsFromCsv;
using testing::StreamFromCsv;

constexpr Timestamp kHour = 3600;

std::uint64_t Multiplicity(const Multigraph& g, NodeId s, NodeId r) {
  for (const Arc& a : g.arcs()) {
    if (a.sender == s && a.recipient == r) return a.multiplicity;
  }
  return 0;
}

TEST_CASE("snapshots bucket messages by calendar day") {
  // A->B day 0 10:00, A->C day 0 23:59, B->A day 1 00:01.
  const auto snaps = SnapshotsFromCsv(
      "A,B,36000\nA,C,86340\nB,A,86460\n", 2);
  REQUIRE(snaps.size() == 2);
  CHECK(snaps[0].graph.total_messages() == 2);
  CHECK(snaps[1].graph.total_messages() == 1);
  CHECK_FALSE(snaps[0].empty());
  CHECK_FALSE(snaps[1].empty());
}

TEST_CASE("a message at midnight belongs to the new day") {
  const auto snaps = SnapshotsFromCsv("A,B,86400\n", 2);
  CHECK(snaps[0].empty());
  CHECK(snaps[1].graph.total_messages() == 1);
}

TEST_CASE("an empty stream over a 3-day window gives 3 empty snapshots") {
  ObservationWindow w;
  w.day_count = 3;
  const auto snaps = BuildSnapshots(TemporalEdgeStream(), w);
  REQUIRE(snaps.size() == 3);
  for (const auto& s : snaps) CHECK(s.empty());
  CHECK(snaps[2].day_index == 2);
}

TEST_CASE("unsorted edges are rejected, FromUnsorted sorts stably") {
  std::vector<TemporalEdge> edges{{0, 1, 20}, {1, 0, 10}};
  CHECK_THROWS_AS(TemporalEdgeStream{edges}, Error);
  try {
    TemporalEdgeStream s(edges);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOrdering);
  }
  const auto sorted = TemporalEdgeStream::FromUnsorted(
      {{0, 1, 20}, {1, 2, 10}, {2, 0, 10}});
  CHECK(sorted.edges()[0] == TemporalEdge{1, 2, 10});
  CHECK(sorted.edges()[1] == TemporalEdge{2, 0, 10});
}

TEST_CASE("self-loops cannot enter a stream") {
  CHECK_THROWS_AS(TemporalEdgeStream({{3, 3, 1}}), Error);
}

TEST_CASE("edges outside a bounded window are a window error") {
  const auto stream = StreamFromCsv("A,B,10\nA,B,200000\n");
  ObservationWindow w;
  w.day_count = 1;
  try {
    BuildSnapshots(stream, w);
    FAIL("expected a window error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kWindow);
  }
  w.day_count.reset();
  CHECK(BuildSnapshots(stream, w).size() == 3);
}

TEST_CASE("utc offset shifts the day boundary") {
  const auto stream = StreamFromCsv("A,B,82800\n");  // 23:00 UTC
  ObservationWindow w;
  w.day_count = 2;
  w.utc_offset = std::chrono::hours(2);
  const auto snaps = BuildSnapshots(stream, w);
  CHECK(snaps[0].empty());
  CHECK_FALSE(snaps[1].empty());
  CHECK(DayOf(-1) == CivilDay{} - std::chrono::days(1));
  CHECK(DayStart(CivilDay{} + std::chrono::days(2)) == 2 * kSecondsPerDay);
}

TEST_CASE("aggregation sums multiplicities") {
  const auto snaps = SnapshotsFromCsv("A,B,1\nA,B,2\nA,B,86401\nA,B,86402\n", 2);
  const AggregateGraph agg = Aggregate(snaps);
  REQUIRE(agg.arcs().size() == 1);
  CHECK(agg.arcs()[0].multiplicity == 4);

  const auto single = SnapshotsFromCsv("A,B,1\nB,C,2\nA,B,3\n", 1);
  CHECK(Aggregate(single) == single[0].graph);

  const AggregateGraph none = Aggregate(std::span<const DailySnapshot>());
  CHECK(none.empty());
  CHECK(none.total_messages() == 0);
}

TEST_CASE("slicing conserves messages and the registry") {
  HubCorpusParams p;
  p.node_count = 40;
  p.day_count = 12;
  p.hub_count = 4;
  p.seed = 11;
  const TemporalEdgeStream stream = GenerateHubCorpus(p);
  ObservationWindow w;
  w.first_day = DayOf(p.start);
  w.day_count = p.day_count;
  const auto snaps = BuildSnapshots(stream, w);

  std::uint64_t total = 0;
  for (const auto& s : snaps) {
    total += s.graph.total_messages();
    CHECK(s.graph.registry() == stream.registry());
  }
  CHECK(total == stream.size());

  // Aggregate equals bucketing everything into a single bin.
  ObservationWindow one = w;
  one.day_count = 1;
  std::vector<TemporalEdge> squashed;
  for (const auto& e : stream.edges()) squashed.push_back({e.sender, e.recipient, p.start});
  const auto single = BuildSnapshots(TemporalEdgeStream(squashed, stream.labels()), one);
  const AggregateGraph agg = Aggregate(snaps);
  CHECK(agg == single[0].graph);
  CHECK(agg.registry() == stream.registry());
}

TEST_CASE("multigraph rejects zero multiplicity and unknown endpoints") {
  auto reg = std::make_shared<const NodeRegistry>(NodeRegistry{0, 1});
  CHECK_THROWS_AS(Multigraph({{0, 1, 0}}, reg), Error);
  try {
    Multigraph({{0, 7, 1}}, reg);
    FAIL("expected unknown node");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownNode);
  }
  const Multigraph g({{1, 0, 2}, {0, 1, 1}, {1, 0, 3}}, reg);
  CHECK(Multiplicity(g, 1, 0) == 5);
  CHECK(g.total_messages() == 6);
  CHECK(g.IndexOf(1) == 1u);
  CHECK_FALSE(g.IndexOf(9).has_value());
}

TEST_CASE("undirected projection merges directions") {
  const auto both = SnapshotsFromCsv("A,B,1\nA,B,2\nA,B,3\nB,A,4\n", 1);
  const UndirectedGraph g = UndirectedProjection(both[0].graph);
  CHECK(g.edge_count() == 1);
  CHECK(g.node_count() == 2);

  CHECK(UndirectedProjection(Multigraph()).node_count() == 0);

  const auto disjoint = SnapshotsFromCsv("A,B,1\nC,D,2\n", 1);
  const UndirectedGraph d = UndirectedProjection(disjoint[0].graph);
  CHECK(d.edge_count() == 2);
  const std::vector<std::pair<NodeId, NodeId>> expected{{0, 1}, {2, 3}};
  CHECK(d.edges() == expected);
}

TEST_CASE("undirected graph validates its input") {
  const std::vector<std::pair<NodeId, NodeId>> loop{{1, 1}};
  CHECK_THROWS_AS(UndirectedGraph({1}, loop), Error);
  const std::vector<std::pair<NodeId, NodeId>> dangling{{1, 2}};
  CHECK_THROWS_AS(UndirectedGraph({1}, dangling), Error);
  const std::vector<std::pair<NodeId, NodeId>> dup{{5, 1}, {1, 5}};
  const UndirectedGraph g({5, 1, 9}, dup);
  CHECK(g.edge_count() == 1);
  CHECK(g.nodes() == std::vector<NodeId>{1, 5, 9});
  CHECK(g.degree(*g.IndexOf(9)) == 0);
}

TEST_CASE("merging streams unifies actors by label") {
  const auto a = StreamFromCsv("x,y,5\n");
  const auto b = StreamFromCsv("y,z,1\nx,z,9\n");
  const std::vector<TemporalEdgeStream> parts{a, b};
  const TemporalEdgeStream merged = MergeStreams(parts);
  REQUIRE(merged.size() == 3);
  CHECK(merged.registry().size() == 3);
  CHECK(merged.label(merged.edges()[0].sender) == "y");
  CHECK(merged.label(merged.edges()[1].sender) == "x");
  CHECK(merged.label(merged.edges()[1].recipient) == "y");
  CHECK(merged.label(merged.edges()[2].recipient) == "z");
}

}  // namespace
}  // namespace crisisnet
