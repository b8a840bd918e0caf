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
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "crisisnet/error.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/robustness.hpp"

namespace crisisnet {
namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

UndirectedGraph Star(std::size_t leaves) {
  Edges e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return UndirectedGraph::WithDenseNodes(leaves + 1, e);
}

UndirectedGraph Complete(std::size_t n) {
  Edges e;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return UndirectedGraph::WithDenseNodes(n, e);
}

TEST_CASE("giant component fraction") {
  CHECK(GiantComponentFraction(Complete(6), 6) == 1.0);
  const UndirectedGraph split = UndirectedGraph::WithDenseNodes(5, Edges{{0, 1}, {1, 2}, {3, 4}});
  CHECK(GiantComponentFraction(split, 5) == doctest::Approx(0.6).epsilon(1e-15));
  const UndirectedGraph dust = UndirectedGraph::WithDenseNodes(8, Edges{});
  CHECK(GiantComponentFraction(dust, 8) == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(GiantComponentFraction(UndirectedGraph(), 0) == 0.0);
  CHECK_THROWS_AS(GiantComponentFraction(Complete(4), 3), Error);
}

TEST_CASE("average path length closed forms") {
  const UndirectedGraph path = UndirectedGraph::WithDenseNodes(3, Edges{{0, 1}, {1, 2}});
  CHECK(*AveragePathLength(path) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(*AveragePathLength(Complete(7)) == 1.0);
  CHECK(*AveragePathLength(Star(4)) == doctest::Approx(1.6).epsilon(1e-15));
  CHECK_FALSE(AveragePathLength(UndirectedGraph::WithDenseNodes(5, Edges{})).has_value());
  CHECK_FALSE(AveragePathLength(UndirectedGraph()).has_value());
}

TEST_CASE("path length is measured on the largest component") {
  // Triangle plus a separate edge: the triangle's mean is 1.
  const UndirectedGraph g =
      UndirectedGraph::WithDenseNodes(5, Edges{{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  CHECK(*AveragePathLength(g) == 1.0);
  // Equal sizes: the component holding the smallest id wins.
  const UndirectedGraph tie =
      UndirectedGraph::WithDenseNodes(6, Edges{{3, 4}, {4, 5}, {0, 1}, {1, 2}, {0, 2}});
  CHECK(*AveragePathLength(tie) == 1.0);
}

TEST_CASE("sampled path lengths are close to exact and thread-independent") {
  const UndirectedGraph g = GenerateBarabasiAlbert({3000, 2, {}, 5});
  PathLengthOptions exact;
  exact.threads = 1;
  const double truth = *AveragePathLength(g, exact);
  PathLengthOptions sampled;
  sampled.exact_limit = 100;
  sampled.sampled_sources = 400;
  sampled.seed = 3;
  sampled.threads = 1;
  const double estimate = *AveragePathLength(g, sampled);
  CHECK(estimate == doctest::Approx(truth).epsilon(0.02));
  for (const unsigned threads : {2u, 4u, 0u}) {
    PathLengthOptions t = exact;
    t.threads = threads;
    CHECK(*AveragePathLength(g, t) == truth);
    PathLengthOptions s = sampled;
    s.threads = threads;
    CHECK(*AveragePathLength(g, s) == estimate);
  }
}

TEST_CASE("targeted removal takes the hub first") {
  const UndirectedGraph star = Star(4);
  const RemovalStrategy targeted{RemovalKind::kTargeted, true, 0};
  CHECK(RemovalOrder(star, targeted).front() == 0);
  const std::vector<double> steps{0.0, 0.2};
  const RobustnessCurve curve = ComputeRobustnessCurve(star, targeted, steps);
  CHECK(curve.points[0].giant_fraction == 1.0);
  CHECK(curve.points[1].removed == 1);
  CHECK(curve.points[1].giant_fraction == doctest::Approx(1.0 / 5).epsilon(1e-15));
  CHECK_FALSE(curve.points[1].avg_path_length.has_value());
}

TEST_CASE("random removal of a leaf keeps the rest connected") {
  const UndirectedGraph star = Star(4);
  std::uint64_t seed = 0;
  while (RemovalOrder(star, {RemovalKind::kRandom, true, seed}).front() == 0) ++seed;
  const std::vector<double> steps{0.2};
  const RobustnessCurve curve =
      ComputeRobustnessCurve(star, {RemovalKind::kRandom, true, seed}, steps);
  CHECK(curve.points[0].giant_fraction == doctest::Approx(4.0 / 5).epsilon(1e-15));
}

TEST_CASE("removal orders are permutations") {
  const UndirectedGraph g = GenerateBarabasiAlbert({400, 2, {}, 8});
  for (const RemovalStrategy s : {RemovalStrategy{RemovalKind::kRandom, true, 4},
                                  RemovalStrategy{RemovalKind::kTargeted, true, 0},
                                  RemovalStrategy{RemovalKind::kTargeted, false, 0}}) {
    auto order = RemovalOrder(g, s);
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    CHECK(order == all);
  }
}

TEST_CASE("static targeting follows initial degree, adaptive recomputes") {
  // Path 0-1-2-3-4 plus a pendant 5 on node 3: degrees 1,2,2,3,1,1.
  const UndirectedGraph g =
      UndirectedGraph::WithDenseNodes(6, Edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}});
  const auto fixed = RemovalOrder(g, {RemovalKind::kTargeted, false, 0});
  CHECK(fixed == std::vector<std::size_t>{3, 1, 2, 0, 4, 5});
  // After removing 3, node 1 (degree 2) leads; then everything is degree <= 1.
  const auto adaptive = RemovalOrder(g, {RemovalKind::kTargeted, true, 0});
  CHECK(adaptive == std::vector<std::size_t>{3, 1, 0, 2, 4, 5});
}

TEST_CASE("curves start at the identity and never recover") {
  const UndirectedGraph g = GenerateBarabasiAlbert({1500, 2, {}, 4});
  const std::vector<double> steps{0.0, 0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.9};
  for (const RemovalStrategy s : {RemovalStrategy{RemovalKind::kRandom, true, 4},
                                  RemovalStrategy{RemovalKind::kTargeted, true, 0},
                                  RemovalStrategy{RemovalKind::kTargeted, false, 0}}) {
    const RobustnessCurve c = ComputeRobustnessCurve(g, s, steps);
    CHECK(c.points[0].removed == 0);
    CHECK(c.points[0].giant_fraction == GiantComponentFraction(g, g.node_count()));
    CHECK(*c.points[0].avg_path_length == *AveragePathLength(g));
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      CHECK(c.points[i].giant_fraction <= c.points[i - 1].giant_fraction);
      CHECK(c.points[i].removed == static_cast<std::size_t>(std::llround(steps[i] * 1500)));
    }
  }
}

TEST_CASE("attack hurts more than failure on preferential-attachment graphs") {
  const std::vector<double> steps{0.05};
  CurveOptions fast;
  fast.path_lengths = false;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const UndirectedGraph g = GenerateBarabasiAlbert({2000, 3, {}, seed});
    const double random =
        ComputeRobustnessCurve(g, {RemovalKind::kRandom, true, seed}, steps, fast)
            .points[0].giant_fraction;
    const double attack =
        ComputeRobustnessCurve(g, {RemovalKind::kTargeted, true, 0}, steps, fast)
            .points[0].giant_fraction;
    CHECK(attack < random);
  }
}

TEST_CASE("curve arguments are validated") {
  const UndirectedGraph g = Star(3);
  const RemovalStrategy s{RemovalKind::kRandom, true, 0};
  CHECK_THROWS_AS(ComputeRobustnessCurve(g, s, std::vector<double>{0.2, 0.1}), Error);
  CHECK_THROWS_AS(ComputeRobustnessCurve(g, s, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(ComputeRobustnessCurve(g, s, std::vector<double>{-0.1}), Error);
}

TEST_CASE("induced subgraph") {
  const UndirectedGraph g = Star(4);
  std::vector<bool> keep(5, true);
  keep[0] = false;
  const UndirectedGraph leaves = InducedSubgraph(g, keep);
  CHECK(leaves.node_count() == 4);
  CHECK(leaves.edge_count() == 0);
  CHECK(InducedSubgraph(g, std::vector<bool>(5, true)) == g);
}

}  // namespace
}  // namespace crisisnet
