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

#include "crisisnet/centrality.hpp"
#include "crisisnet/error.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/powerlaw.hpp"
#include "crisisnet/robustness.hpp"

namespace crisisnet {
namespace {

std::vector<std::uint64_t> Degrees(const UndirectedGraph& g) {
  std::vector<std::uint64_t> d(g.node_count());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = g.degree(i);
  return d;
}

std::uint64_t MaxDegree(const UndirectedGraph& g) {
  const auto d = Degrees(g);
  return *std::max_element(d.begin(), d.end());
}

TEST_CASE("BA from a single seed node is a tree") {
  BAParams p;
  p.n = 4;
  p.m = 1;
  p.m0 = 1;
  const UndirectedGraph g = GenerateBarabasiAlbert(p);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(GiantComponentFraction(g, 4) == 1.0);
}

TEST_CASE("BA edge count formula and handshake identity") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t m0 = m; m0 <= m + 3; ++m0) {
      for (const std::size_t n : {m0 + 1, m0 + 7, std::size_t{300}}) {
        if (n <= m0) continue;
        BAParams p{n, m, m0, 100 + n + m};
        const UndirectedGraph g = GenerateBarabasiAlbert(p);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(m0);
        CHECK(g.edge_count() == m0 * (m0 - 1) / 2 + (n - m0) * m);
        const auto d = Degrees(g);
        CHECK(std::accumulate(d.begin(), d.end(), std::uint64_t{0}) == 2 * g.edge_count());
        CHECK(*std::min_element(d.begin(), d.end()) >= 1);
      }
    }
  }
}

TEST_CASE("BA parameter checks") {
  CHECK_THROWS_AS(GenerateBarabasiAlbert({3, 3, {}, 0}), Error);
  CHECK_THROWS_AS(GenerateBarabasiAlbert({10, 0, {}, 0}), Error);
  CHECK_THROWS_AS(GenerateBarabasiAlbert({10, 3, 2, 0}), Error);
  CHECK_NOTHROW(GenerateBarabasiAlbert({4, 3, {}, 0}));
}

TEST_CASE("generators are deterministic in their seed") {
  CHECK(GenerateBarabasiAlbert({2000, 3, {}, 9}) == GenerateBarabasiAlbert({2000, 3, {}, 9}));
  CHECK_FALSE(GenerateBarabasiAlbert({2000, 3, {}, 9}) ==
              GenerateBarabasiAlbert({2000, 3, {}, 10}));
  CHECK(GenerateErdosRenyi({500, 0.02, 4}) == GenerateErdosRenyi({500, 0.02, 4}));
  CHECK_FALSE(GenerateErdosRenyi({500, 0.02, 4}) == GenerateErdosRenyi({500, 0.02, 5}));
  HubCorpusParams h;
  h.day_count = 5;
  h.seed = 77;
  CHECK(GenerateHubCorpus(h) == GenerateHubCorpus(h));
  HubCorpusParams other = h;
  other.seed = 78;
  CHECK_FALSE(GenerateHubCorpus(h) == GenerateHubCorpus(other));
}

TEST_CASE("BA maximum degree grows with n") {
  int grew = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto small = MaxDegree(GenerateBarabasiAlbert({1000, 3, {}, seed}));
    const auto large = MaxDegree(GenerateBarabasiAlbert({10000, 3, {}, seed + 1000}));
    if (large > small) ++grew;
  }
  CHECK(grew >= 19);
}

TEST_CASE("G(n, p) extremes") {
  CHECK(GenerateErdosRenyi({50, 0.0, 1}).edge_count() == 0);
  CHECK(GenerateErdosRenyi({50, 0.0, 1}).node_count() == 50);
  CHECK(GenerateErdosRenyi({50, 1.0, 1}).edge_count() == 50 * 49 / 2);
  CHECK_THROWS_AS(GenerateErdosRenyi({50, 1.5, 1}), Error);
  CHECK_THROWS_AS(GenerateErdosRenyi({50, -0.1, 1}), Error);
}

TEST_CASE("G(n, p) matches binomial and Poisson statistics") {
  constexpr std::size_t n = 10000;
  constexpr double p = 1e-3;
  const double pairs = n * (n - 1) / 2.0;
  const double mean_edges = pairs * p;
  const double sd_edges = std::sqrt(pairs * p * (1 - p));
  int chi_square_pass = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const UndirectedGraph g = GenerateErdosRenyi({n, p, seed});
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean_edges) <= 3 * sd_edges);
    const auto d = Degrees(g);
    double mean = 0, var = 0;
    for (auto k : d) mean += static_cast<double>(k);
    mean /= n;
    for (auto k : d) var += (static_cast<double>(k) - mean) * (static_cast<double>(k) - mean);
    var /= n;
    CHECK(var / mean >= 0.9);
    CHECK(var / mean <= 1.1);
    if (PoissonGoodnessOfFit(d).p_value > 0.01) ++chi_square_pass;
  }
  CHECK(chi_square_pass >= 18);
}

TEST_CASE("hub corpus") {
  HubCorpusParams p;
  p.seed = 1;
  SUBCASE("zero days is an empty stream") {
    p.day_count = 0;
    CHECK(GenerateHubCorpus(p).empty());
  }
  SUBCASE("hubs carry most of the aggregate out-degree") {
    const TemporalEdgeStream s = GenerateHubCorpus(p);
    std::vector<Arc> arcs;
    for (const auto& e : s.edges()) arcs.push_back({e.sender, e.recipient, 1});
    const DegreeMap d = Degree(Multigraph(arcs, s.shared_registry()), Direction::kOut);
    const double share = DegreeShare(d, TopK(d, 10));
    CHECK(share >= 0.5);
    CHECK(share == doctest::Approx(400.0 / 541.0).epsilon(0.03));
    for (NodeId hub = 0; hub < 10; ++hub) CHECK(d.at(hub) > 2000);
  }
  SUBCASE("messages stay inside their day and the window") {
    p.day_count = 3;
    const TemporalEdgeStream s = GenerateHubCorpus(p);
    for (const auto& e : s.edges()) {
      CHECK(e.timestamp >= p.start);
      CHECK(e.timestamp < p.start + 3 * kSecondsPerDay);
      CHECK(e.sender != e.recipient);
    }
  }
  SUBCASE("invalid parameters") {
    p.hub_count = 200;
    CHECK_THROWS_AS(GenerateHubCorpus(p), Error);
    p.hub_count = 10;
    p.hub_rate = 0;
    CHECK_THROWS_AS(GenerateHubCorpus(p), Error);
  }
}

}  // namespace
}  // namespace crisisnet
