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

#include "crisisnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <string>

#include "crisisnet/error.hpp"
#include "crisisnet/random.hpp"

namespace crisisnet {
namespace {

std::vector<NodeId> SortedNodes(const RankList& list) {
  std::vector<NodeId> ids;
  ids.reserve(list.entries.size());
  for (const RankEntry& e : list.entries) ids.push_back(e.node);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t IntersectionSize(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Degree of `id` in `d`, or 0 when `id` is not registered there.
double DegreeOrZero(const DegreeMap& d, NodeId id) {
  auto it = std::lower_bound(d.nodes().begin(), d.nodes().end(), id);
  if (it == d.nodes().end() || *it != id) return 0.0;
  return static_cast<double>(d.values()[static_cast<std::size_t>(it - d.nodes().begin())]);
}

}  // namespace

std::optional<double> Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "pearson: need at least 2 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationSeries ConsecutiveDayCorrelation(std::span<const DailySnapshot> snapshots,
                                            Direction direction,
                                            CorrelationDomain domain) {
  if (snapshots.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "day-pair correlation needs at least 2 snapshots");
  }
  std::vector<DegreeMap> degrees;
  degrees.reserve(snapshots.size());
  for (const DailySnapshot& s : snapshots) degrees.push_back(Degree(s.graph, direction));

  CorrelationSeries series;
  series.domain = domain;
  std::vector<NodeId> nodes;
  std::vector<double> x, y;
  for (std::size_t t = 0; t + 1 < snapshots.size(); ++t) {
    if (snapshots[t].empty() || snapshots[t + 1].empty()) {
      series.excluded.push_back(t);
      continue;
    }
    const DegreeMap& a = degrees[t];
    const DegreeMap& b = degrees[t + 1];
    nodes.clear();
    std::set_union(a.nodes().begin(), a.nodes().end(), b.nodes().begin(),
                   b.nodes().end(), std::back_inserter(nodes));
    x.clear();
    y.clear();
    for (NodeId id : nodes) {
      const double da = DegreeOrZero(a, id);
      const double db = DegreeOrZero(b, id);
      if (domain == CorrelationDomain::kActiveEither && da == 0.0 && db == 0.0) continue;
      x.push_back(da);
      y.push_back(db);
    }
    DayPairCorrelation pair{t, std::nullopt};
    if (x.size() >= 2) pair.r = Pearson(x, y);
    series.pairs.push_back(pair);
  }
  return series;
}

std::vector<DailySnapshot> ShuffleIdentities(std::span<const DailySnapshot> snapshots,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DailySnapshot> out;
  out.reserve(snapshots.size());
  for (const DailySnapshot& s : snapshots) {
    const NodeRegistry& registry = s.graph.registry();
    std::vector<NodeId> image(registry.begin(), registry.end());
    rng.Shuffle(image);
    std::vector<Arc> arcs;
    arcs.reserve(s.graph.arcs().size());
    for (const Arc& a : s.graph.arcs()) {
      arcs.push_back({image[*s.graph.IndexOf(a.sender)],
                      image[*s.graph.IndexOf(a.recipient)], a.multiplicity});
    }
    out.push_back({s.day_index, s.date, Multigraph(std::move(arcs), s.graph.shared_registry())});
  }
  return out;
}

DegreeSeries MakeDegreeSeries(NodeId node, std::vector<double> values) {
  DegreeSeries s;
  s.node = node;
  s.values = std::move(values);
  if (s.values.empty()) return s;
  const double n = static_cast<double>(s.values.size());
  for (double v : s.values) s.mean += v;
  s.mean /= n;
  double ss = 0;
  for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  if (s.mean != 0.0) s.cv = s.stddev / s.mean;
  return s;
}

DegreeSeries NodeSeries(std::span<const DailySnapshot> snapshots, NodeId node,
                        Direction direction) {
  bool known = false;
  std::vector<double> values;
  values.reserve(snapshots.size());
  for (const DailySnapshot& s : snapshots) {
    const auto index = s.graph.IndexOf(node);
    known = known || index.has_value();
    double v = 0;
    if (index) {
      for (const Arc& a : s.graph.arcs()) {
        if ((direction != Direction::kIn && a.sender == node) ||
            (direction != Direction::kOut && a.recipient == node)) {
          v += static_cast<double>(a.multiplicity);
        }
      }
    }
    values.push_back(v);
  }
  if (!known) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(node) + " not registered");
  }
  return MakeDegreeSeries(node, std::move(values));
}

const char* StabilityName(Stability s) {
  switch (s) {
    case Stability::kStable: return "stable";
    case Stability::kFluctuating: return "fluctuating";
    case Stability::kInactive: return "inactive";
  }
  return "?";
}

Stability ClassifyStability(const DegreeSeries& series, double cv_threshold) {
  if (!series.cv) return Stability::kInactive;
  return *series.cv <= cv_threshold ? Stability::kStable : Stability::kFluctuating;
}

OverlapResult RankOverlap(const RankList& a, const RankList& b) {
  if (a.k != b.k) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank lists built with different k (" + std::to_string(a.k) + " vs " +
                    std::to_string(b.k) + ")");
  }
  if (a.k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  OverlapResult r;
  r.k = a.k;
  r.count = IntersectionSize(SortedNodes(a), SortedNodes(b));
  r.fraction = static_cast<double>(r.count) / static_cast<double>(r.k);
  return r;
}

std::vector<OverlapRow> OverlapVsK(std::span<const DailySnapshot> snapshots,
                                   std::span<const std::size_t> k_values,
                                   Direction direction) {
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] == 0 || (i > 0 && k_values[i] <= k_values[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "k values must be positive and ascending");
    }
  }
  std::vector<DegreeMap> degrees;
  for (const DailySnapshot& s : snapshots) {
    if (!s.empty()) degrees.push_back(Degree(s.graph, direction));
  }
  std::vector<OverlapRow> rows;
  for (std::size_t k : k_values) {
    std::vector<std::vector<NodeId>> tops;
    tops.reserve(degrees.size());
    for (const DegreeMap& d : degrees) tops.push_back(SortedNodes(TopK(d, k)));
    OverlapRow row;
    row.k = k;
    double sum = 0;
    for (std::size_t i = 0; i < tops.size(); ++i) {
      for (std::size_t j = i + 1; j < tops.size(); ++j) {
        sum += static_cast<double>(IntersectionSize(tops[i], tops[j])) /
               static_cast<double>(k);
        ++row.day_pairs;
      }
    }
    if (row.day_pairs > 0) row.mean_fraction = sum / static_cast<double>(row.day_pairs);
    rows.push_back(row);
  }
  return rows;
}

ConsistencyResult DailyVsAggregateConsistency(std::span<const DailySnapshot> snapshots,
                                              const AggregateGraph& aggregate,
                                              std::size_t k, Direction direction) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::map<NodeId, std::size_t> counts;
  for (const DailySnapshot& s : snapshots) {
    if (s.empty()) continue;
    for (const RankEntry& e : TopK(Degree(s.graph, direction), k).entries) ++counts[e.node];
  }
  ConsistencyResult result;
  for (const auto& [node, days] : counts) result.frequency.push_back({node, days});
  std::stable_sort(result.frequency.begin(), result.frequency.end(),
                   [](const TopKFrequency& a, const TopKFrequency& b) {
                     return a.days > b.days;
                   });
  result.frequent.k = k;
  for (std::size_t i = 0; i < std::min(k, result.frequency.size()); ++i) {
    result.frequent.entries.push_back({result.frequency[i].node, result.frequency[i].days});
  }
  result.aggregate = TopK(Degree(aggregate, direction), k);
  result.overlap = RankOverlap(result.frequent, result.aggregate);
  return result;
}

}  // namespace crisisnet
