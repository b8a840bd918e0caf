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

#include "crisisnet/centrality.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "crisisnet/error.hpp"

namespace crisisnet {

DegreeMap::DegreeMap(Direction direction,
                     std::shared_ptr<const NodeRegistry> registry,
                     std::vector<std::uint64_t> values)
    : direction_(direction),
      registry_(registry ? std::move(registry)
                         : std::make_shared<const NodeRegistry>()),
      values_(std::move(values)) {
  if (values_.size() != registry_->size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "degree vector does not match registry size");
  }
}

std::uint64_t DegreeMap::at(NodeId id) const {
  auto it = std::lower_bound(registry_->begin(), registry_->end(), id);
  if (it == registry_->end() || *it != id) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(id) + " not registered");
  }
  return values_[static_cast<std::size_t>(it - registry_->begin())];
}

std::uint64_t DegreeMap::total() const {
  return std::accumulate(values_.begin(), values_.end(), std::uint64_t{0});
}

DegreeMap Degree(const Multigraph& g, Direction direction, Weighting weighting) {
  std::vector<std::uint64_t> values(g.registry().size(), 0);
  for (const Arc& a : g.arcs()) {
    const std::uint64_t w = weighting == Weighting::kMessages ? a.multiplicity : 1;
    if (direction != Direction::kIn) values[*g.IndexOf(a.sender)] += w;
    if (direction != Direction::kOut) values[*g.IndexOf(a.recipient)] += w;
  }
  if (weighting == Weighting::kNeighbors && direction == Direction::kTotal) {
    // A reciprocated pair is one correspondent, not two.
    for (const Arc& a : g.arcs()) {
      if (a.sender < a.recipient &&
          std::binary_search(g.arcs().begin(), g.arcs().end(),
                             Arc{a.recipient, a.sender, 0},
                             [](const Arc& x, const Arc& y) {
                               return std::pair(x.sender, x.recipient) <
                                      std::pair(y.sender, y.recipient);
                             })) {
        --values[*g.IndexOf(a.sender)];
        --values[*g.IndexOf(a.recipient)];
      }
    }
  }
  return DegreeMap(direction, g.shared_registry(), std::move(values));
}

RankList TopK(const DegreeMap& degrees, std::size_t k, bool include_zeros) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::vector<RankEntry> all;
  all.reserve(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (include_zeros || degrees.values()[i] > 0) {
      all.push_back({degrees.nodes()[i], degrees.values()[i]});
    }
  }
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take),
                    all.end(), [](const RankEntry& a, const RankEntry& b) {
                      if (a.degree != b.degree) return a.degree > b.degree;
                      return a.node < b.node;
                    });
  all.resize(take);
  return {k, std::move(all)};
}

double DegreeShare(const DegreeMap& degrees, const RankList& top) {
  const std::uint64_t total = degrees.total();
  std::uint64_t part = 0;
  for (const RankEntry& e : top.entries) {
    if (degrees.at(e.node) != e.degree) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rank list was not derived from this degree map");
    }
    part += e.degree;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(part) / static_cast<double>(total);
}

}  // namespace crisisnet
