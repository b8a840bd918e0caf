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

#ifndef CRISISNET_CENTRALITY_HPP_
#define CRISISNET_CENTRALITY_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "crisisnet/temporal_graph.hpp"

namespace crisisnet {

enum class Direction { kOut, kIn, kTotal };

// kMessages counts every email; kNeighbors counts distinct correspondents.
enum class Weighting { kMessages, kNeighbors };

// Degree of every registry node, zeros included.
class DegreeMap {
 public:
  DegreeMap(Direction direction, std::shared_ptr<const NodeRegistry> registry,
            std::vector<std::uint64_t> values);

  Direction direction() const { return direction_; }
  const NodeRegistry& nodes() const { return *registry_; }
  const std::vector<std::uint64_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // kUnknownNode if `id` is not registered.
  std::uint64_t at(NodeId id) const;
  std::uint64_t total() const;

 private:
  Direction direction_;
  std::shared_ptr<const NodeRegistry> registry_;
  std::vector<std::uint64_t> values_;
};

DegreeMap Degree(const Multigraph& g, Direction direction,
                 Weighting weighting = Weighting::kMessages);

struct RankEntry {
  NodeId node = 0;
  std::uint64_t degree = 0;

  friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

// Top-k ranking: degree descending, ties by ascending node id. Holds
// min(k, #nodes with degree > 0) entries unless zeros were requested.
struct RankList {
  std::size_t k = 0;
  std::vector<RankEntry> entries;
};

RankList TopK(const DegreeMap& degrees, std::size_t k, bool include_zeros = false);

// Sum of degrees in `top` over the sum of all degrees; 0 when the total is 0.
double DegreeShare(const DegreeMap& degrees, const RankList& top);

}  // namespace crisisnet

#endif  // CRISISNET_CENTRALITY_HPP_
