// Copyright 2026 The Amoebot Decomposition Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "amoebot/region.hpp"

namespace amoebot {

struct Portal {
  Axis axis = Axis::Y;
  int id = 0;
  std::vector<GridPoint> nodes;  // positive-axis order
  int line() const { return line_index(nodes.front(), axis); }
};

struct PortalGraph {
  Axis axis = Axis::Y;
  std::vector<Portal> portals;                // indexed by id
  std::vector<std::pair<int, int>> edges;     // sorted, first < second
  std::vector<std::vector<int>> adj;          // sorted neighbor ids
  std::map<GridPoint, int> portal_of;

  int of(GridPoint p) const;  // throws std::out_of_range
  bool is_tree() const;
  bool has_cycle() const { return !is_tree() && connected(); }
  bool connected() const;
  // BFS distances from a set of portal ids (-1 when unreachable).
  std::vector<int> distances(const std::vector<int>& sources) const;
};

// Maximal axis-parallel chains under the region's retained edges, with ids in
// lexicographic order of each chain's smallest node.
std::vector<Portal> compute_portals(const Region& r, Axis q);
PortalGraph portal_graph(const Region& r, Axis q);
// Distance between the portals of u and v; throws std::domain_error when
// either point is outside the region.
int portal_distance(const Region& r, GridPoint u, GridPoint v, Axis q);
int portal_distance(const PortalGraph& g, GridPoint u, GridPoint v);

}  // namespace amoebot
