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

#include <string>
#include <utility>
#include <vector>

#include "amoebot/grid.hpp"

namespace amoebot {

using Edge = std::pair<GridPoint, GridPoint>;  // first < second
Edge make_edge(GridPoint u, GridPoint v);

// Intersection of a region with a portal it was cut along.
struct Gate {
  Axis axis = Axis::Y;
  int line = 0;                  // line_index of the cut portal
  int side = 0;                  // side of the cut line the region lies on
  std::vector<GridPoint> nodes;  // sorted along the axis
  std::string region_id;
  bool operator==(const Gate&) const = default;
};

// A connected subgraph of the structure. Nodes are kept sorted; `dirs` holds a
// bitmask of retained incident edge directions per node. A node that sits on
// a cut appears in several regions with different masks.
struct Region {
  std::string id;
  std::vector<GridPoint> nodes;
  std::vector<uint8_t> dirs;
  std::vector<Gate> gates;

  size_t size() const { return nodes.size(); }
  int find(GridPoint p) const;  // position in `nodes`, or -1
  bool contains(GridPoint p) const { return find(p) >= 0; }
  uint8_t mask(GridPoint p) const;
  bool has_edge(GridPoint p, Direction d) const { return (mask(p) >> index(d)) & 1; }
  std::vector<Edge> edges() const;
  // Retained neighbors of p in direction order.
  std::vector<GridPoint> neighbors(GridPoint p) const;
};

// The whole structure as a single region with every induced edge.
Region whole_region(const AmoebotStructure& s, std::string id = "0");

// Builds a region from nodes and edges; masks are derived from the edges.
Region make_region(std::string id, std::vector<GridPoint> nodes, const std::vector<Edge>& edges);

// Connectivity over retained edges.
bool is_region_connected(const Region& r);

// Same node set and same retained edges (ids and gates ignored).
bool same_shape(const Region& x, const Region& y);

}  // namespace amoebot
