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

#include <vector>

#include "amoebot/portals.hpp"
#include "amoebot/region.hpp"

namespace amoebot {

// A node on a cut portal together with a neighboring grid point that selects
// which side's copy of the node is divided further.
struct SplitNodeSpec {
  GridPoint node;
  GridPoint empty_point;
  bool operator==(const SplitNodeSpec&) const = default;
};

// A cut along the portal through `seed`, optionally dividing some of its
// nodes. Several cuts may be applied at once; a point on more than one cut
// line ends up in every sector the lines carve around it.
struct Cut {
  Axis axis = Axis::Y;
  GridPoint seed;
  std::vector<SplitNodeSpec> nodes;
};

// Chain of the axis portal through p under the region's retained edges.
std::vector<GridPoint> portal_through(const Region& r, GridPoint p, Axis q);

// Applies all cuts simultaneously. Nodes on a cut line keep the line's edges
// on both sides; the remaining incident edges go to the side they point to.
// A node spec further separates the two cross edges on the side of its
// empty point, pairing the one next to the positive axis direction with the
// positive portal edge. Children are ordered WNW-most first, then NNE-most,
// and get ids "<parent>.<k>" (a split with a single result keeps the id).
std::vector<Region> split_region(const Region& r, const std::vector<Cut>& cuts);

// Throws std::invalid_argument if the portal is not a portal of r.
std::vector<Region> split_at_portal(const Region& r, const Portal& portal);

// Throws std::invalid_argument for a spec node off the portal, a spec point
// that is not a cross-axis neighbor, or one joined to the node by a retained
// edge.
std::vector<Region> split_at_portal_and_nodes(const Region& r, const Portal& portal,
                                              const std::vector<SplitNodeSpec>& specs);

// Divides a single node that lies on one of r's y-gates. The spec point only
// selects the side; it may be occupied. Throws std::invalid_argument if the
// node is not on a gate.
std::vector<Region> split_region_at_node(const Region& r, const SplitNodeSpec& spec);

}  // namespace amoebot
