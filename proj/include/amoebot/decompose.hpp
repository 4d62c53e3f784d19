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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amoebot/portals.hpp"
#include "amoebot/split.hpp"

namespace amoebot {

// Median cut of a region with single-node gates g, g'.
struct MedianCut {
  Axis axis = Axis::X;
  int d = 0;                           // portal distance between g and g'
  std::vector<GridPoint> portal;       // the median portal
  bool same_side = false;              // g and g' stay together after the cut alone
  std::optional<GridPoint> b;          // extra node split when same_side
};

struct AxisCase {
  Axis axis = Axis::X;
  int kase = 0;                        // 1: a portal meets both gates, 2: otherwise
  // Case 1: northernmost and southernmost shared portals.
  // Case 2: the gate-side portals closest to the opposite gate.
  std::vector<GridPoint> first, second;
  std::optional<GridPoint> first_node, second_node;  // boundary node splits
};

struct TunnelCaseData {
  std::string tunnel_id;
  std::vector<GridPoint> gate, gate_prime;  // G and G'
  std::array<AxisCase, 2> axes;             // x, z
  bool has_m = false;
  std::string m_id;
  int m_candidates = 0;
  std::optional<GridPoint> g, g_prime;
  std::vector<MedianCut> median;            // x, y, z when M exists
};

struct Decomposition {
  std::vector<Region> regions;          // final convex regions
  std::vector<Region> simple_regions;   // after the first phase
  std::vector<Gate> gates;              // gates created by the first phase
  std::vector<Region> tunnels;          // after the second phase
  std::vector<TunnelCaseData> cases;    // one per two-gate tunnel
  size_t holes = 0;
};

// Gate-defining split of the first phase for one inner hole.
struct HoleSplit {
  int hole = 0;
  SplitNodeSpec wnw, ese;
};

struct Phase1Result {
  std::vector<Region> regions;
  std::vector<Gate> gates;
  std::vector<HoleSplit> splits;
};

// Extremal boundary nodes of an inner hole with their hole-side split points.
HoleSplit hole_split(const AmoebotStructure& s, const Hole& hole, int hole_index);
// Cuts from a set of node specs, merged per y-portal of the whole structure.
std::vector<Cut> phase1_cuts(const Region& whole, const std::vector<HoleSplit>& splits);

Phase1Result phase1_simple(const AmoebotStructure& s);

// Portal ids of the region's y-portals that carry a y-gate.
std::vector<int> gate_portals(const Region& r, const PortalGraph& py);

// Tunnel decomposition of a simple region; `gates` replaces r.gates.
std::vector<Region> phase2_tunnels(const Region& r, const std::vector<Gate>& gates);
std::vector<Region> phase2_tunnels(const Region& r);

// The two gates of a tunnel, G first (WNW-most northernmost node).
std::pair<std::vector<GridPoint>, std::vector<GridPoint>> tunnel_gates(const Region& t);

// Convex decomposition of a tunnel. Regions with fewer than two gates are
// returned unchanged; more than two gates throws std::logic_error.
std::pair<std::vector<Region>, TunnelCaseData> phase3_convex(const Region& tunnel);

// Splits M at the median x-, y- and z-portals between g and g'. Throws
// std::invalid_argument if g or g' is outside M.
std::vector<Region> point_gate_split(const Region& m, GridPoint g, GridPoint g_prime,
                                     std::vector<MedianCut>* info = nullptr);

Decomposition decompose(const AmoebotStructure& s);

}  // namespace amoebot
