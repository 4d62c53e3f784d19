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

#include <set>
#include <stdexcept>

#include "amoebot/decompose.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

// Spine a = 0 (b = 0..6) with arms a = 1..4 at b = 0, 3, 6.
AmoebotStructure e_shape() {
  std::vector<GridPoint> nodes;
  for (int b = 0; b <= 6; ++b) nodes.push_back({0, b});
  for (int b : {0, 3, 6})
    for (int a = 1; a <= 4; ++a) nodes.push_back({a, b});
  return AmoebotStructure(nodes);
}

}  // namespace

TEST_CASE("hole-free structures stay whole") {
  for (const AmoebotStructure& s : {hexagon(3), parallelogram(6, 2), AmoebotStructure({{0, 0}})}) {
    Decomposition d = decompose(s);
    CHECK(d.holes == 0);
    REQUIRE(d.regions.size() == 1);
    CHECK(d.regions[0].size() == s.size());
    CHECK(d.gates.empty());
    CHECK(d.cases.empty());
  }
}

TEST_CASE("hole splits of the small annulus") {
  // The hole is the origin; its boundary is the six neighbors.
  auto s = annulus(2, 0);
  HoleSplit hs = hole_split(s, find_holes(s).inner[0], 0);
  CHECK(hs.wnw.node == GridPoint{-1, 1});
  CHECK(hs.wnw.empty_point == GridPoint{0, 0});
  CHECK(hs.ese.node == GridPoint{1, 0});
  CHECK(hs.ese.empty_point == GridPoint{0, 0});
}

TEST_CASE("first phase on the small annulus meets both counting bounds") {
  Phase1Result p1 = phase1_simple(annulus(2, 0));
  CHECK(p1.regions.size() == 4);  // 3|H| + 1
  CHECK(p1.gates.size() == 6);    // 6|H|
  for (const Region& r : p1.regions) CHECK(is_simple(r));
  // Everything west of line -1 and east of line 1 stays in one piece.
  CHECK(p1.regions.front().size() == 7);
  CHECK(p1.regions.back().size() == 7);
}

TEST_CASE("regression counts on seeded structures") {
  // Frozen from a verified run; the oracles below check the same runs.
  struct Expect {
    uint64_t seed;
    size_t simple, gates, tunnels, regions;
  };
  for (Expect e : {Expect{1, 7, 12, 7, 31}, Expect{2, 6, 10, 6, 29}, Expect{3, 7, 12, 7, 40}}) {
    auto s = generate_random(200, 2, e.seed);
    Decomposition d = decompose(s);
    CHECK(d.simple_regions.size() == e.simple);
    CHECK(d.gates.size() == e.gates);
    CHECK(d.tunnels.size() == e.tunnels);
    CHECK(d.regions.size() == e.regions);
    CHECK(verify_decomposition(s, d).all_ok());
  }
  Decomposition a = decompose(annulus(4, 1));
  CHECK(a.simple_regions.size() == 4);
  CHECK(a.tunnels.size() == 4);
  CHECK(a.regions.size() == 10);
}

TEST_CASE("tunnels have at most two gates") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Decomposition d = decompose(generate_random(400, 5, seed));
    for (const Region& t : d.tunnels) {
      CHECK(gate_portals(t, portal_graph(t, Axis::Y)).size() <= 2);
      CHECK(is_simple(t));
    }
  }
}

TEST_CASE("more than two gates") {
  Region whole = whole_region(e_shape());
  auto parts = split_region(whole, {Cut{Axis::Y, {2, 0}, {}}, Cut{Axis::Y, {2, 3}, {}}, Cut{Axis::Y, {2, 6}, {}}});
  REQUIRE(parts.size() == 4);
  const Region& comb = parts.front();
  CHECK(gate_portals(comb, portal_graph(comb, Axis::Y)).size() == 3);
  CHECK_THROWS_AS(phase3_convex(comb), std::logic_error);
  for (const Region& t : phase2_tunnels(comb)) CHECK(gate_portals(t, portal_graph(t, Axis::Y)).size() <= 2);
}

TEST_CASE("tunnel gates: G is the WNW-most") {
  Region r = whole_region(parallelogram(8, 3));
  auto parts = split_region(r, {Cut{Axis::Y, {2, 0}, {}}, Cut{Axis::Y, {5, 0}, {}}});
  REQUIRE(parts.size() == 3);
  auto [g, gp] = tunnel_gates(parts[1]);
  CHECK(g.front().a == 2);
  CHECK(gp.front().a == 5);
  auto [convex, data] = phase3_convex(parts[1]);
  CHECK(data.axes[0].kase == 1);  // every x portal spans the corridor
  CHECK(data.axes[1].kase == 2);  // no z portal touches both gates
  CHECK_FALSE(data.has_m);
  for (const Region& c : convex) CHECK(is_geodesically_convex(AmoebotStructure(r.nodes), c).convex);
}

TEST_CASE("point gate split of a parallelogram") {
  Region r = whole_region(parallelogram(5, 5));
  std::vector<MedianCut> info;
  auto parts = point_gate_split(r, {0, 0}, {4, 4}, &info);
  REQUIRE(info.size() == 3);
  // d_x = d_y = 4 and d_z = 8; the medians sit on the middle lines.
  CHECK(info[0].d == 4);
  CHECK(info[1].d == 4);
  CHECK(info[2].d == 8);
  CHECK(line_index(info[0].portal.front(), Axis::X) == 2);
  CHECK(line_index(info[1].portal.front(), Axis::Y) == 2);
  CHECK(line_index(info[2].portal.front(), Axis::Z) == 4);
  CHECK(parts.size() == 6);
  AmoebotStructure s(r.nodes);
  for (const Region& p : parts) CHECK(is_geodesically_convex(s, p).convex);
  CHECK_THROWS_AS(point_gate_split(r, {9, 9}, {0, 0}), std::invalid_argument);
}

TEST_CASE("property sweep: bounds, simplicity and convexity") {
  for (uint64_t seed = 0; seed < 24; ++seed) {
    const int holes = static_cast<int>(seed % 7);
    auto s = generate_random(150 + 40 * static_cast<int>(seed), holes, seed);
    Decomposition d = decompose(s);
    VerificationReport v = verify_decomposition(s, d);
    CHECK(v.coverage_ok);
    CHECK(v.phase1_bound_ok);
    CHECK(v.gate_bound_ok);
    CHECK(v.simple_ok());
    CHECK(v.convex_ok());
    CHECK(v.knowledge_ok());
    CHECK(d.holes == static_cast<size_t>(holes));
  }
}

TEST_CASE("dense seeds produce point-gate splits") {
  for (auto [seed, expected] : {std::pair<uint64_t, int>{0, 1}, {2, 1}, {3, 2}}) {
    auto s = generate_random(200, 8, seed);
    Decomposition d = decompose(s);
    int with_m = 0;
    for (const TunnelCaseData& c : d.cases) {
      if (!c.has_m) continue;
      ++with_m;
      CHECK(c.median.size() == 3);
      CHECK(c.g.has_value());
      CHECK(c.g_prime.has_value());
    }
    CHECK(with_m == expected);
    CHECK(verify_decomposition(s, d).all_ok());
  }
}
