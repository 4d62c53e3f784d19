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

#include <algorithm>
#include <set>

#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/split.hpp"
#include "doctest.h"

using namespace amoebot;

TEST_CASE("cut along a y-portal of a parallelogram") {
  Region r = whole_region(parallelogram(5, 3));
  auto parts = split_region(r, {Cut{Axis::Y, {2, 0}, {}}});
  REQUIRE(parts.size() == 2);
  // The cut portal belongs to both sides.
  CHECK(parts[0].size() == 9);
  CHECK(parts[1].size() == 9);
  CHECK(parts[0].id == "0.0");
  CHECK(parts[1].id == "0.1");
  // West part first, and both carry the gate.
  CHECK(parts[0].contains({0, 0}));
  REQUIRE(parts[0].gates.size() == 1);
  CHECK(parts[0].gates[0].line == 2);
  CHECK(parts[0].gates[0].side == 0);
  CHECK(parts[1].gates[0].side == 1);
  CHECK(parts[0].gates[0].nodes.size() == 3);
  for (const Region& p : parts) CHECK(is_region_connected(p));
}

TEST_CASE("a cut on the region boundary keeps a single region") {
  Region r = whole_region(parallelogram(4, 2));
  auto parts = split_region(r, {Cut{Axis::Y, {0, 0}, {}}});
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].id == "0");
}

TEST_CASE("one node split does not open an annulus, two do") {
  Region r = whole_region(annulus(2, 0));
  const Cut west{Axis::Y, {-1, -1}, {SplitNodeSpec{{-1, 1}, {0, 0}}}};
  const Cut east{Axis::Y, {1, -2}, {SplitNodeSpec{{1, 0}, {0, 0}}}};
  // The two copies of the split node meet again around the hole.
  auto once = split_region(r, {west});
  REQUIRE(once.size() == 2);
  CHECK(once[0].size() == 7);
  CHECK_FALSE(is_simple(once[1]));
  auto twice = split_region(r, {west, east});
  REQUIRE(twice.size() == 4);
  for (const Region& p : twice) {
    CHECK(is_simple(p));
    CHECK(is_region_connected(p));
  }
  CHECK(twice.front().size() == 7);
  CHECK(twice.back().size() == 7);
}

TEST_CASE("split validation") {
  Region r = whole_region(parallelogram(4, 3));
  Portal p = compute_portals(r, Axis::Y)[1];
  CHECK_THROWS_AS(split_at_portal_and_nodes(r, p, {SplitNodeSpec{{3, 0}, {4, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(split_at_portal_and_nodes(r, p, {SplitNodeSpec{{1, 1}, {2, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(split_region_at_node(r, SplitNodeSpec{{1, 1}, {2, 1}}), std::invalid_argument);
}

TEST_CASE("splits keep every edge") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto s = generate_random(200, 0, seed);
    Region r = whole_region(s);
    auto portals = compute_portals(r, Axis::Y);
    std::vector<Cut> cuts;
    for (size_t i = 1; i < portals.size(); i += 3) cuts.push_back(Cut{Axis::Y, portals[i].nodes.front(), {}});
    auto parts = split_region(r, cuts);
    // Every part edge is an edge of r, and every edge of r survives.
    std::set<Edge> all;
    for (const Region& p : parts) {
      CHECK(is_region_connected(p));
      CHECK(is_simple(p));
      for (const Edge& e : p.edges()) all.insert(e);
    }
    auto original = r.edges();
    CHECK(std::vector<Edge>(all.begin(), all.end()) == std::vector<Edge>(original.begin(), original.end()));
  }
}
