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

#include <stdexcept>

#include "amoebot/decompose.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/portals.hpp"
#include "doctest.h"

using namespace amoebot;

TEST_CASE("portals of a parallelogram") {
  Region r = whole_region(parallelogram(5, 3));
  auto px = compute_portals(r, Axis::X);
  auto py = compute_portals(r, Axis::Y);
  auto pz = compute_portals(r, Axis::Z);
  CHECK(px.size() == 3);
  CHECK(py.size() == 5);
  CHECK(pz.size() == 7);  // width + height - 1 diagonals
  for (const Portal& p : px) CHECK(p.nodes.size() == 5);
  // Positive-axis order.
  CHECK(px[0].nodes.front() == GridPoint{0, 0});
  CHECK(px[0].nodes.back() == GridPoint{4, 0});
  CHECK(py[2].line() == 2);
}

TEST_CASE("portal graphs of simple regions are trees") {
  for (Axis q : kAxes) {
    CHECK(portal_graph(whole_region(hexagon(4)), q).is_tree());
    CHECK(portal_graph(whole_region(parallelogram(6, 2)), q).is_tree());
  }
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto s = generate_random(120, 0, seed);
    for (Axis q : kAxes) CHECK(portal_graph(whole_region(s), q).is_tree());
  }
}

TEST_CASE("an annulus has a cyclic y-portal graph") {
  for (auto [outer, inner] : {std::pair{2, 0}, {4, 1}, {7, 3}}) {
    auto g = portal_graph(whole_region(annulus(outer, inner)), Axis::Y);
    CHECK(g.has_cycle());
    CHECK_FALSE(g.is_tree());
  }
}

TEST_CASE("portal distances") {
  Region r = whole_region(hexagon(2));
  // Opposite corners: 4 steps, every axis separates them by at most 4 lines.
  CHECK(portal_distance(r, {-2, 0}, {2, 0}, Axis::Y) == 4);
  CHECK(portal_distance(r, {-2, 0}, {2, 0}, Axis::X) == 0);
  CHECK(portal_distance(r, {-2, 0}, {2, 0}, Axis::Z) == 4);
  CHECK_THROWS_AS(portal_distance(r, {9, 9}, {0, 0}, Axis::X), std::domain_error);
}

TEST_CASE("distance identity on simple structures and regions") {
  CHECK(distance_identity_holds(whole_region(hexagon(3))));
  for (uint64_t seed = 0; seed < 15; ++seed) CHECK(distance_identity_holds(whole_region(generate_random(150, 0, seed))));
  // Final regions of a structure with holes are simple as well.
  auto d = decompose(generate_random(300, 3, 4));
  for (const Region& reg : d.regions) CHECK(distance_identity_holds(reg));
}

TEST_CASE("simple regions of the first phase have tree portal graphs") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto p1 = phase1_simple(generate_random(400, 4, seed));
    for (const Region& r : p1.regions)
      for (Axis q : kAxes) CHECK(portal_graph(r, q).is_tree());
  }
}
