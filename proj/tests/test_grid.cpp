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
#include <stdexcept>
#include <set>

#include "amoebot/generate.hpp"
#include "amoebot/grid.hpp"
#include "doctest.h"

using namespace amoebot;

TEST_CASE("direction offsets and rotation") {
  CHECK(offset(Direction::E) == GridPoint{1, 0});
  CHECK(offset(Direction::NNE) == GridPoint{0, 1});
  CHECK(offset(Direction::NNW) == GridPoint{-1, 1});
  CHECK(offset(Direction::SSE) == GridPoint{1, -1});
  for (Direction d : kDirections) {
    CHECK(step(step(GridPoint{3, -2}, d), opposite(d)) == GridPoint{3, -2});
    CHECK(direction_between({0, 0}, offset(d)) == d);
  }
  CHECK(rotate(Direction::SSE, 1) == Direction::E);
  CHECK_FALSE(direction_between({0, 0}, {1, 1}).has_value());
}

TEST_CASE("axes, lines and sides") {
  const GridPoint p{2, -5};
  CHECK(line_index(p, Axis::X) == -5);
  CHECK(line_index(p, Axis::Y) == 2);
  CHECK(line_index(p, Axis::Z) == -3);
  // Moving along an axis keeps the line.
  for (Axis q : kAxes) CHECK(line_index(step(p, axis_direction(q)), q) == line_index(p, q));
  for (Axis q : kAxes) CHECK(along(step(p, axis_direction(q)), q) == along(p, q) + 1);
  CHECK(side_of(Direction::NNE, Axis::Y) == -1);
  CHECK(side_of(Direction::W, Axis::Y) == 0);
  CHECK(side_of(Direction::NNW, Axis::Y) == 0);
  CHECK(side_of(Direction::E, Axis::Y) == 1);
  CHECK(side_of(Direction::SSE, Axis::Y) == 1);
  // The upper side is where the line index grows.
  for (Axis q : kAxes)
    for (Direction d : kDirections)
      if (side_of(d, q) >= 0)
        CHECK((line_index(step(p, d), q) > line_index(p, q)) == (side_of(d, q) == upper_side(q)));
}

TEST_CASE("headings are linear and oriented") {
  for (Direction d : kDirections) {
    Heading h = heading_of(d);
    CHECK(heading_value(offset(d), h) > 0);
    CHECK(heading_value(offset(opposite(d)), h) < 0);
  }
  CHECK(heading_value({-3, 7}, Heading::WNW) == 3);
  CHECK(heading_value({-3, 7}, Heading::E) == 1);
}

TEST_CASE("structure validation") {
  CHECK_THROWS_AS(AmoebotStructure(std::vector<GridPoint>{}), std::invalid_argument);
  CHECK_THROWS_AS(AmoebotStructure({{0, 0}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(AmoebotStructure({{0, 0}, {0, 0}}), std::invalid_argument);
  AmoebotStructure s({{0, 0}, {1, 0}, {0, 1}});
  CHECK(s.size() == 3);
  CHECK(s.neighbors({0, 0}).size() == 2);
  CHECK_THROWS_AS(s.neighbors({5, 5}), std::domain_error);
}

TEST_CASE("fixed shapes") {
  CHECK(hexagon(0).size() == 1);
  CHECK(hexagon(3).size() == 37);  // 3r(r+1) + 1
  CHECK(parallelogram(5, 3).size() == 15);
  CHECK(annulus(2, 0).size() == 18);
  CHECK(annulus(4, 1).size() == 61 - 7);
}

TEST_CASE("holes of an annulus") {
  HoleSet h = find_holes(annulus(2, 0));
  REQUIRE(h.inner.size() == 1);
  CHECK(h.inner[0].cells == std::vector<GridPoint>{{0, 0}});
  CHECK(h.inner[0].boundary.size() == 6);
  CHECK(find_holes(hexagon(4)).inner.empty());
  CHECK(find_holes(annulus(5, 2)).inner.size() == 1);
}

TEST_CASE("boundary cycles") {
  SUBCASE("single node sees all six directions empty") {
    auto cycles = boundary_cycles(AmoebotStructure({{0, 0}}));
    REQUIRE(cycles.size() == 1);
    REQUIRE(cycles[0].steps.size() == 1);
    CHECK(cycles[0].steps[0].run_length == 6);
  }
  SUBCASE("annulus: outer first, then the inner ring") {
    auto cycles = boundary_cycles(annulus(2, 0));
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0].kind == Hole::Kind::Outer);
    CHECK(cycles[1].kind == Hole::Kind::Inner);
    CHECK(cycles[1].steps.size() == 6);
    CHECK(cycles[0].steps.size() == 12);
  }
  SUBCASE("consecutive positions are neighbors") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      auto s = generate_random(150, 3, seed);
      for (const auto& c : boundary_cycles(s)) {
        auto pos = c.nodes();
        for (size_t i = 0; i < pos.size(); ++i)
          CHECK(direction_between(pos[i], pos[(i + 1) % pos.size()]).has_value());
      }
    }
  }
}

TEST_CASE("generator") {
  for (int holes : {0, 1, 3, 8}) {
    auto s = generate_random(300, holes, 11);
    CHECK(s.size() == 300);
    CHECK(find_holes(s).inner.size() == static_cast<size_t>(holes));
  }
  CHECK(generate_random(200, 2, 5).nodes() == generate_random(200, 2, 5).nodes());
  CHECK(generate_random(200, 2, 5).nodes() != generate_random(200, 2, 6).nodes());
  CHECK_THROWS_AS(generate_random(20, 5, 1), std::invalid_argument);
}
