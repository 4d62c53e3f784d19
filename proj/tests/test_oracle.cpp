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

#include "amoebot/decompose.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

// Bottom row a = 0..4 with two posts a = 0 and a = 4 rising to b = 3.
AmoebotStructure u_shape() {
  std::vector<GridPoint> nodes;
  for (int a = 0; a < 5; ++a) nodes.push_back({a, 0});
  for (int b = 1; b < 4; ++b) {
    nodes.push_back({0, b});
    nodes.push_back({4, b});
  }
  return AmoebotStructure(nodes);
}

}  // namespace

TEST_CASE("structure distances") {
  auto s = hexagon(2);
  auto d = structure_bfs(s, {0, 0});
  CHECK(*std::max_element(d.begin(), d.end()) == 2);
  CHECK(shortest_path_nodes(s, {-2, 0}, {2, 0}).size() == 5);
  // Between (0,0) and (2,-1): all nodes of the parallelogram spanned.
  CHECK(shortest_path_nodes(s, {0, 0}, {2, -1}).size() == 4);
}

TEST_CASE("geodesic convexity") {
  auto u = u_shape();
  CHECK(is_geodesically_convex(u, std::vector<GridPoint>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {0, 1}, {4, 1}})
            .convex);
  ConvexityResult tips = is_geodesically_convex(u, std::vector<GridPoint>{{0, 3}, {4, 3}});
  CHECK_FALSE(tips.convex);
  REQUIRE(tips.witness.has_value());
  // The witness lies on a shortest path and outside the set.
  auto path = shortest_path_nodes(u, tips.witness->u, tips.witness->v);
  CHECK(std::binary_search(path.begin(), path.end(), tips.witness->w));
  CHECK(tips.witness->w != GridPoint{0, 3});
  CHECK(tips.witness->w != GridPoint{4, 3});
  CHECK(tips.exhaustive);
  CHECK(is_geodesically_convex(hexagon(3), hexagon(3).nodes()).convex);
}

TEST_CASE("sampled convexity beyond the exhaustive limit") {
  auto s = hexagon(6);
  ConvexityResult r = is_geodesically_convex(s, s.nodes(), 10, 16);
  CHECK(r.convex);
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("simplicity") {
  CHECK(is_simple(hexagon(3)));
  CHECK_FALSE(is_simple(annulus(2, 0)));
  CHECK_FALSE(is_simple(annulus(5, 2)));
  CHECK(is_simple(u_shape()));
}

TEST_CASE("global maxima oracle") {
  auto h = hexagon(2).nodes();
  CHECK(global_maxima_oracle(h, Heading::E) == std::vector<GridPoint>{{2, 0}});
  CHECK(global_maxima_oracle(h, Heading::WNW) == std::vector<GridPoint>{{-2, 0}, {-2, 1}, {-2, 2}});
  CHECK(global_maxima_oracle({{5, 5}}, Heading::S) == std::vector<GridPoint>{{5, 5}});
}

TEST_CASE("verification catches broken decompositions") {
  auto s = generate_random(250, 2, 9);
  Decomposition d = decompose(s);
  CHECK(verify_decomposition(s, d).all_ok());

  Decomposition missing = d;
  missing.regions.pop_back();
  CHECK_FALSE(verify_decomposition(s, missing).coverage_ok);

  // The whole structure as a single final region is not simple.
  Decomposition whole = d;
  whole.regions = {whole_region(s)};
  VerificationReport v = verify_decomposition(s, whole);
  CHECK_FALSE(v.simple_ok());
  CHECK_FALSE(v.all_ok());
}

TEST_CASE("region constant") {
  auto s = generate_random(300, 3, 2);
  Decomposition d = decompose(s);
  VerificationReport v = verify_decomposition(s, d);
  CHECK(v.holes == 3);
  CHECK(v.region_constant == doctest::Approx((static_cast<double>(d.regions.size()) - 1) / 3));
}
