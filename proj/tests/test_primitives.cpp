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
#include <climits>
#include <random>
#include <stdexcept>

#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/portals.hpp"
#include "amoebot/primitives.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

std::vector<std::vector<int>> random_tree(int n, std::mt19937& g) {
  std::vector<std::vector<int>> adj(n);
  for (int i = 1; i < n; ++i) {
    int p = static_cast<int>(g() % i);
    adj[i].push_back(p);
    adj[p].push_back(i);
  }
  return adj;
}

std::vector<int> bfs_parents(const std::vector<std::vector<int>>& adj, int root, std::vector<int>* order) {
  std::vector<int> par(adj.size(), -1);
  std::vector<char> seen(adj.size(), 0);
  order->assign(1, root);
  seen[root] = 1;
  for (size_t i = 0; i < order->size(); ++i)
    for (int v : adj[(*order)[i]])
      if (!seen[v]) {
        seen[v] = 1;
        par[v] = (*order)[i];
        order->push_back(v);
      }
  return par;
}

}  // namespace

TEST_CASE("ceil_log2 and widths") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(1024) == 10);
  CHECK(value_width(1000) == 13);
  CHECK(block_length(1000) == 16);
  CHECK(election_iterations(1) == 1);
  CHECK(election_iterations(1000) == 40);
}

TEST_CASE("PASC matches BFS depths on structure trees") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto s = generate_random(120, static_cast<int>(seed % 3), seed);
    CircuitWorld world(structure_topology(s), 2, seed);
    const int root = static_cast<int>(seed % s.size());
    auto dist = structure_bfs(s, s.nodes()[root]);
    // BFS tree: any neighbor one step closer is a valid parent.
    std::vector<int> pp(s.size(), -1);
    std::vector<char> active(s.size(), 0);
    for (int u = 0; u < static_cast<int>(s.size()); ++u) {
      if (u == root) continue;
      const auto& nb = s.neighbor_indices(u);
      for (int d = 0; d < 6; ++d)
        if (nb[d] >= 0 && dist[nb[d]] + 1 == dist[u]) {
          pp[u] = d;
          break;
        }
      active[u] = 1;
    }
    Forest f = make_forest(world, pp);
    PascResult r = pasc(world, f, active);
    const int far = *std::max_element(dist.begin(), dist.end());
    CHECK(r.max_value == static_cast<uint64_t>(far));
    CHECK(r.iterations == ceil_log2(static_cast<uint64_t>(far) + 1));
    for (size_t u = 0; u < s.size(); ++u) CHECK(r.value[u] == static_cast<uint64_t>(dist[u]));
  }
}

TEST_CASE("PASC on a chain: frozen rounds") {
  CircuitWorld world(chain_topology(10), 2, 1);
  std::vector<int> pp(10, 0);
  pp[0] = -1;
  Forest f = make_forest(world, pp);
  std::vector<char> active(10, 1);
  PascResult r = pasc(world, f, active);
  CHECK(r.value[9] == 10);
  CHECK(r.iterations == 4);
  CHECK(r.rounds == 9);  // four bit rounds plus five termination checks
  CircuitWorld single_pin(chain_topology(10), 1, 1);
  CHECK_THROWS_AS(pasc(single_pin, f, active), SimulationFault);
}

TEST_CASE("signed prefix sums") {
  std::mt19937 g(5);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(g() % 50);
    CircuitWorld world(chain_topology(n), 2, t);
    std::vector<int> pp(n, 0), w(n, 0);
    pp[0] = -1;
    for (int i = 1; i < n; ++i) w[i] = static_cast<int>(g() % 5) - 2;
    Forest f = make_forest(world, pp);
    SignedStreams s = pasc_signed(world, f, w, 9);
    int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
      sum += w[i];
      CHECK(s.value[i] == sum);
    }
  }
}

TEST_CASE("root and prune agree with a sequential traversal") {
  for (int t = 0; t < 100; ++t) {
    std::mt19937 g(t);
    const int n = 1 + static_cast<int>(g() % 80);
    auto adj = random_tree(n, g);
    std::vector<char> q(n, 0);
    const int root = static_cast<int>(g() % n);
    q[root] = 1;
    for (int k = static_cast<int>(g() % 4); k > 0; --k) q[g() % n] = 1;
    RootPruneResult r = root_and_prune(adj, q, root, t);
    std::vector<int> order;
    auto par = bfs_parents(adj, root, &order);
    std::vector<char> keep(n, 0);
    for (int i = n - 1; i >= 0; --i) {
      int u = order[i];
      if (q[u]) keep[u] = 1;
      if (keep[u] && par[u] >= 0) keep[par[u]] = 1;
    }
    CHECK(r.parent == par);
    CHECK(r.survives == keep);

    PascResult depth = pasc_tree(adj, par, t);
    std::vector<uint64_t> d(n, 0);
    for (int u : order)
      if (par[u] >= 0) d[u] = d[par[u]] + 1;
    CHECK(depth.value == d);
  }
  CHECK_THROWS_AS(root_and_prune({{1}, {0}}, {0, 1}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(root_and_prune({{1, 2}, {0, 2}, {0, 1}}, {1, 0, 0}, 0, 1), std::invalid_argument);
}

TEST_CASE("global maxima on forests") {
  for (int t = 0; t < 100; ++t) {
    std::mt19937 g(t);
    const int n = 1 + static_cast<int>(g() % 60);
    CircuitWorld world(chain_topology(n), 2, t);
    std::vector<int> pp(n, 0), w(n, 0);
    pp[0] = -1;
    for (int i = 1; i < n; ++i) w[i] = static_cast<int>(g() % 5) - 2;
    Forest f = make_forest(world, pp);
    std::vector<char> cand(n);
    for (auto& c : cand) c = static_cast<char>(g() % 2);
    cand[g() % n] = 1;
    MaximaResult m = global_maxima_general(world, f, w, cand, 10);
    std::vector<int64_t> pre(n);
    int64_t best = INT64_MIN;
    for (int i = 0; i < n; ++i) {
      pre[i] = (i ? pre[i - 1] : 0) + w[i];
      if (cand[i]) best = std::max(best, pre[i]);
    }
    CHECK(m.value == pre);
    for (int i = 0; i < n; ++i) CHECK(m.flags[i] == (cand[i] && pre[i] == best));
  }
}

TEST_CASE("global maxima on boundary cycles") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    auto s = generate_random(300, 3, seed);
    for (const BoundaryCycle& c : boundary_cycles(s)) {
      auto pos = c.nodes();
      for (int h = 0; h < 10; ++h) {
        const Heading hd = static_cast<Heading>(h);
        MaximaResult m = global_maxima_boundary(pos, std::vector<char>(pos.size(), 1), hd, s.size(), seed);
        CHECK_FALSE(m.election_failed);
        int64_t best = INT64_MIN;
        for (GridPoint p : pos) best = std::max(best, heading_value(p, hd));
        for (size_t i = 0; i < pos.size(); ++i) CHECK(m.flags[i] == (heading_value(pos[i], hd) == best));
      }
    }
  }
  // A single-position cycle is its own maximum.
  MaximaResult one = global_maxima_boundary({{3, 3}}, {1}, Heading::E, 1, 1);
  CHECK(one.flags == std::vector<char>{1});
}

TEST_CASE("boundary test separates outer from inner cycles") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto s = generate_random(250, static_cast<int>(seed % 6), seed);
    auto cycles = boundary_cycles(s);
    BoundaryTestResult r = boundary_test(cycles, s.size(), seed);
    CHECK_FALSE(r.election_failed);
    for (size_t c = 0; c < cycles.size(); ++c) CHECK(r.inner[c] == (cycles[c].kind == Hole::Kind::Inner));
  }
}

TEST_CASE("leader election leaves exactly one leader with high probability") {
  for (int n : {8, 64, 512}) {
    const int trials = 300;
    int unique = 0;
    for (int t = 0; t < trials; ++t) {
      auto r = leader_election_sets({n}, static_cast<uint64_t>(t) * 1000 + n, n)[0];
      const int leaders = static_cast<int>(std::count(r.leader.begin(), r.leader.end(), 1));
      CHECK(leaders >= 1);
      unique += leaders == 1;
    }
    CHECK(unique >= trials - 1);
  }
  // Separate sets elect separately in the same rounds.
  auto sets = leader_election_sets({5, 1, 9}, 3, 16);
  REQUIRE(sets.size() == 3);
  CHECK(sets[1].leader == std::vector<char>{1});
  CHECK(sets[0].rounds == sets[2].rounds);
}

TEST_CASE("region and portal queries") {
  auto s = parallelogram(6, 4);
  Region r = whole_region(s);
  CircuitWorld world(region_topology(r), 2, 9);
  std::vector<char> none(r.size(), 0), one = none;
  one[r.find({3, 2})] = 1;
  CHECK_FALSE(region_has(world, none).value);
  Answer a = region_has(world, one);
  CHECK(a.value);
  CHECK(a.rounds == 1);

  // The y portal a = 2, from its south end.
  std::vector<int> chain;
  for (int b = 0; b < 4; ++b) chain.push_back(r.find({2, b}));
  std::vector<char> marks(r.size(), 0);
  marks[r.find({2, 2})] = marks[r.find({2, 3})] = 1;
  Closest c = closest_on_portal(world, chain, marks);
  REQUIRE(c.node.has_value());
  CHECK(r.nodes[*c.node] == GridPoint{2, 2});
  CHECK(c.rounds == 1);
  CHECK_FALSE(closest_on_portal(world, chain, none).node.has_value());
}

TEST_CASE("degree check against portal graphs") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto s = generate_random(200, 3, seed);
    Region r = whole_region(s);
    CircuitWorld world(region_topology(r), 2, seed);
    for (Axis q : {Axis::X, Axis::Y, Axis::Z}) {
      PortalGraph pg = portal_graph(r, q);
      for (const Portal& p : pg.portals) {
        std::vector<int> chain;
        for (GridPoint x : p.nodes) chain.push_back(r.find(x));
        const int deg = static_cast<int>(pg.adj[p.id].size());
        std::vector<char> all(r.size(), 1);
        for (int k = 1; k <= 4; ++k) CHECK(degree_check(world, q, chain, all, k).value == (deg >= k));
      }
    }
  }
}
