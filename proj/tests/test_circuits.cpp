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

#include "amoebot/circuits.hpp"
#include "amoebot/generate.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

class Forever : public Protocol {
 public:
  std::string name() const override { return "forever"; }
  void activate(CircuitWorld& world, int u) override { world.assign_all(u, 0); }
  bool done(const CircuitWorld&) const override { return false; }
  int register_words() const override { return 1; }
};

}  // namespace

TEST_CASE("beep wave reaches every node") {
  auto s = hexagon(4);
  CircuitWorld world(structure_topology(s), 1, 7);
  BeepWave wave(world.size());
  SimulationTrace t = run_protocol(world, wave, 10);
  CHECK(t.total_rounds == 2);  // deliver, then record
  REQUIRE(t.phases.size() == 1);
  CHECK(t.phases[0].name == "beep_wave");
  CHECK(world.beeps_sent() == 1);
  for (int u = 0; u < world.size(); ++u) CHECK(wave.heard()[u]);
  CHECK(t.memory[0].words == 2);
  CHECK_FALSE(t.memory[0].flagged);
}

TEST_CASE("circuits follow partition sets and pins") {
  CircuitWorld world(chain_topology(5), 2, 1);
  for (int u = 0; u < 5; ++u) world.assign_all(u, 0);
  auto one = world.circuits_of();
  REQUIRE(one.size() == 1);
  CHECK(one[0].nodes == std::vector<int>{0, 1, 2, 3, 4});

  // Node 2 splits its two ports into separate sets: two circuits.
  world.clear(2);
  world.assign(2, 0, 0, 1);
  world.assign(2, 0, 1, 1);
  world.assign(2, 1, 0, 2);
  world.assign(2, 1, 1, 2);
  auto two = world.circuits_of();
  REQUIRE(two.size() == 2);
  CHECK(two[0].nodes == std::vector<int>{0, 1, 2});
  CHECK(two[1].nodes == std::vector<int>{2, 3, 4});

  world.beep(0, 0);
  world.round();
  CHECK(world.heard(1, 0));
  CHECK(world.heard(2, 1));
  CHECK_FALSE(world.heard(2, 2));
  CHECK_FALSE(world.heard(4, 0));
  // Beeps last for a single round.
  world.round();
  CHECK_FALSE(world.heard(1, 0));
  CHECK(world.rounds() == 2);
}

TEST_CASE("pins are joined index to index") {
  CircuitWorld world(chain_topology(2), 2, 1);
  world.assign(0, 1, 0, 0);
  world.assign(0, 1, 1, 1);
  world.assign(1, 0, 0, 1);
  world.assign(1, 0, 1, 0);
  world.beep(0, 1);
  world.round();
  CHECK(world.heard(1, 0));
  CHECK_FALSE(world.heard(1, 1));
}

TEST_CASE("faults") {
  CHECK_THROWS_AS(CircuitWorld(chain_topology(3), 0, 1), std::invalid_argument);
  CircuitWorld world(chain_topology(3), 1, 1);
  CHECK_THROWS_AS(world.assign(0, 1, 0, CircuitWorld::kMaxSets), SimulationFault);
  CHECK_THROWS_AS(world.assign(0, 2, 0, 0), SimulationFault);
  CHECK_THROWS_AS(world.assign(0, 1, 1, 0), SimulationFault);
  CHECK_THROWS_AS(world.beep(0, -1), SimulationFault);
  CHECK_FALSE(world.heard(0, 99));
  CHECK_THROWS_AS(graph_topology({{1}, {}}), std::invalid_argument);
}

TEST_CASE("round budget") {
  CircuitWorld world(ring_topology(6), 1, 3);
  Forever p;
  try {
    run_protocol(world, p, 5);
    FAIL("expected a timeout");
  } catch (const ProtocolTimeout& e) {
    CHECK(e.trace.timed_out);
    CHECK(e.trace.total_rounds == 5);
    CHECK(e.trace.phases[0].name == "forever");
  }
}

TEST_CASE("per-node randomness depends only on seed and identity") {
  auto s = hexagon(2);
  CircuitWorld a(structure_topology(s), 1, 42), b(structure_topology(s), 1, 42), c(structure_topology(s), 1, 43);
  bool differs_by_seed = false, differs_by_node = false;
  for (int u = 0; u < a.size(); ++u) {
    uint64_t x = a.rng(u)(), y = b.rng(u)(), z = c.rng(u)();
    CHECK(x == y);
    differs_by_seed = differs_by_seed || x != z;
    if (u > 0) differs_by_node = differs_by_node || x != CircuitWorld(structure_topology(s), 1, 42).rng(0)();
  }
  CHECK(differs_by_seed);
  CHECK(differs_by_node);
}

TEST_CASE("ring and region topologies") {
  Topology ring = ring_topology(4);
  CHECK(ring.neighbor(0, 0) == 3);
  CHECK(ring.neighbor(3, 1) == 0);
  CHECK(ring_topology(2).neighbor(0, 0) == -1);

  auto s = parallelogram(3, 1);
  Topology t = region_topology(whole_region(s));
  CHECK(t.size() == 3);
  // Middle node: E and W linked, nothing else.
  int mid = whole_region(s).find({1, 0});
  int linked = 0;
  for (int d = 0; d < 6; ++d) linked += t.neighbor(mid, d) >= 0;
  CHECK(linked == 2);
}

TEST_CASE("memory audit") {
  SimulationTrace t;
  t.audit("p", 3);
  t.audit("p", kMemoryAuditLimit + 1);
  t.audit("q", 1);
  REQUIRE(t.memory.size() == 2);
  CHECK(t.memory[0].words == kMemoryAuditLimit + 1);
  CHECK(t.memory[0].flagged);
  CHECK_FALSE(t.memory[1].flagged);
}
