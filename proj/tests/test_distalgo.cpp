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

#include "amoebot/distalgo.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/oracle.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

std::vector<size_t> phase_rounds(const SimulationTrace& t) {
  std::vector<size_t> out;
  for (const PhaseRounds& p : t.phases) out.push_back(p.rounds);
  return out;
}

}  // namespace

TEST_CASE("frozen round counts") {
  struct Expect {
    AmoebotStructure s;
    size_t total;
  };
  for (const Expect& e : {Expect{AmoebotStructure({{0, 0}}), 23}, Expect{hexagon(3), 153},
                          Expect{parallelogram(5, 3), 117}, Expect{annulus(2, 0), 830},
                          Expect{annulus(4, 1), 1188}, Expect{annulus(6, 2), 1447}}) {
    DistributedOutcome o = run_distributed(e.s, 1);
    CHECK(o.trace.total_rounds == e.total);
    CHECK(o.trace.phases.size() == 3);
  }
  DistributedOutcome a = run_distributed(annulus(2, 0), 1);
  CHECK(phase_rounds(a.trace) == std::vector<size_t>{500, 47, 283});
  CHECK(a.decomposition.holes == 1);
  CHECK(a.decomposition.simple_regions.size() == 4);
  CHECK(a.decomposition.gates.size() == 6);
  CHECK(a.decomposition.tunnels.size() == 4);
  CHECK(a.decomposition.regions.size() == 10);
  REQUIRE(a.decomposition.cases.size() == 2);
  for (const TunnelCaseData& c : a.decomposition.cases) CHECK_FALSE(c.has_m);
}

TEST_CASE("hole-free structures need no splitting") {
  DistributedOutcome o = run_distributed(hexagon(3), 4);
  REQUIRE(o.decomposition.regions.size() == 1);
  CHECK(o.decomposition.regions[0].size() == hexagon(3).size());
  CHECK(o.decomposition.gates.empty());
  CHECK(phase_rounds(o.trace)[1] == 1);
  CHECK(phase_rounds(o.trace)[2] == 1);
}

TEST_CASE("distributed and centralized decompositions coincide") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    auto s = generate_random(160 + 20 * static_cast<int>(seed), 1 + static_cast<int>(seed % 6), seed);
    Decomposition central = decompose(s);
    DistributedOutcome o = run_distributed(s, seed * 31 + 1);
    CHECK(same_regions(o.decomposition.regions, central.regions));
    CHECK(same_regions(o.decomposition.simple_regions, central.simple_regions));
    CHECK(same_regions(o.decomposition.tunnels, central.tunnels));
    CHECK(o.decomposition.gates.size() == central.gates.size());
    CHECK(o.decomposition.holes == central.holes);
    CHECK(verify_decomposition(s, o.decomposition).all_ok());
  }
}

TEST_CASE("runs are reproducible from the seed") {
  auto s = generate_random(300, 3, 8);
  DistributedOutcome x = run_distributed(s, 77), y = run_distributed(s, 77);
  CHECK(phase_rounds(x.trace) == phase_rounds(y.trace));
  CHECK(x.trace.notes == y.trace.notes);
  REQUIRE(x.knowledge.size() == y.knowledge.size());
  for (size_t i = 0; i < x.knowledge.size(); ++i) {
    CHECK(x.knowledge[i].region_id == y.knowledge[i].region_id);
    CHECK(x.knowledge[i].node == y.knowledge[i].node);
    CHECK(x.knowledge[i].dirs == y.knowledge[i].dirs);
  }
  // Another seed changes coin flips, not the outcome.
  DistributedOutcome z = run_distributed(s, 78);
  CHECK(same_regions(x.decomposition.regions, z.decomposition.regions));
}

TEST_CASE("regions are rebuilt from per-node knowledge") {
  Decomposition d = decompose(generate_random(250, 2, 5));
  auto k = knowledge_of(d.regions);
  size_t total = 0;
  for (const Region& r : d.regions) total += r.size();
  CHECK(k.size() == total);
  auto back = regions_from_knowledge(k);
  CHECK(same_regions(back, d.regions));
  back.pop_back();
  CHECK_FALSE(same_regions(back, d.regions));
}

TEST_CASE("round budget and estimate checks") {
  auto s = annulus(3, 1);
  DistOptions tiny;
  tiny.round_budget = 10;
  try {
    run_distributed(s, 1, tiny);
    FAIL("expected a timeout");
  } catch (const ProtocolTimeout& e) {
    CHECK(e.trace.timed_out);
    CHECK(e.trace.phases.size() == 1);
  }
  DistOptions low;
  low.n_hat = s.size() - 1;
  CHECK_THROWS_AS(run_distributed(s, 1, low), std::invalid_argument);
  CHECK(default_round_budget(1024) == 20000 * 11);
}

TEST_CASE("a larger estimate only costs rounds") {
  auto s = generate_random(200, 2, 3);
  DistOptions big;
  big.n_hat = 1 << 14;
  DistributedOutcome a = run_distributed(s, 5), b = run_distributed(s, 5, big);
  CHECK(same_regions(a.decomposition.regions, b.decomposition.regions));
  CHECK(b.trace.n_hat == (1u << 14));
  CHECK(b.trace.total_rounds > a.trace.total_rounds);
}

TEST_CASE("event log and memory audit") {
  DistOptions opts;
  opts.log_events = true;
  DistributedOutcome o = run_distributed(annulus(2, 0), 1, opts);
  CHECK_FALSE(o.trace.events.empty());
  CHECK(run_distributed(annulus(2, 0), 1).trace.events.empty());
  CHECK_FALSE(o.trace.memory.empty());
  for (const MemoryAudit& m : o.trace.memory) CHECK_FALSE(m.flagged);
}
