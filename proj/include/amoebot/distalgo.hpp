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

#include <cstdint>
#include <string>
#include <vector>

#include "amoebot/circuits.hpp"
#include "amoebot/decompose.hpp"

namespace amoebot {

// Distributed pipeline. Every decision (split nodes, cut portals, gate
// choices) is read off the outcome of a simulated primitive; the cuts are then
// enacted with split_region, which plays the role of the amoebots flipping
// their retained-edge flags. Regions work in parallel, so a phase costs the
// maximum over its regions.

struct DistOptions {
  uint64_t n_hat = 0;          // 0: use n
  size_t round_budget = 0;     // 0: default_round_budget(n_hat)
  bool log_events = false;
};

// Generous cap that still catches runaway protocols.
size_t default_round_budget(uint64_t n_hat);

// What amoebot u knows about region `region_id`: its retained neighbors.
struct NodeKnowledge {
  std::string region_id;
  GridPoint node;
  uint8_t dirs = 0;
};

struct DistributedOutcome {
  Decomposition decomposition;
  SimulationTrace trace;
  std::vector<NodeKnowledge> knowledge;  // final regions
};

Phase1Result dist_phase1(const AmoebotStructure& s, uint64_t n_hat, uint64_t seed, SimulationTrace& trace);
std::vector<Region> dist_phase2(const std::vector<Region>& simple, uint64_t n_hat, uint64_t seed,
                                SimulationTrace& trace);
std::pair<std::vector<Region>, std::vector<TunnelCaseData>> dist_phase3(const std::vector<Region>& tunnels,
                                                                        uint64_t n_hat, uint64_t seed,
                                                                        SimulationTrace& trace);

// Throws ProtocolTimeout (carrying the trace) past the round budget and
// PrimitiveFailure when a randomized primitive misbehaves.
DistributedOutcome run_distributed(const AmoebotStructure& s, uint64_t seed, const DistOptions& opts = {});

std::vector<NodeKnowledge> knowledge_of(const std::vector<Region>& regions);
// Harness-side reassembly of the per-amoebot flags into regions.
std::vector<Region> regions_from_knowledge(const std::vector<NodeKnowledge>& knowledge);

// Multiset equality of (node set, retained edge set).
bool same_regions(const std::vector<Region>& x, const std::vector<Region>& y);

}  // namespace amoebot
