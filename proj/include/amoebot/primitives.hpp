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
#include <optional>
#include <vector>

#include "amoebot/circuits.hpp"
#include "amoebot/grid.hpp"

namespace amoebot {

struct PrimitiveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int ceil_log2(uint64_t x);  // 0 for x <= 1

// ---------------------------------------------------------------------------
// Leader election.

inline constexpr int kElectionFactor = 4;
// kElectionFactor * ceil(log2 n_hat) coin-toss iterations, at least one.
int election_iterations(uint64_t n_hat);

struct ElectionResult {
  std::vector<char> leader;  // per node
  int iterations = 0;
  size_t rounds = 0;
};

// Candidates beep and listen on partition set `set` under the world's current
// configuration; each circuit ends up with at least one leader.
ElectionResult leader_election(CircuitWorld& world, const std::vector<char>& candidate, int set,
                               int iterations);

// Candidate sets on one shared circuit each (a chain per set).
std::vector<ElectionResult> leader_election_sets(const std::vector<int>& set_sizes, uint64_t seed,
                                                 uint64_t n_hat);

// ---------------------------------------------------------------------------
// PASC on rooted forests embedded in a world.

// Rooted forest: parent_port[u] is the port towards u's parent, -1 at roots.
struct Forest {
  std::vector<int> parent_port;
  std::vector<std::vector<int>> child_ports;
};
Forest make_forest(const CircuitWorld& world, const std::vector<int>& parent_port);

// Iteration-by-iteration PASC. Node u's stream is the binary expansion of the
// number of active nodes on the path from its root to u (both included).
class PascEngine {
 public:
  PascEngine(CircuitWorld& world, const Forest& forest, std::vector<char> active);
  // Termination round: false once no tree has an active node left.
  bool any_active();
  // Streams the next bit of every node (one round).
  std::vector<char> next_bits();
  int iterations() const { return iterations_; }

 private:
  CircuitWorld& world_;
  const Forest& forest_;
  std::vector<char> active_, tree_live_;
  int iterations_ = 0;
};

struct PascResult {
  std::vector<std::vector<char>> bits;  // per node, LSB first
  std::vector<uint64_t> value;          // decoded streams
  uint64_t max_value = 0;               // m
  int iterations = 0;
  size_t rounds = 0;
};

PascResult pasc(CircuitWorld& world, const Forest& forest, const std::vector<char>& active,
                int max_iterations = -1);

// Distances from the roots of a forest given by parent pointers over an
// adjacency list (used for portal trees).
PascResult pasc_tree(const std::vector<std::vector<int>>& adj, const std::vector<int>& parent,
                     uint64_t seed);

// Signed prefix sums: value(u) = sum of weight(x) over the root..u path,
// weights in [-2, 2], streamed in `width`-bit two's complement.
struct SignedStreams {
  std::vector<std::vector<char>> bits;  // width bits per node
  std::vector<int64_t> value;
  size_t rounds = 0;
};
SignedStreams pasc_signed(CircuitWorld& world, const Forest& forest, const std::vector<int>& weight, int width,
                          int max_bits = -1);

// ---------------------------------------------------------------------------
// Rooting and pruning of trees given as adjacency lists.

struct RootPruneResult {
  std::vector<int> parent;    // -1 at the root
  std::vector<char> survives;
  size_t rounds = 0;
};

// Throws std::invalid_argument if root is not in Q.
RootPruneResult root_and_prune(const std::vector<std::vector<int>>& adj, const std::vector<char>& in_q, int root,
                               uint64_t seed);

// ---------------------------------------------------------------------------
// Constant-round region primitives. `world` is a region world (ports are
// directions); chains are given as node ids in axis order.

struct Answer {
  bool value = false;
  size_t rounds = 0;
};
// Does some node of the world's circuit component carry a mark?
Answer region_has(CircuitWorld& world, const std::vector<char>& mark);

struct Closest {
  std::optional<int> node;
  size_t rounds = 0;
};
// The node of `s` closest to chain.front() along the chain.
Closest closest_on_portal(CircuitWorld& world, const std::vector<int>& chain, const std::vector<char>& s);

// Whether chain P has at least `threshold` distinct adjacent q-portals among
// nodes flagged `eligible`. Portals are found from the world's axis links.
Answer degree_check(CircuitWorld& world, Axis q, const std::vector<int>& chain, const std::vector<char>& eligible,
                    int threshold);

// ---------------------------------------------------------------------------
// Global maxima.

struct MaximaResult {
  std::vector<char> flags;
  std::vector<int64_t> value;      // prefix values (from the full first pass)
  size_t rounds = 0;
  std::vector<int> block_lengths;  // boundary version only
  int block_length = 0;            // nominal block length L
  bool election_failed = false;
};

// Per tree of the forest: candidates whose prefix value (weights as in
// pasc_signed) is maximal. Distances are recomputed for every bit.
MaximaResult global_maxima_general(CircuitWorld& world, const Forest& forest, const std::vector<int>& weight,
                                   const std::vector<char>& candidate, int width);

// Nominal block length: the power of two at least the value width for n_hat.
int block_length(uint64_t n_hat);
int value_width(uint64_t n_hat);

// Positions of one boundary cycle (consecutive positions are grid neighbors,
// or the same node for a one-position cycle). Returns per-position flags of
// the candidates maximizing heading h.
MaximaResult global_maxima_boundary(const std::vector<GridPoint>& cycle, const std::vector<char>& candidate,
                                    Heading h, uint64_t n_hat, uint64_t seed);

// Inner/outer classification of every boundary cycle: the WNW-most positions
// of a cycle look for the hole on their W or NNW side, which only the outer
// boundary sees. Cycles run in parallel.
struct BoundaryTestResult {
  std::vector<char> inner;  // per cycle
  size_t rounds = 0;
  bool election_failed = false;
};
BoundaryTestResult boundary_test(const std::vector<BoundaryCycle>& cycles, uint64_t n_hat, uint64_t seed);

}  // namespace amoebot
