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
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amoebot/region.hpp"

namespace amoebot {

// Undirected port graph. ports[u][p] = {v, q}: port p of u is linked to port q
// of v, or {-1, -1} for an unused port.
struct Topology {
  std::vector<std::vector<std::pair<int, int>>> ports;
  std::vector<uint64_t> keys;  // per-node identity for seeding (e.g. packed coordinates)

  int size() const { return static_cast<int>(ports.size()); }
  int neighbor(int u, int p) const { return ports[u][p].first; }
};

uint64_t point_key(GridPoint p);

// Six ports per node, one per direction, linked along the region's retained
// edges.
Topology region_topology(const Region& r);
Topology structure_topology(const AmoebotStructure& s);
// Port 0 towards i-1, port 1 towards i+1.
Topology chain_topology(int n);
// Chain with an extra link between the last and first node (for n >= 3).
Topology ring_topology(int n);
// Ports in adjacency-list order.
Topology graph_topology(const std::vector<std::vector<int>>& adj);

struct SimulationFault : std::logic_error {
  using std::logic_error::logic_error;
};

struct Circuit {
  std::vector<std::pair<int, int>> sets;  // (node, partition set), sorted
  std::vector<int> nodes;                 // sorted, unique
};

// Synchronous reconfigurable-circuit world. Every link carries `c` pins; pin i
// on one side is joined to pin i on the other. A node groups its pins into
// partition sets 0..kMaxSets-1; unassigned pins are singletons that nobody
// listens on.
class CircuitWorld {
 public:
  static constexpr int kMaxSets = 16;

  CircuitWorld(Topology topology, int pins_per_link, uint64_t seed);

  int size() const { return topology_.size(); }
  int pins() const { return c_; }
  const Topology& topology() const { return topology_; }
  int ports(int u) const { return static_cast<int>(topology_.ports[u].size()); }
  int neighbor(int u, int port) const { return topology_.neighbor(u, port); }

  // Pin configuration for the next round.
  void clear(int u);
  void clear_all();
  void assign(int u, int port, int pin, int set);
  // All pins of all linked ports of u into `set`.
  void assign_all(int u, int set);
  int set_of(int u, int port, int pin) const;

  void beep(int u, int set);
  // Builds circuits on the current configuration and delivers this round's
  // beeps. Afterwards heard() reports them until the next round.
  void round();
  bool heard(int u, int set) const;

  std::vector<Circuit> circuits_of() const;

  std::mt19937_64& rng(int u) { return rngs_[u]; }
  size_t rounds() const { return rounds_; }
  size_t beeps_sent() const { return beeps_; }

  // Optional per-round log ("round r: k beeps on m circuits").
  void set_logging(bool on) { logging_ = on; }
  const std::vector<std::string>& log() const { return log_; }

 private:
  int pin_index(int u, int port, int pin) const { return offset_[u] + port * c_ + pin; }
  int find(int x) const;

  Topology topology_;
  int c_;
  std::vector<int> offset_;        // first pin index per node
  std::vector<int8_t> pin_set_;    // partition set per pin, -1 unassigned
  std::vector<char> beeping_;      // node * kMaxSets + set
  std::vector<char> heard_;
  std::vector<std::mt19937_64> rngs_;
  mutable std::vector<int> parent_;
  size_t rounds_ = 0, beeps_ = 0;
  bool logging_ = false;
  std::vector<std::string> log_;
};

// Protocol driven by run_protocol. activate() may only read the world's
// heard() flags of the previous round and its own registers; it sets the
// node's pin configuration and beeps for the coming round.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string name() const = 0;
  virtual void activate(CircuitWorld& world, int u) = 0;
  virtual bool done(const CircuitWorld& world) const = 0;
  // Declared register words per node, for the memory audit.
  virtual int register_words() const { return 0; }
};

struct MemoryAudit {
  std::string protocol;
  int words = 0;
  bool flagged = false;  // more than kMemoryAuditLimit words
};
inline constexpr int kMemoryAuditLimit = 16;

struct PhaseRounds {
  std::string name;
  size_t rounds = 0;
};

struct SimulationTrace {
  uint64_t seed = 0;
  uint64_t n_hat = 0;
  size_t total_rounds = 0;
  std::vector<PhaseRounds> phases;
  std::vector<MemoryAudit> memory;
  bool log_events = false;
  std::vector<std::string> events;  // filled only when log_events is on
  std::vector<std::string> notes;
  bool timed_out = false;

  void add_phase(const std::string& name, size_t rounds);
  void audit(const std::string& protocol, int words);
};

struct ProtocolTimeout : std::runtime_error {
  SimulationTrace trace;
  ProtocolTimeout(const std::string& what, SimulationTrace t) : std::runtime_error(what), trace(std::move(t)) {}
};

// One round: every node activates (in index order; activations only see the
// previous round), then circuits are rebuilt and beeps delivered.
void step(CircuitWorld& world, Protocol& protocol);

// Steps until protocol.done(); throws ProtocolTimeout past `budget` rounds.
SimulationTrace run_protocol(CircuitWorld& world, Protocol& protocol, size_t budget);

// Global beep wave: one circuit over all links, node 0 beeps, everyone hears.
class BeepWave : public Protocol {
 public:
  explicit BeepWave(int n) : heard_(n, 0) {}
  std::string name() const override { return "beep_wave"; }
  void activate(CircuitWorld& world, int u) override;
  bool done(const CircuitWorld& world) const override;
  int register_words() const override { return 2; }
  const std::vector<char>& heard() const { return heard_; }

 private:
  std::vector<char> heard_;
  bool started_ = false;
};

}  // namespace amoebot
