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

#include "amoebot/circuits.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace amoebot {

uint64_t point_key(GridPoint p) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(p.a)) << 32) | static_cast<uint32_t>(p.b);
}

Topology region_topology(const Region& r) {
  Topology t;
  t.ports.assign(r.size(), std::vector<std::pair<int, int>>(6, {-1, -1}));
  for (size_t i = 0; i < r.size(); ++i) {
    t.keys.push_back(point_key(r.nodes[i]));
    for (int d = 0; d < 6; ++d)
      if ((r.dirs[i] >> d) & 1) t.ports[i][d] = {r.find(step(r.nodes[i], direction(d))), (d + 3) % 6};
  }
  return t;
}

Topology structure_topology(const AmoebotStructure& s) {
  Topology t;
  t.ports.assign(s.size(), std::vector<std::pair<int, int>>(6, {-1, -1}));
  for (size_t i = 0; i < s.size(); ++i) {
    t.keys.push_back(point_key(s.nodes()[i]));
    const auto& nb = s.neighbor_indices(static_cast<int>(i));
    for (int d = 0; d < 6; ++d)
      if (nb[d] >= 0) t.ports[i][d] = {nb[d], (d + 3) % 6};
  }
  return t;
}

Topology chain_topology(int n) {
  Topology t;
  t.ports.assign(n, std::vector<std::pair<int, int>>(2, {-1, -1}));
  for (int i = 0; i < n; ++i) {
    t.keys.push_back(static_cast<uint64_t>(i));
    if (i > 0) t.ports[i][0] = {i - 1, 1};
    if (i + 1 < n) t.ports[i][1] = {i + 1, 0};
  }
  return t;
}

Topology ring_topology(int n) {
  Topology t = chain_topology(n);
  if (n >= 3) {
    t.ports[0][0] = {n - 1, 1};
    t.ports[n - 1][1] = {0, 0};
  }
  return t;
}

Topology graph_topology(const std::vector<std::vector<int>>& adj) {
  Topology t;
  const int n = static_cast<int>(adj.size());
  t.ports.resize(n);
  for (int u = 0; u < n; ++u) {
    t.keys.push_back(static_cast<uint64_t>(u));
    for (int v : adj[u]) {
      auto it = std::find(adj[v].begin(), adj[v].end(), u);
      if (it == adj[v].end()) throw std::invalid_argument("adjacency is not symmetric");
      t.ports[u].push_back({v, static_cast<int>(it - adj[v].begin())});
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

CircuitWorld::CircuitWorld(Topology topology, int pins_per_link, uint64_t seed)
    : topology_(std::move(topology)), c_(pins_per_link) {
  if (c_ < 1) throw std::invalid_argument("need at least one pin per link");
  const int n = size();
  offset_.resize(n + 1, 0);
  for (int u = 0; u < n; ++u) offset_[u + 1] = offset_[u] + ports(u) * c_;
  pin_set_.assign(offset_[n], -1);
  beeping_.assign(static_cast<size_t>(n) * kMaxSets, 0);
  heard_.assign(static_cast<size_t>(n) * kMaxSets, 0);
  if (topology_.keys.size() != static_cast<size_t>(n)) {
    topology_.keys.resize(n);
    std::iota(topology_.keys.begin(), topology_.keys.end(), 0);
  }
  rngs_.reserve(n);
  for (int u = 0; u < n; ++u) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(topology_.keys[u]), static_cast<uint32_t>(topology_.keys[u] >> 32)};
    rngs_.emplace_back(seq);
  }
}

void CircuitWorld::clear(int u) {
  std::fill(pin_set_.begin() + offset_[u], pin_set_.begin() + offset_[u + 1], -1);
}

void CircuitWorld::clear_all() { std::fill(pin_set_.begin(), pin_set_.end(), -1); }

void CircuitWorld::assign(int u, int port, int pin, int set) {
  if (set < -1 || set >= kMaxSets) throw SimulationFault("partition set out of range");
  if (port < 0 || port >= ports(u) || pin < 0 || pin >= c_) throw SimulationFault("pin out of range");
  pin_set_[pin_index(u, port, pin)] = static_cast<int8_t>(set);
}

void CircuitWorld::assign_all(int u, int set) {
  for (int p = 0; p < ports(u); ++p)
    if (neighbor(u, p) >= 0)
      for (int i = 0; i < c_; ++i) assign(u, p, i, set);
}

int CircuitWorld::set_of(int u, int port, int pin) const { return pin_set_[pin_index(u, port, pin)]; }

void CircuitWorld::beep(int u, int set) {
  if (set < 0 || set >= kMaxSets) throw SimulationFault("beep on invalid partition set");
  beeping_[static_cast<size_t>(u) * kMaxSets + set] = 1;
}

int CircuitWorld::find(int x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void CircuitWorld::round() {
  const int n = size();
  const size_t total = static_cast<size_t>(n) * kMaxSets;
  parent_.resize(total);
  std::iota(parent_.begin(), parent_.end(), 0);
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < ports(u); ++p) {
      auto [v, q] = topology_.ports[u][p];
      if (v < u) continue;  // each link once (v == -1 included)
      for (int i = 0; i < c_; ++i) {
        int su = pin_set_[pin_index(u, p, i)], sv = pin_set_[pin_index(v, q, i)];
        if (su < 0 || sv < 0) continue;
        int x = find(u * kMaxSets + su), y = find(v * kMaxSets + sv);
        if (x != y) parent_[x] = y;
      }
    }
  std::vector<char> live(total, 0);
  size_t count = 0;
  for (size_t k = 0; k < total; ++k)
    if (beeping_[k]) {
      live[find(static_cast<int>(k))] = 1;
      ++count;
    }
  for (size_t k = 0; k < total; ++k) heard_[k] = live[find(static_cast<int>(k))];
  std::fill(beeping_.begin(), beeping_.end(), 0);
  beeps_ += count;
  ++rounds_;
  if (logging_) log_.push_back("round " + std::to_string(rounds_) + ": " + std::to_string(count) + " beeps");
}

bool CircuitWorld::heard(int u, int set) const {
  return set >= 0 && set < kMaxSets && heard_[static_cast<size_t>(u) * kMaxSets + set];
}

std::vector<Circuit> CircuitWorld::circuits_of() const {
  const int n = size();
  parent_.resize(static_cast<size_t>(n) * kMaxSets);
  std::iota(parent_.begin(), parent_.end(), 0);
  std::vector<char> used(parent_.size(), 0);
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < ports(u); ++p)
      for (int i = 0; i < c_; ++i) {
        int su = pin_set_[pin_index(u, p, i)];
        if (su < 0) continue;
        used[u * kMaxSets + su] = 1;
        auto [v, q] = topology_.ports[u][p];
        if (v < 0) continue;
        int sv = pin_set_[pin_index(v, q, i)];
        if (sv < 0) continue;
        int x = find(u * kMaxSets + su), y = find(v * kMaxSets + sv);
        if (x != y) parent_[x] = y;
      }
  std::map<int, Circuit> by_root;
  for (size_t k = 0; k < used.size(); ++k)
    if (used[k]) {
      Circuit& c = by_root[find(static_cast<int>(k))];
      int u = static_cast<int>(k) / kMaxSets;
      c.sets.push_back({u, static_cast<int>(k) % kMaxSets});
      if (c.nodes.empty() || c.nodes.back() != u) c.nodes.push_back(u);
    }
  std::vector<Circuit> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Circuit& x, const Circuit& y) { return x.sets < y.sets; });
  return out;
}

// ---------------------------------------------------------------------------

void SimulationTrace::add_phase(const std::string& name, size_t rounds) {
  phases.push_back({name, rounds});
  total_rounds += rounds;
}

void SimulationTrace::audit(const std::string& protocol, int words) {
  for (MemoryAudit& m : memory)
    if (m.protocol == protocol) {
      m.words = std::max(m.words, words);
      m.flagged = m.words > kMemoryAuditLimit;
      return;
    }
  memory.push_back({protocol, words, words > kMemoryAuditLimit});
}

void step(CircuitWorld& world, Protocol& protocol) {
  for (int u = 0; u < world.size(); ++u) protocol.activate(world, u);
  world.round();
}

SimulationTrace run_protocol(CircuitWorld& world, Protocol& protocol, size_t budget) {
  SimulationTrace trace;
  const size_t start = world.rounds();
  trace.audit(protocol.name(), protocol.register_words());
  while (!protocol.done(world)) {
    if (world.rounds() - start >= budget) {
      trace.timed_out = true;
      trace.add_phase(protocol.name(), world.rounds() - start);
      throw ProtocolTimeout(protocol.name() + " exceeded its round budget", trace);
    }
    step(world, protocol);
  }
  trace.add_phase(protocol.name(), world.rounds() - start);
  return trace;
}

void BeepWave::activate(CircuitWorld& world, int u) {
  if (world.rounds() > 0) heard_[u] = world.heard(u, 0);
  world.clear(u);
  world.assign_all(u, 0);
  if (u == 0 && !started_) {
    world.beep(u, 0);
    started_ = true;
  }
}

bool BeepWave::done(const CircuitWorld& world) const {
  // Nodes record the beep in their next activation, so this takes a second
  // round in which nothing is sent.
  if (world.size() == 0) return true;
  for (char h : heard_)
    if (!h) return false;
  return true;
}

}  // namespace amoebot
