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

#include "amoebot/primitives.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>

namespace amoebot {

int ceil_log2(uint64_t x) {
  int k = 0;
  while ((uint64_t{1} << k) < x) ++k;
  return k;
}

int election_iterations(uint64_t n_hat) { return std::max(1, kElectionFactor * ceil_log2(n_hat)); }

ElectionResult leader_election(CircuitWorld& world, const std::vector<char>& candidate, int set, int iterations) {
  ElectionResult res;
  res.leader = candidate;
  const size_t start = world.rounds();
  for (int it = 0; it < iterations; ++it) {
    std::vector<char> heads(world.size(), 0);
    for (int u = 0; u < world.size(); ++u)
      if (res.leader[u] && (world.rng(u)() & 1)) {
        heads[u] = 1;
        world.beep(u, set);
      }
    world.round();
    for (int u = 0; u < world.size(); ++u)
      if (res.leader[u] && !heads[u] && world.heard(u, set)) res.leader[u] = 0;
  }
  res.iterations = iterations;
  res.rounds = world.rounds() - start;
  return res;
}

std::vector<ElectionResult> leader_election_sets(const std::vector<int>& set_sizes, uint64_t seed,
                                                 uint64_t n_hat) {
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> range;
  for (int k : set_sizes) {
    int base = static_cast<int>(adj.size());
    range.push_back({base, k});
    for (int i = 0; i < k; ++i) {
      adj.emplace_back();
      if (i > 0) adj[base + i].push_back(base + i - 1);
      if (i + 1 < k) adj[base + i].push_back(base + i + 1);
    }
  }
  CircuitWorld world(graph_topology(adj), 1, seed);
  for (int u = 0; u < world.size(); ++u) world.assign_all(u, 0);
  std::vector<char> cand(world.size(), 1);
  ElectionResult all = leader_election(world, cand, 0, election_iterations(n_hat));
  std::vector<ElectionResult> out;
  for (auto [base, k] : range) {
    ElectionResult r;
    r.leader.assign(all.leader.begin() + base, all.leader.begin() + base + k);
    r.iterations = all.iterations;
    r.rounds = all.rounds;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

Forest make_forest(const CircuitWorld& world, const std::vector<int>& parent_port) {
  Forest f;
  f.parent_port = parent_port;
  f.child_ports.resize(world.size());
  for (int u = 0; u < world.size(); ++u) {
    int p = parent_port[u];
    if (p < 0) continue;
    auto [v, q] = world.topology().ports[u][p];
    if (v < 0) throw SimulationFault("parent port without a link");
    f.child_ports[v].push_back(q);
  }
  for (auto& c : f.child_ports) std::sort(c.begin(), c.end());
  return f;
}

PascEngine::PascEngine(CircuitWorld& world, const Forest& forest, std::vector<char> active)
    : world_(world), forest_(forest), active_(std::move(active)), tree_live_(world.size(), 1) {
  if (world.pins() < 2) throw SimulationFault("PASC needs two pins per link");
}

bool PascEngine::any_active() {
  world_.clear_all();
  for (int u = 0; u < world_.size(); ++u) {
    if (!tree_live_[u]) continue;
    if (forest_.parent_port[u] >= 0) world_.assign(u, forest_.parent_port[u], 0, 0);
    for (int p : forest_.child_ports[u]) world_.assign(u, p, 0, 0);
    if (active_[u]) world_.beep(u, 0);
  }
  world_.round();
  bool any = false;
  for (int u = 0; u < world_.size(); ++u) {
    if (tree_live_[u] && !world_.heard(u, 0)) tree_live_[u] = 0;
    any = any || tree_live_[u];
  }
  return any;
}

std::vector<char> PascEngine::next_bits() {
  world_.clear_all();
  for (int u = 0; u < world_.size(); ++u) {
    if (!tree_live_[u]) continue;
    const int pp = forest_.parent_port[u];
    const int swap = active_[u] ? 1 : 0;
    if (pp >= 0) {
      world_.assign(u, pp, 0, 0);
      world_.assign(u, pp, 1, 1);
    }
    for (int p : forest_.child_ports[u]) {
      world_.assign(u, p, 0, pp >= 0 ? swap : 0);
      world_.assign(u, p, 1, pp >= 0 ? 1 - swap : 1);
    }
    // The root sends on the lane of its own parity.
    if (pp < 0) world_.beep(u, active_[u] ? 1 : 0);
  }
  world_.round();
  std::vector<char> bits(world_.size(), 0);
  for (int u = 0; u < world_.size(); ++u) {
    if (!tree_live_[u]) continue;
    int lane;
    if (forest_.parent_port[u] < 0) {
      lane = 0;  // own parity is the whole count
    } else if (world_.heard(u, 0)) {
      lane = 0;
    } else if (world_.heard(u, 1)) {
      lane = 1;
    } else {
      throw SimulationFault("PASC node heard no lane");
    }
    bits[u] = static_cast<char>(lane ^ (active_[u] ? 1 : 0));
    if (active_[u] && bits[u]) active_[u] = 0;
  }
  ++iterations_;
  return bits;
}

PascResult pasc(CircuitWorld& world, const Forest& forest, const std::vector<char>& active, int max_iterations) {
  PascResult res;
  const size_t start = world.rounds();
  PascEngine engine(world, forest, active);
  res.bits.resize(world.size());
  while ((max_iterations < 0 || engine.iterations() < max_iterations) && engine.any_active()) {
    auto b = engine.next_bits();
    for (int u = 0; u < world.size(); ++u) res.bits[u].push_back(b[u]);
  }
  res.iterations = engine.iterations();
  res.value.assign(world.size(), 0);
  for (int u = 0; u < world.size(); ++u) {
    for (size_t k = 0; k < res.bits[u].size(); ++k)
      if (res.bits[u][k]) res.value[u] |= uint64_t{1} << k;
    res.max_value = std::max(res.max_value, res.value[u]);
  }
  res.rounds = world.rounds() - start;
  return res;
}

PascResult pasc_tree(const std::vector<std::vector<int>>& adj, const std::vector<int>& parent, uint64_t seed) {
  CircuitWorld world(graph_topology(adj), 2, seed);
  std::vector<int> pp(adj.size(), -1);
  std::vector<char> active(adj.size(), 0);
  for (size_t u = 0; u < adj.size(); ++u) {
    if (parent[u] < 0) continue;
    auto it = std::find(adj[u].begin(), adj[u].end(), parent[u]);
    if (it == adj[u].end()) throw std::invalid_argument("parent is not a neighbor");
    pp[u] = static_cast<int>(it - adj[u].begin());
    active[u] = 1;
  }
  Forest f = make_forest(world, pp);
  return pasc(world, f, active);
}

SignedStreams pasc_signed(CircuitWorld& world, const Forest& forest, const std::vector<int>& weight, int width,
                          int max_bits) {
  const int n = world.size();
  const int limit = max_bits < 0 ? width : std::min(width, max_bits);
  SignedStreams res;
  const size_t start = world.rounds();
  // Unit streams: +1, +2, -1, -2.
  std::array<std::vector<char>, 4> act;
  for (auto& a : act) a.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    int w = weight[u];
    if (w < -2 || w > 2) throw std::invalid_argument("weight out of range");
    int pos = std::max(w, 0), neg = std::max(-w, 0);
    act[0][u] = pos & 1;
    act[1][u] = (pos >> 1) & 1;
    act[2][u] = neg & 1;
    act[3][u] = (neg >> 1) & 1;
  }
  std::vector<std::unique_ptr<PascEngine>> engines;
  for (auto& a : act) engines.push_back(std::make_unique<PascEngine>(world, forest, a));
  std::array<bool, 4> live = {true, true, true, true};
  std::array<std::vector<char>, 4> cur, prev;
  for (int s = 0; s < 4; ++s) prev[s].assign(n, 0);
  std::vector<int> carry(n, 0);
  res.bits.assign(n, {});
  for (int k = 0; k < limit; ++k) {
    for (int s = 0; s < 4; ++s) {
      // The doubled streams lag one bit behind.
      if (live[s] && (s % 2 == 0 || k >= 1)) live[s] = engines[s]->any_active();
      cur[s] = (live[s] && (s % 2 == 0 || k >= 1)) ? engines[s]->next_bits() : std::vector<char>(n, 0);
    }
    for (int u = 0; u < n; ++u) {
      int sum = cur[0][u] + cur[1][u] - cur[2][u] - cur[3][u] + carry[u];
      int bit = ((sum % 2) + 2) % 2;
      carry[u] = (sum - bit) / 2;
      res.bits[u].push_back(static_cast<char>(bit));
    }
  }
  res.value.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    int64_t v = 0;
    for (int k = 0; k < limit; ++k)
      if (res.bits[u][k]) v |= int64_t{1} << k;
    if (limit == width && width < 63 && res.bits[u][width - 1]) v -= int64_t{1} << width;
    res.value[u] = v;
  }
  res.rounds = world.rounds() - start;
  return res;
}

// ---------------------------------------------------------------------------

RootPruneResult root_and_prune(const std::vector<std::vector<int>>& adj, const std::vector<char>& in_q, int root,
                               uint64_t seed) {
  const int n = static_cast<int>(adj.size());
  if (root < 0 || root >= n || !in_q[root]) throw std::invalid_argument("root must be in Q");
  RootPruneResult res;
  res.parent.assign(n, -1);
  res.survives.assign(n, 0);
  res.survives[root] = 1;
  if (adj[root].empty()) return res;

  // Euler tour over directed edges; position (u -> v) is owned by u.
  std::vector<std::pair<int, int>> tour;
  std::map<std::pair<int, int>, int> pos;
  auto slot = [&](int v, int u) {
    return static_cast<int>(std::find(adj[v].begin(), adj[v].end(), u) - adj[v].begin());
  };
  int u = root, v = adj[root][0];
  do {
    pos[{u, v}] = static_cast<int>(tour.size());
    tour.push_back({u, v});
    int nv = adj[v][(slot(v, u) + 1) % adj[v].size()];
    u = v;
    v = nv;
  } while (!(u == root && v == adj[root][0]));
  const int m = static_cast<int>(tour.size());
  if (m != 2 * (n - 1)) throw std::invalid_argument("adjacency is not a tree");

  Topology topo = chain_topology(m);
  for (int i = 0; i < m; ++i) topo.keys[i] = (static_cast<uint64_t>(tour[i].first) << 32) | tour[i].second;
  CircuitWorld world(topo, 2, seed);
  std::vector<int> pp(m, 0);
  pp[0] = -1;
  Forest chain = make_forest(world, pp);

  // Rooting: tour indices, compared across each tree edge one bit per round.
  std::vector<char> all(m, 1);
  all[0] = 0;
  PascResult idx = pasc(world, chain, all);
  size_t rounds = idx.rounds + static_cast<size_t>(idx.iterations);
  for (int x = 0; x < n; ++x)
    for (int y : adj[x])
      if (idx.value[pos[{y, x}]] < idx.value[pos[{x, y}]]) res.parent[x] = y;
  res.parent[root] = -1;

  // Pruning: Q marks on each node's first own position after its entry.
  std::vector<char> mark(m, 0);
  std::vector<int> first(n, -1), exit(n, -1);
  for (int x = 0; x < n; ++x) {
    if (x == root) continue;
    int p = res.parent[x];
    first[x] = pos[{x, adj[x][(slot(x, p) + 1) % adj[x].size()]}];
    exit[x] = pos[{x, p}];
    if (in_q[x]) mark[first[x]] = 1;
  }
  PascResult count = pasc(world, chain, mark);
  rounds += count.rounds;
  for (int x = 0; x < n; ++x)
    if (x != root) res.survives[x] = in_q[x] || count.value[exit[x]] > count.value[first[x]];
  res.rounds = rounds;
  return res;
}


// ---------------------------------------------------------------------------

Answer region_has(CircuitWorld& world, const std::vector<char>& mark) {
  const size_t start = world.rounds();
  world.clear_all();
  for (int u = 0; u < world.size(); ++u) {
    world.assign_all(u, 0);
    if (mark[u]) world.beep(u, 0);
  }
  world.round();
  return {world.size() > 0 && world.heard(0, 0), world.rounds() - start};
}

namespace {

int port_to(const CircuitWorld& world, int u, int v) {
  for (int p = 0; p < world.ports(u); ++p)
    if (world.neighbor(u, p) == v) return p;
  throw SimulationFault("chain nodes are not linked");
}

}  // namespace

Closest closest_on_portal(CircuitWorld& world, const std::vector<int>& chain, const std::vector<char>& s) {
  Closest res;
  const size_t start = world.rounds();
  world.clear_all();
  const int k = static_cast<int>(chain.size());
  for (int i = 0; i < k; ++i) {
    int u = chain[i];
    int back = i > 0 ? port_to(world, u, chain[i - 1]) : -1;
    int fwd = i + 1 < k ? port_to(world, u, chain[i + 1]) : -1;
    if (back >= 0) world.assign(u, back, 0, 0);
    if (fwd >= 0) world.assign(u, fwd, 0, (s[u] && i > 0) ? 1 : 0);
  }
  // The endpoint sends towards the chain; the first marked node swallows it.
  world.beep(chain[0], 0);
  world.round();
  if (s[chain[0]]) {
    res.node = chain[0];
  } else {
    for (int i = 1; i < k; ++i)
      if (s[chain[i]] && world.heard(chain[i], 0)) {
        res.node = chain[i];
        break;
      }
  }
  res.rounds = world.rounds() - start;
  return res;
}

Answer degree_check(CircuitWorld& world, Axis q, const std::vector<int>& chain, const std::vector<char>& eligible,
                    int threshold) {
  const size_t start = world.rounds();
  const int n = world.size();
  std::vector<char> on_p(n, 0);
  for (int u : chain) on_p[u] = 1;
  const int fwd = index(axis_direction(q)), back = index(opposite(axis_direction(q)));
  auto cross = [&](int p) { return axis_of(direction(p)) != q; };

  // Round 1: P announces itself on every cross link.
  world.clear_all();
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < world.ports(u); ++p)
      if (cross(p) && world.neighbor(u, p) >= 0) world.assign(u, p, 0, p);
  for (int u : chain)
    for (int p = 0; p < 6; ++p)
      if (cross(p) && world.neighbor(u, p) >= 0) world.beep(u, p);
  world.round();
  std::vector<char> contact(n, 0);
  for (int u = 0; u < n; ++u) {
    if (on_p[u] || !eligible[u]) continue;
    for (int p = 0; p < 6; ++p)
      if (cross(p) && world.neighbor(u, p) >= 0 && on_p[world.neighbor(u, p)] && world.heard(u, p)) contact[u] = 1;
  }

  // Round 2: each neighboring portal keeps its contact closest to its
  // positive end.
  world.clear_all();
  for (int u = 0; u < n; ++u) {
    if (on_p[u]) continue;
    bool has_f = world.neighbor(u, fwd) >= 0 && !on_p[world.neighbor(u, fwd)];
    bool has_b = world.neighbor(u, back) >= 0 && !on_p[world.neighbor(u, back)];
    if (has_f) world.assign(u, fwd, 0, 0);
    if (has_b) world.assign(u, back, 0, contact[u] ? 1 : 0);
    if (!has_f && !contact[u]) world.beep(u, 0);
  }
  world.round();
  std::vector<char> rep(n, 0);
  for (int u = 0; u < n; ++u) {
    if (!contact[u]) continue;
    bool has_f = world.neighbor(u, fwd) >= 0 && !on_p[world.neighbor(u, fwd)];
    rep[u] = !has_f || world.heard(u, 0);
  }

  // Round 3: every representative reports to its first neighbor on P.
  world.clear_all();
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < 6; ++p)
      if (cross(p) && world.neighbor(u, p) >= 0) world.assign(u, p, 0, p);
  for (int u = 0; u < n; ++u) {
    if (!rep[u]) continue;
    for (int p = 0; p < 6; ++p)
      if (cross(p) && world.neighbor(u, p) >= 0 && on_p[world.neighbor(u, p)]) {
        world.beep(u, p);
        break;
      }
  }
  world.round();
  std::vector<int> count(n, 0);
  for (int u : chain)
    for (int p = 0; p < 6; ++p)
      if (cross(p) && world.neighbor(u, p) >= 0 && world.heard(u, p)) ++count[u];

  // Count representatives one at a time, up to the threshold.
  int found = 0;
  while (found < threshold) {
    std::vector<char> s(n, 0);
    for (int u : chain) s[u] = count[u] > 0;
    Closest c = closest_on_portal(world, chain, s);
    if (!c.node) break;
    --count[*c.node];
    world.clear_all();
    for (int u : chain) world.assign_all(u, 0);
    world.beep(*c.node, 0);
    world.round();
    ++found;
  }
  return {found >= threshold, world.rounds() - start};
}

// ---------------------------------------------------------------------------

namespace {

// One consensus round per tree: winners beep, candidates that lose and hear
// a winner withdraw.
void consensus_round(CircuitWorld& world, const Forest& forest, std::vector<char>& cand,
                     const std::vector<char>& wins) {
  world.clear_all();
  for (int u = 0; u < world.size(); ++u) {
    if (forest.parent_port[u] >= 0) world.assign(u, forest.parent_port[u], 0, 0);
    for (int p : forest.child_ports[u]) world.assign(u, p, 0, 0);
    if (cand[u] && wins[u]) world.beep(u, 0);
  }
  world.round();
  for (int u = 0; u < world.size(); ++u)
    if (cand[u] && !wins[u] && world.heard(u, 0)) cand[u] = 0;
}

}  // namespace

MaximaResult global_maxima_general(CircuitWorld& world, const Forest& forest, const std::vector<int>& weight,
                                   const std::vector<char>& candidate, int width) {
  MaximaResult res;
  const size_t start = world.rounds();
  std::vector<char> cand = candidate;
  for (int k = width - 1; k >= 0; --k) {
    // Recompute the streams up to bit k.
    SignedStreams s = pasc_signed(world, forest, weight, width, k + 1);
    std::vector<char> wins(world.size(), 0);
    for (int u = 0; u < world.size(); ++u) {
      char bit = s.bits[u][k];
      wins[u] = (k == width - 1) ? !bit : bit;  // sign bit: nonnegative wins
    }
    consensus_round(world, forest, cand, wins);
    if (k == width - 1) res.value = s.value;
  }
  res.flags = cand;
  res.rounds = world.rounds() - start;
  return res;
}

int value_width(uint64_t n_hat) { return ceil_log2(std::max<uint64_t>(n_hat, 2)) + 3; }

int block_length(uint64_t n_hat) { return 1 << ceil_log2(static_cast<uint64_t>(value_width(n_hat))); }

MaximaResult global_maxima_boundary(const std::vector<GridPoint>& cycle, const std::vector<char>& candidate,
                                    Heading h, uint64_t n_hat, uint64_t seed) {
  MaximaResult res;
  const int len = static_cast<int>(cycle.size());
  res.flags.assign(len, 0);
  if (len == 0) return res;
  const int L = block_length(n_hat), lg = ceil_log2(static_cast<uint64_t>(L)), W = value_width(n_hat);
  res.block_length = L;

  Topology topo = ring_topology(len);
  std::map<GridPoint, uint64_t> seen;
  for (int i = 0; i < len; ++i) topo.keys[i] = point_key(cycle[i]) ^ (seen[cycle[i]]++ << 58);
  CircuitWorld world(topo, 2, seed);

  // Leader election on the cycle circuit.
  for (int u = 0; u < len; ++u) world.assign_all(u, 0);
  ElectionResult le = leader_election(world, std::vector<char>(len, 1), 0, election_iterations(n_hat));
  const int leaders = static_cast<int>(std::count(le.leader.begin(), le.leader.end(), 1));
  if (leaders != 1) {
    res.election_failed = true;
    res.rounds = world.rounds();
    return res;
  }
  const int lead = static_cast<int>(std::find(le.leader.begin(), le.leader.end(), 1) - le.leader.begin());
  auto prev = [&](int i) { return (i - 1 + len) % len; };
  std::vector<int> chain_pp(len, -1);
  for (int i = 0; i < len; ++i)
    if (i != lead) chain_pp[i] = port_to(world, i, prev(i));
  Forest chain = make_forest(world, chain_pp);

  // Chain positions modulo L mark the block starts.
  std::vector<char> block_start(len, 0);
  bool longer = false;
  {
    std::vector<char> act(len, 1);
    act[lead] = 0;
    PascEngine engine(world, chain, act);
    std::vector<int> low(len, 0);
    int it = 0;
    for (; it < lg && engine.any_active(); ++it) {
      auto b = engine.next_bits();
      for (int u = 0; u < len; ++u) low[u] |= b[u] << it;
    }
    if (it == lg) longer = engine.any_active();
    for (int u = 0; u < len; ++u) block_start[u] = low[u] == 0;
    const int last = prev(lead);
    if (longer && low[last] != L - 1) {
      // The trailing block is short: its start joins the previous block.
      int s = last;
      while (!block_start[s]) s = prev(s);
      world.clear_all();
      for (int u = 0; u < len; ++u) {
        if (chain_pp[u] >= 0 && !block_start[u]) world.assign(u, chain_pp[u], 0, 0);
        for (int p : chain.child_ports[u]) {
          int v = world.neighbor(u, p);
          if (!block_start[v]) world.assign(u, p, 0, 0);
        }
      }
      world.beep(last, 0);
      world.round();
      if (world.heard(s, 0)) block_start[s] = 0;
    }
  }
  std::vector<int> block_pp = chain_pp;
  for (int u = 0; u < len; ++u)
    if (block_start[u]) block_pp[u] = -1;
  block_pp[lead] = -1;
  block_start[lead] = 1;
  Forest blocks = make_forest(world, block_pp);

  std::vector<int> block_of(len, -1), starts;
  for (int k = 0, i = lead; k < len; ++k, i = (i + 1) % len) {
    if (block_start[i]) starts.push_back(i);
    block_of[i] = static_cast<int>(starts.size()) - 1;
  }
  const int nb = static_cast<int>(starts.size());
  res.block_lengths.assign(nb, 0);
  for (int i = 0; i < len; ++i) ++res.block_lengths[block_of[i]];

  auto weights = [&](const std::vector<int>& pp) {
    std::vector<int> w(len, 0);
    for (int i = 0; i < len; ++i)
      if (pp[i] >= 0) w[i] = static_cast<int>(heading_value(cycle[i], h) - heading_value(cycle[prev(i)], h));
    return w;
  };

  // Maxima inside each block, relative to the block start.
  int max_block = *std::max_element(res.block_lengths.begin(), res.block_lengths.end());
  const int wl = ceil_log2(static_cast<uint64_t>(4 * max_block + 1)) + 1;
  MaximaResult local = global_maxima_general(world, blocks, weights(block_pp), candidate, wl);

  std::vector<char> alive(nb, 0);
  for (int i = 0; i < len; ++i)
    if (local.flags[i]) alive[block_of[i]] = 1;
  if (nb > 1) {
    // Block starts learn their offsets from the leader; bit k is handed to
    // the k-th node of the block by a token moving one node per round.
    SignedStreams offs = pasc_signed(world, chain, weights(chain_pp), W);
    for (int k = 0; k < W; ++k) {
      world.clear_all();
      for (int s : starts) {
        int holder = s;
        for (int j = 0; j < k; ++j) holder = (holder + 1) % len;
        int next = (holder + 1) % len;
        int p = port_to(world, holder, next);
        world.assign(holder, p, 1, 0);
        world.assign(next, port_to(world, next, holder), 1, 0);
        world.beep(holder, 0);
      }
      world.round();
    }
    // Absolute block maxima: bit-serial addition along the block, one carry
    // hop per round.
    std::vector<int64_t> best(nb, 0);
    for (int i = 0; i < len; ++i)
      if (local.flags[i]) best[block_of[i]] = offs.value[starts[block_of[i]]] + local.value[i];
    for (int k = 0; k < W; ++k) {
      world.clear_all();
      for (int b = 0; b < nb; ++b) {
        int64_t low = best[b] & ((int64_t{1} << (k + 1)) - 1);
        int64_t a = offs.value[starts[b]] & ((int64_t{1} << (k + 1)) - 1);
        bool carry = low < a;  // wrapped past bit k
        int holder = (starts[b] + k) % len, next = (holder + 1) % len;
        world.assign(holder, port_to(world, holder, next), 0, 0);
        world.assign(next, port_to(world, next, holder), 0, 0);
        if (carry) world.beep(holder, 0);
      }
      world.round();
    }
    // Consensus over blocks, most significant bit first.
    for (int k = W - 1; k >= 0; --k) {
      world.clear_all();
      for (int u = 0; u < len; ++u) world.assign_all(u, 0);
      std::vector<char> wins(nb, 0);
      for (int b = 0; b < nb; ++b) {
        char bit = static_cast<char>((static_cast<uint64_t>(best[b]) >> k) & 1);
        wins[b] = (k == W - 1) ? !bit : bit;
        if (alive[b] && wins[b]) world.beep((starts[b] + k) % len, 0);
      }
      world.round();
      std::vector<char> drop(nb, 0);
      for (int b = 0; b < nb; ++b)
        if (alive[b] && !wins[b] && world.heard((starts[b] + k) % len, 0)) drop[b] = 1;
      // The deciding node tells its block.
      world.clear_all();
      for (int u = 0; u < len; ++u) {
        if (block_pp[u] >= 0) world.assign(u, block_pp[u], 0, 0);
        for (int p : blocks.child_ports[u]) world.assign(u, p, 0, 0);
      }
      for (int b = 0; b < nb; ++b)
        if (drop[b]) world.beep((starts[b] + k) % len, 0);
      world.round();
      for (int b = 0; b < nb; ++b)
        if (drop[b] && world.heard(starts[b], 0)) alive[b] = 0;
    }
  }
  for (int i = 0; i < len; ++i) res.flags[i] = local.flags[i] && alive[block_of[i]];
  res.value = local.value;
  res.rounds = world.rounds();
  return res;
}

BoundaryTestResult boundary_test(const std::vector<BoundaryCycle>& cycles, uint64_t n_hat, uint64_t seed) {
  BoundaryTestResult res;
  for (size_t c = 0; c < cycles.size(); ++c) {
    std::vector<GridPoint> pos;
    for (const BoundaryStep& st : cycles[c].steps) pos.push_back(st.node);
    MaximaResult m = global_maxima_boundary(pos, std::vector<char>(pos.size(), 1), Heading::WNW, n_hat,
                                            seed * 0x9e3779b97f4a7c15ULL + c);
    if (m.election_failed) res.election_failed = true;
    bool outer = false;
    for (size_t i = 0; i < pos.size(); ++i) {
      if (!m.flags[i]) continue;
      const BoundaryStep& st = cycles[c].steps[i];
      for (int j = 0; j < st.run_length; ++j) {
        Direction d = rotate(st.first_empty, j);
        if (d == Direction::W || d == Direction::NNW) outer = true;
      }
    }
    res.inner.push_back(!outer);
    // One more round: the deciding positions beep on the cycle circuit.
    res.rounds = std::max(res.rounds, m.rounds + 1);
  }
  return res;
}

}  // namespace amoebot
