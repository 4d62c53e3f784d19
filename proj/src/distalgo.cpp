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

#include "amoebot/distalgo.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "amoebot/primitives.hpp"

namespace amoebot {

namespace {

// FNV-1a over the seed and a tag, so every region and step draws its own
// coins independently of processing order.
uint64_t mix(uint64_t seed, const std::string& tag) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto eat = [&](uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) eat(static_cast<uint8_t>(seed >> (8 * i)));
  for (char c : tag) eat(static_cast<uint8_t>(c));
  return h;
}

// Declared register words per amoebot for the memory audit.
void audit_all(SimulationTrace& trace) {
  trace.audit("leader_election", 2);
  trace.audit("pasc", 4);
  trace.audit("pasc_signed", 10);
  trace.audit("global_maxima_boundary", 14);
  trace.audit("root_and_prune", 6);
  trace.audit("region_has", 1);
  trace.audit("closest_on_portal", 2);
  trace.audit("degree_check", 6);
  trace.audit("split_bookkeeping", 8);
}

struct Ctx {
  uint64_t n_hat = 1;
  uint64_t seed = 0;
  SimulationTrace* trace = nullptr;

  bool log = false;

  void event(const std::string& e) const {
    if (trace && log) trace->events.push_back(e);
  }
};

std::string pt(GridPoint p) { return to_string(p); }

bool member(const std::vector<GridPoint>& v, GridPoint p) { return std::find(v.begin(), v.end(), p) != v.end(); }

std::vector<GridPoint> sorted(std::vector<GridPoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> ids_of(const Region& r, const std::vector<GridPoint>& nodes) {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (const GridPoint& p : nodes) out.push_back(r.find(p));
  return out;
}

// One round on the q-portal circuits: who shares a portal with a marked node?
std::vector<char> portal_has(CircuitWorld& world, Axis q, const std::vector<char>& mark, size_t& rounds) {
  const int fwd = index(axis_direction(q)), back = index(opposite(axis_direction(q)));
  world.clear_all();
  for (int u = 0; u < world.size(); ++u) {
    for (int p : {fwd, back})
      if (world.neighbor(u, p) >= 0) world.assign(u, p, 0, 0);
    if (mark[u]) world.beep(u, 0);
  }
  world.round();
  ++rounds;
  std::vector<char> out(world.size(), 0);
  for (int u = 0; u < world.size(); ++u) out[u] = world.heard(u, 0) || mark[u];
  return out;
}

// Streams two values LSB first, one bit per round on two region-wide lanes;
// both holders learn the comparison. Returns -1, 0, 1 for a <=> b.
int compare_streams(CircuitWorld& world, int holder_a, uint64_t a, int holder_b, uint64_t b, int width,
                    size_t& rounds) {
  int verdict = 0;
  for (int k = 0; k < width; ++k) {
    world.clear_all();
    for (int u = 0; u < world.size(); ++u) {
      for (int p = 0; p < world.ports(u); ++p)
        if (world.neighbor(u, p) >= 0) {
          world.assign(u, p, 0, 0);
          world.assign(u, p, 1, 1);
        }
    }
    if ((a >> k) & 1) world.beep(holder_a, 0);
    if ((b >> k) & 1) world.beep(holder_b, 1);
    world.round();
    ++rounds;
    const bool ha = world.heard(holder_b, 0), hb = world.heard(holder_a, 1);
    if (ha != hb) verdict = ha ? 1 : -1;  // the last differing bit decides
  }
  return verdict;
}

// Distances along chain from its first node, for the nodes of chain.
struct ChainDistances {
  std::vector<uint64_t> dist;  // per chain position
  int width = 0;
  size_t rounds = 0;
};

ChainDistances chain_distances(const Region& r, const std::vector<GridPoint>& chain, uint64_t seed) {
  ChainDistances out;
  const int k = static_cast<int>(chain.size());
  CircuitWorld world(chain_topology(k), 2, seed);
  std::vector<int> pp(k, 0);
  pp[0] = -1;
  Forest f = make_forest(world, pp);
  std::vector<char> active(k, 1);
  active[0] = 0;
  PascResult res = pasc(world, f, active);
  out.dist = res.value;
  out.width = std::max(1, res.iterations);
  out.rounds = res.rounds;
  (void)r;
  return out;
}

// The marked node of a portal closest to `anchor` along it. Both halves run
// closest_on_portal at once; the two finds then compare their distances.
// `prefer_positive` breaks ties towards the positive end.
struct TwoSided {
  std::optional<GridPoint> node;
  uint64_t dist = 0;
  int width = 1;
  size_t rounds = 0;
};

TwoSided closest_two_sided(const Region& r, const std::vector<GridPoint>& portal, GridPoint anchor,
                           const std::set<GridPoint>& marked, bool prefer_positive, uint64_t seed) {
  TwoSided out;
  auto at = std::find(portal.begin(), portal.end(), anchor);
  if (at == portal.end()) throw std::logic_error("anchor is not on the portal");
  std::vector<GridPoint> neg(portal.begin(), at + 1), posv(at, portal.end());
  std::reverse(neg.begin(), neg.end());

  CircuitWorld world(region_topology(r), 2, seed);
  std::vector<char> s(r.size(), 0);
  for (const GridPoint& p : marked)
    if (r.contains(p)) s[r.find(p)] = 1;
  Closest cn = closest_on_portal(world, ids_of(r, neg), s);
  Closest cp = closest_on_portal(world, ids_of(r, posv), s);
  out.rounds = 1;  // the two halves only share the anchor
  auto dn = chain_distances(r, neg, seed ^ 1), dp = chain_distances(r, posv, seed ^ 2);
  out.rounds += std::max(dn.rounds, dp.rounds);
  out.width = std::max(dn.width, dp.width);
  auto pos_in = [&](const std::vector<GridPoint>& c, int id) {
    return static_cast<size_t>(std::find(c.begin(), c.end(), r.nodes[id]) - c.begin());
  };
  if (!cn.node && !cp.node) return out;
  if (!cn.node || !cp.node) {
    bool neg_side = cn.node.has_value();
    int id = neg_side ? *cn.node : *cp.node;
    out.node = r.nodes[id];
    out.dist = neg_side ? dn.dist[pos_in(neg, id)] : dp.dist[pos_in(posv, id)];
    return out;
  }
  const uint64_t a = dn.dist[pos_in(neg, *cn.node)], b = dp.dist[pos_in(posv, *cp.node)];
  int cmp = compare_streams(world, *cn.node, a, *cp.node, b, out.width, out.rounds);
  bool take_neg = cmp < 0 || (cmp == 0 && !prefer_positive);
  out.node = r.nodes[take_neg ? *cn.node : *cp.node];
  out.dist = take_neg ? a : b;
  return out;
}

// First direction on `side` of q missing a retained edge.
std::optional<Direction> open_side(const Region& r, GridPoint v, Axis q, int side) {
  for (Direction d : kDirections)
    if (side_of(d, q) == side && !r.has_edge(v, d)) return d;
  return std::nullopt;
}

// Marks of nodes that are not excluded and miss an edge on `side`.
std::set<GridPoint> touching(const Region& r, const std::vector<GridPoint>& portal, Axis q, int side,
                             const std::vector<GridPoint>& excluded) {
  std::set<GridPoint> out;
  for (const GridPoint& v : portal)
    if (!member(excluded, v) && open_side(r, v, q, side)) out.insert(v);
  return out;
}

// Westernmost end first: x-portals run east, z-portals run north-west.
std::vector<GridPoint> from_west(std::vector<GridPoint> portal, Axis q) {
  if (q == Axis::Z) std::reverse(portal.begin(), portal.end());
  return portal;
}

std::optional<GridPoint> closest_from_front(const Region& r, const std::vector<GridPoint>& chain,
                                            const std::set<GridPoint>& marked, uint64_t seed, size_t& rounds) {
  CircuitWorld world(region_topology(r), 2, seed);
  std::vector<char> s(r.size(), 0);
  for (const GridPoint& p : marked) s[r.find(p)] = 1;
  Closest c = closest_on_portal(world, ids_of(r, chain), s);
  rounds += c.rounds;
  if (!c.node) return std::nullopt;
  return r.nodes[*c.node];
}

void require_single(const ElectionResult& e, const std::string& what) {
  if (std::count(e.leader.begin(), e.leader.end(), 1) != 1) throw PrimitiveFailure(what + ": leader election failed");
}

}  // namespace

size_t default_round_budget(uint64_t n_hat) { return 20000 * static_cast<size_t>(ceil_log2(n_hat) + 1); }

// ---------------------------------------------------------------------------
// Phase 1.

Phase1Result dist_phase1(const AmoebotStructure& s, uint64_t n_hat, uint64_t seed, SimulationTrace& trace) {
  Phase1Result out;
  size_t rounds = 0;
  const auto cycles = boundary_cycles(s);
  BoundaryTestResult bt = boundary_test(cycles, n_hat, mix(seed, "boundary"));
  if (bt.election_failed) throw PrimitiveFailure("boundary test: leader election failed");
  rounds += bt.rounds;

  // Extremal nodes of the inner boundaries, all cycles in parallel.
  size_t wnw_rounds = 0, ese_rounds = 0;
  int hole = 0;
  for (size_t c = 0; c < cycles.size(); ++c) {
    if (!bt.inner[c]) continue;
    const auto& steps = cycles[c].steps;
    std::vector<GridPoint> pos;
    for (const BoundaryStep& st : steps) pos.push_back(st.node);
    auto extreme = [&](Heading h, const std::string& tag, size_t& used) {
      std::vector<char> all(pos.size(), 1);
      MaximaResult m1 = global_maxima_boundary(pos, all, h, n_hat, mix(seed, tag + std::to_string(c)));
      MaximaResult m2 =
          global_maxima_boundary(pos, m1.flags, Heading::NNE, n_hat, mix(seed, tag + "nne" + std::to_string(c)));
      if (m1.election_failed || m2.election_failed) throw PrimitiveFailure("boundary maxima: leader election failed");
      used = std::max(used, m1.rounds + m2.rounds);
      return m2.flags;
    };
    // Hole-side empty point, preferring `first`: the flagged positions see
    // this hole's cells in their empty runs.
    auto spec = [&](const std::vector<char>& flags, Direction first, Direction second) {
      std::optional<GridPoint> node;
      bool has_first = false;
      for (size_t i = 0; i < steps.size(); ++i) {
        if (!flags[i]) continue;
        if (node && *node != steps[i].node) throw std::logic_error("boundary maxima are not unique");
        node = steps[i].node;
        for (int j = 0; j < steps[i].run_length; ++j)
          if (rotate(steps[i].first_empty, j) == first) has_first = true;
      }
      if (!node) throw std::logic_error("boundary maxima are empty");
      return SplitNodeSpec{*node, step(*node, has_first ? first : second)};
    };
    HoleSplit hs;
    hs.hole = hole++;
    hs.wnw = spec(extreme(Heading::WNW, "wnw", wnw_rounds), Direction::E, Direction::SSE);
    hs.ese = spec(extreme(Heading::ESE, "ese", ese_rounds), Direction::W, Direction::NNW);
    out.splits.push_back(hs);
  }
  rounds += wnw_rounds + ese_rounds;

  Region whole = whole_region(s, "0");
  std::vector<Cut> cuts;
  if (!out.splits.empty()) {
    // y-portals learn whether they carry a split node.
    CircuitWorld world(region_topology(whole), 2, mix(seed, "p1portals"));
    std::vector<char> mark(whole.size(), 0);
    for (const HoleSplit& hs : out.splits) {
      mark[whole.find(hs.wnw.node)] = 1;
      mark[whole.find(hs.ese.node)] = 1;
    }
    std::vector<char> on = portal_has(world, Axis::Y, mark, rounds);
    // The southern end of each marked portal seeds its cut.
    std::map<GridPoint, Cut> by_front;
    for (size_t i = 0; i < whole.size(); ++i) {
      const GridPoint v = whole.nodes[i];
      if (!on[i] || whole.has_edge(v, Direction::SSW)) continue;
      by_front[v] = Cut{Axis::Y, v, {}};
    }
    for (const HoleSplit& hs : out.splits)
      for (const SplitNodeSpec& sp : {hs.wnw, hs.ese}) {
        GridPoint front = sp.node;
        while (whole.has_edge(front, Direction::SSW)) front = step(front, Direction::SSW);
        Cut& c = by_front.at(front);
        if (std::find(c.nodes.begin(), c.nodes.end(), sp) == c.nodes.end())
          c.nodes.push_back(sp);
      }
    for (auto& [front, c] : by_front) cuts.push_back(std::move(c));
  }
  out.regions = cuts.empty() ? std::vector<Region>{whole} : split_region(whole, cuts);
  for (const Region& r : out.regions) out.gates.insert(out.gates.end(), r.gates.begin(), r.gates.end());
  trace.add_phase("phase1", rounds);
  trace.notes.push_back("phase1: boundary_test " + std::to_string(bt.rounds) + ", maxima " +
                        std::to_string(wnw_rounds + ese_rounds) + " rounds");
  return out;
}

// ---------------------------------------------------------------------------
// Phase 2.

namespace {

struct GateScan {
  std::vector<char> on_gate;   // node lies on a gate-carrying y-portal
  std::vector<GridPoint> reps;  // northernmost node per such portal
  int leader = -1;              // node id of the elected representative
  bool several = false;         // more than one gate portal
};

// Gate portals mark themselves, their northern ends elect a leader and the
// others announce themselves.
GateScan scan_gates(const Region& r, CircuitWorld& world, const Ctx& ctx, const std::string& tag,
                    size_t& rounds) {
  GateScan g;
  std::vector<char> mark(r.size(), 0);
  for (const Gate& gate : r.gates)
    if (gate.axis == Axis::Y)
      for (const GridPoint& p : gate.nodes)
        if (r.contains(p)) mark[r.find(p)] = 1;
  g.on_gate = portal_has(world, Axis::Y, mark, rounds);
  std::vector<char> rep(r.size(), 0);
  for (size_t i = 0; i < r.size(); ++i)
    if (g.on_gate[i] && !r.has_edge(r.nodes[i], Direction::NNE)) {
      rep[i] = 1;
      g.reps.push_back(r.nodes[i]);
    }
  if (g.reps.empty()) return g;
  world.clear_all();
  for (int u = 0; u < world.size(); ++u) world.assign_all(u, 0);
  ElectionResult e = leader_election(world, rep, 0, election_iterations(ctx.n_hat));
  rounds += e.rounds;
  require_single(e, tag);
  g.leader = static_cast<int>(std::find(e.leader.begin(), e.leader.end(), 1) - e.leader.begin());
  std::vector<char> others = rep;
  others[g.leader] = 0;
  Answer a = region_has(world, others);
  rounds += a.rounds;
  g.several = a.value;
  return g;
}

// Degree checks of several portals run in two batches by line parity.
struct DegreeBatch {
  size_t rounds[2] = {0, 0};
  size_t total() const { return rounds[0] + rounds[1]; }
};

bool portal_degree_at_least(const Region& r, const Portal& p, const std::vector<char>& eligible, int threshold,
                            uint64_t seed, DegreeBatch& batch) {
  CircuitWorld world(region_topology(r), 2, seed);
  Answer a = degree_check(world, Axis::Y, ids_of(r, p.nodes), eligible, threshold);
  size_t& slot = batch.rounds[((p.line() % 2) + 2) % 2];
  slot = std::max(slot, a.rounds);
  return a.value;
}

std::vector<Region> tunnels_of(const Region& r, const Ctx& ctx, size_t& rounds) {
  const std::string tag = "p2:" + r.id;
  CircuitWorld world(region_topology(r), 2, mix(ctx.seed, tag));
  GateScan gs = scan_gates(r, world, ctx, tag, rounds);
  if (!gs.several) return {r};

  const PortalGraph py = portal_graph(r, Axis::Y);
  const size_t np = py.portals.size();
  std::vector<char> is_gate(np, 0);
  for (size_t i = 0; i < np; ++i) is_gate[i] = gs.on_gate[r.find(py.portals[i].nodes.front())];
  const int root = py.of(r.nodes[gs.leader]);
  RootPruneResult rp = root_and_prune(py.adj, is_gate, root, mix(ctx.seed, tag + ":rp"));
  rounds += rp.rounds;

  std::vector<char> kept_node(r.size(), 0);
  std::set<GridPoint> kept_points;
  for (size_t i = 0; i < np; ++i)
    if (rp.survives[i])
      for (const GridPoint& v : py.portals[i].nodes) {
        kept_node[r.find(v)] = 1;
        kept_points.insert(v);
      }
  DegreeBatch batch;
  std::vector<Cut> cuts;
  for (size_t i = 0; i < np; ++i) {
    if (!rp.survives[i] || is_gate[i]) continue;
    if (portal_degree_at_least(r, py.portals[i], kept_node, 3, mix(ctx.seed, tag + ":deg" + std::to_string(i)),
                               batch)) {
      cuts.push_back(Cut{Axis::Y, py.portals[i].nodes.front(), {}});
      ctx.event("phase2 " + r.id + " cut portal at " + pt(py.portals[i].nodes.front()));
    }
  }
  rounds += batch.total();
  std::vector<Region> children = cuts.empty() ? std::vector<Region>{r} : split_region(r, cuts);

  // Children work in parallel.
  size_t child_rounds = 0;
  std::vector<Region> out;
  for (const Region& child : children) {
    size_t used = 0;
    const std::string ctag = tag + ":" + child.id;
    CircuitWorld cw(region_topology(child), 2, mix(ctx.seed, ctag));
    std::vector<char> mark(child.size(), 0), kept(child.size(), 0);
    for (const Gate& gate : child.gates)
      if (gate.axis == Axis::Y)
        for (const GridPoint& p : gate.nodes)
          if (child.contains(p)) mark[child.find(p)] = 1;
    for (size_t i = 0; i < child.size(); ++i) kept[i] = kept_points.count(child.nodes[i]) != 0;
    std::vector<char> on_gate = portal_has(cw, Axis::Y, mark, used);
    const PortalGraph cpy = portal_graph(child, Axis::Y);
    DegreeBatch cb;
    size_t closest_rounds = 0;
    std::vector<Cut> node_cuts;
    for (size_t g = 0; g < cpy.portals.size(); ++g) {
      const Portal& gp = cpy.portals[g];
      const int front = child.find(gp.nodes.front());
      if (!on_gate[front] || !kept[front]) continue;
      if (!portal_degree_at_least(child, gp, kept, 2, mix(ctx.seed, ctag + ":deg" + std::to_string(g)), cb))
        continue;
      // Each kept neighbor portal flags its northernmost contact on the gate
      // portal (a local test against the contact's northern neighbor).
      std::map<int, std::pair<GridPoint, int>> contact;  // neighbor portal -> (node, side)
      for (const GridPoint& v : gp.nodes)
        for (Direction d : kDirections) {
          if (axis_of(d) == Axis::Y || !child.has_edge(v, d)) continue;
          GridPoint w = step(v, d);
          if (!kept[child.find(w)]) continue;
          int nb = cpy.of(w);
          auto it = contact.find(nb);
          if (it == contact.end() || v.b > it->second.first.b) contact[nb] = {v, side_of(d, Axis::Y)};
        }
      std::set<GridPoint> flagged;
      for (auto& [nb, c] : contact) flagged.insert(c.first);
      // The northernmost flag keeps its portal whole.
      std::vector<GridPoint> north_first(gp.nodes.rbegin(), gp.nodes.rend());
      auto first = closest_from_front(child, north_first, flagged, mix(ctx.seed, ctag + ":g1"), closest_rounds);
      std::vector<std::pair<GridPoint, int>> rest;
      for (auto& [nb, c] : contact) rest.push_back(c);
      std::sort(rest.begin(), rest.end(), [](const auto& x, const auto& y) { return x.first.b > y.first.b; });
      Cut cut{Axis::Y, gp.nodes.front(), {}};
      bool skipped = false;
      for (auto& [v, side] : rest) {
        if (!skipped && first && v == *first) {
          skipped = true;
          continue;
        }
        SplitNodeSpec spec{v, step(v, side == 1 ? Direction::E : Direction::NNW)};
        if (std::find(cut.nodes.begin(), cut.nodes.end(), spec) == cut.nodes.end()) cut.nodes.push_back(spec);
        ctx.event("phase2 " + child.id + " gate split at " + pt(v));
      }
      node_cuts.push_back(std::move(cut));
    }
    used += cb.total() + std::min<size_t>(closest_rounds, 1);
    child_rounds = std::max(child_rounds, used);
    if (node_cuts.empty()) {
      out.push_back(child);
    } else {
      auto parts = split_region(child, node_cuts);
      out.insert(out.end(), parts.begin(), parts.end());
    }
  }
  rounds += child_rounds;
  return out;
}

}  // namespace

std::vector<Region> dist_phase2(const std::vector<Region>& simple, uint64_t n_hat, uint64_t seed,
                                SimulationTrace& trace) {
  Ctx ctx{n_hat, seed, &trace, trace.log_events};
  std::vector<Region> out;
  size_t rounds = 0;
  for (const Region& r : simple) {
    size_t used = 0;
    auto t = tunnels_of(r, ctx, used);
    rounds = std::max(rounds, used);
    out.insert(out.end(), t.begin(), t.end());
  }
  trace.add_phase("phase2", rounds);
  return out;
}

// ---------------------------------------------------------------------------
// Phase 3.

namespace {

// The gate representative that is WNW-most (then NNE-most) on the tunnel's
// outer boundary.
GridPoint first_gate_rep(const Region& t, const std::vector<GridPoint>& reps, const Ctx& ctx,
                         const std::string& tag, size_t& rounds) {
  AmoebotStructure st(t.nodes);
  const auto cycles = boundary_cycles(st);
  const std::vector<GridPoint> pos = cycles.front().nodes();
  std::vector<char> cand(pos.size(), 0);
  for (size_t i = 0; i < pos.size(); ++i) cand[i] = member(reps, pos[i]);
  if (std::find(cand.begin(), cand.end(), 1) == cand.end())
    throw std::logic_error("gate representatives of " + t.id + " are off the boundary");
  MaximaResult m1 = global_maxima_boundary(pos, cand, Heading::WNW, ctx.n_hat, mix(ctx.seed, tag + ":gw"));
  MaximaResult m2 = global_maxima_boundary(pos, m1.flags, Heading::NNE, ctx.n_hat, mix(ctx.seed, tag + ":gn"));
  if (m1.election_failed || m2.election_failed) throw PrimitiveFailure(tag + ": boundary maxima failed");
  rounds += m1.rounds + m2.rounds;
  for (size_t i = 0; i < pos.size(); ++i)
    if (m2.flags[i]) return pos[i];
  throw std::logic_error("no gate representative flagged");
}

std::vector<GridPoint> y_portal_from_north(const Region& r, GridPoint north) {
  std::vector<GridPoint> out = {north};
  while (r.has_edge(out.back(), Direction::SSW)) out.push_back(step(out.back(), Direction::SSW));
  std::reverse(out.begin(), out.end());
  return out;
}

// Point-gate split of M at the median portals between g and g'.
std::vector<Region> dist_point_gate_split(const Region& m, GridPoint g, GridPoint gp, const Ctx& ctx,
                                          const std::string& tag, std::vector<MedianCut>& info, size_t& rounds) {
  struct AxisData {
    PortalGraph pg;
    RootPruneResult rp;
    PascResult depth;
    int a = 0, b = 0;
    uint64_t d = 0;
  };
  std::array<AxisData, 3> ax;
  CircuitWorld world(region_topology(m), 2, mix(ctx.seed, tag));
  int width = 1;
  for (Axis q : kAxes) {
    AxisData& x = ax[static_cast<int>(q)];
    x.pg = portal_graph(m, q);
    x.a = x.pg.of(g);
    x.b = x.pg.of(gp);
    std::vector<char> in_q(x.pg.portals.size(), 0);
    in_q[x.a] = in_q[x.b] = 1;
    const std::string qt = tag + ":" + name(q);
    x.rp = root_and_prune(x.pg.adj, in_q, x.a, mix(ctx.seed, qt + ":rp"));
    x.depth = pasc_tree(x.pg.adj, x.rp.parent, mix(ctx.seed, qt + ":pasc"));
    rounds += x.rp.rounds + x.depth.rounds;
    // g' streams d_q to the region, one bit per round.
    const int w = std::max(1, x.depth.iterations);
    width = std::max(width, w + 1);
    const uint64_t d = x.depth.value[x.b];
    for (int k = 0; k < w; ++k) {
      world.clear_all();
      for (int u = 0; u < world.size(); ++u) world.assign_all(u, 0);
      if ((d >> k) & 1) world.beep(m.find(gp), 0);
      world.round();
      ++rounds;
      if (world.heard(0, 0)) x.d |= uint64_t{1} << k;
    }
  }

  // S_M: nodes whose three portals lie on the g-g' portal paths. The
  // distance to g is half the sum of the portal depths; a node of S_M is a cut
  // node iff no S_M neighbor shares its distance (neighbors compare streams).
  std::vector<char> in_s(m.size(), 0);
  std::vector<uint64_t> dg(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    uint64_t sum = 0;
    bool all = true;
    for (const AxisData& x : ax) {
      int p = x.pg.of(m.nodes[i]);
      all = all && x.rp.survives[p];
      sum += x.depth.value[p];
    }
    in_s[i] = all;
    dg[i] = sum / 2;
  }
  rounds += static_cast<size_t>(width);
  std::set<GridPoint> cut_nodes;
  for (size_t i = 0; i < m.size(); ++i) {
    const GridPoint v = m.nodes[i];
    if (!in_s[i] || v == g || v == gp) continue;
    bool alone = true;
    for (const GridPoint& w : m.neighbors(v))
      if (in_s[m.find(w)] && dg[m.find(w)] == dg[i]) alone = false;
    if (alone) cut_nodes.insert(v);
  }

  std::vector<Cut> cuts;
  for (Axis q : kAxes) {
    const AxisData& x = ax[static_cast<int>(q)];
    MedianCut mc;
    mc.axis = q;
    mc.d = static_cast<int>(x.d);
    const uint64_t hi = (x.d + 1) / 2;
    int median = -1;
    for (size_t p = 0; p < x.pg.portals.size(); ++p)
      if (x.rp.survives[p] && x.depth.value[p] == hi) median = static_cast<int>(p);
    if (median < 0) throw std::logic_error("no median portal between point gates");
    mc.portal = x.pg.portals[median].nodes;
    Cut c{q, mc.portal.front(), {}};
    if (x.d >= 2) {
      const int before = x.rp.parent[median];
      int after = -1;
      for (int nb : x.pg.adj[median])
        if (x.rp.survives[nb] && x.rp.parent[nb] == median) after = nb;
      if (before >= 0 && after >= 0 && x.pg.portals[before].line() == x.pg.portals[after].line()) {
        mc.same_side = true;
        const int side = x.pg.portals[before].line() > x.pg.portals[median].line() ? upper_side(q)
                                                                                  : 1 - upper_side(q);
        std::set<GridPoint> marks;
        for (const GridPoint& v : mc.portal)
          if (cut_nodes.count(v)) marks.insert(v);
        auto b = closest_from_front(m, from_west(mc.portal, q), marks, mix(ctx.seed, tag + ":b"), rounds);
        if (b) {
          for (Direction d : kDirections)
            if (side_of(d, q) == side) {
              mc.b = *b;
              c.nodes.push_back({*b, step(*b, d)});
              break;
            }
          ctx.event("phase3 " + m.id + " median " + name(q) + " split at " + pt(*b));
        }
      }
    }
    cuts.push_back(std::move(c));
    info.push_back(mc);
  }
  return split_region(m, cuts);
}

struct TunnelResult {
  std::vector<Region> parts;
  TunnelCaseData data;
  size_t rounds = 0;
};

TunnelResult convex_of(const Region& t, const Ctx& ctx) {
  TunnelResult res;
  TunnelCaseData& data = res.data;
  data.tunnel_id = t.id;
  const std::string tag = "p3:" + t.id;
  size_t& rounds = res.rounds;
  CircuitWorld world(region_topology(t), 2, mix(ctx.seed, tag));
  GateScan gs = scan_gates(t, world, ctx, tag, rounds);
  if (!gs.several) {
    res.parts = {t};
    return res;
  }
  if (gs.reps.size() > 2) throw std::logic_error("tunnel " + t.id + " intersects more than two gates");
  const GridPoint g_rep = first_gate_rep(t, gs.reps, ctx, tag, rounds);
  const GridPoint gp_rep = gs.reps[0] == g_rep ? gs.reps[1] : gs.reps[0];
  data.gate = y_portal_from_north(t, g_rep);
  data.gate_prime = y_portal_from_north(t, gp_rep);
  const auto both = sorted([&] {
    auto v = data.gate;
    v.insert(v.end(), data.gate_prime.begin(), data.gate_prime.end());
    return v;
  }());
  std::vector<char> in_g(t.size(), 0), in_gp(t.size(), 0);
  for (const GridPoint& v : data.gate) in_g[t.find(v)] = 1;
  for (const GridPoint& v : data.gate_prime) in_gp[t.find(v)] = 1;

  std::vector<Cut> cuts;
  for (int k = 0; k < 2; ++k) {
    const Axis q = k == 0 ? Axis::X : Axis::Z;
    const std::string qt = tag + ":" + name(q);
    AxisCase& ac = data.axes[k];
    ac.axis = q;
    const int up = upper_side(q);
    const PortalGraph pq = portal_graph(t, q);
    std::vector<char> on_g = portal_has(world, q, in_g, rounds);
    std::vector<char> on_gp = portal_has(world, q, in_gp, rounds);
    std::vector<char> shared(t.size(), 0);
    for (size_t i = 0; i < t.size(); ++i) shared[i] = on_g[i] && on_gp[i];
    Answer any = region_has(world, shared);
    rounds += any.rounds;
    if (any.value) {
      ac.kase = 1;
      std::set<GridPoint> marks;
      for (const GridPoint& v : data.gate)
        if (shared[t.find(v)]) marks.insert(v);
      std::vector<GridPoint> north_first(data.gate.rbegin(), data.gate.rend());
      auto top_node = closest_from_front(t, north_first, marks, mix(ctx.seed, qt + ":top"), rounds);
      auto bottom_node = closest_from_front(t, data.gate, marks, mix(ctx.seed, qt + ":bottom"), rounds);
      const int top = pq.of(*top_node), bottom = pq.of(*bottom_node);
      ac.first = pq.portals[top].nodes;
      ac.second = pq.portals[bottom].nodes;
      auto touch = [&](const std::vector<GridPoint>& portal, int side,
                       const std::string& step_tag) -> std::optional<SplitNodeSpec> {
        auto v = closest_from_front(t, from_west(portal, q), touching(t, portal, q, side, both),
                                    mix(ctx.seed, qt + step_tag), rounds);
        if (!v) return std::nullopt;
        return SplitNodeSpec{*v, step(*v, *open_side(t, *v, q, side))};
      };
      auto bt = touch(ac.first, up, ":bt");
      auto bb = touch(ac.second, 1 - up, ":bb");
      Cut ct{q, ac.first.front(), {}};
      if (bt) {
        ac.first_node = bt->node;
        ct.nodes.push_back(*bt);
      }
      if (top == bottom) {
        if (bb) {
          ac.second_node = bb->node;
          ct.nodes.push_back(*bb);
        }
        cuts.push_back(ct);
      } else {
        cuts.push_back(ct);
        Cut cb{q, ac.second.front(), {}};
        if (bb) {
          ac.second_node = bb->node;
          cb.nodes.push_back(*bb);
        }
        cuts.push_back(cb);
      }
      ctx.event("phase3 " + t.id + " " + name(q) + " case 1");
    } else {
      ac.kase = 2;
      // Root P_q at the opposite gate's portal and keep the paths to the own
      // gate's portals; the own portal whose parent is foreign is closest.
      auto pick = [&](const std::vector<char>& own_on, const std::vector<GridPoint>& own_nodes, GridPoint other_rep,
                      std::vector<GridPoint>& portal_out, std::optional<GridPoint>& node_out,
                      const std::string& step_tag) {
        const int root = pq.of(other_rep);
        std::vector<char> in_q(pq.portals.size(), 0), own(pq.portals.size(), 0);
        for (size_t p = 0; p < pq.portals.size(); ++p) own[p] = own_on[t.find(pq.portals[p].nodes.front())];
        in_q = own;
        in_q[root] = 1;
        RootPruneResult rp = root_and_prune(pq.adj, in_q, root, mix(ctx.seed, qt + step_tag + ":rp"));
        rounds += rp.rounds;
        int best = -1;
        for (size_t p = 0; p < pq.portals.size(); ++p)
          if (own[p] && rp.parent[p] >= 0 && !own[rp.parent[p]]) {
            if (best >= 0) throw std::logic_error("gate portals of " + t.id + " are not a subtree");
            best = static_cast<int>(p);
          }
        if (best < 0) throw std::logic_error("no gate portal faces the other gate in " + t.id);
        portal_out = pq.portals[best].nodes;
        const int side = pq.portals[rp.parent[best]].line() > pq.portals[best].line() ? up : 1 - up;
        GridPoint anchor{};
        for (const GridPoint& v : portal_out)
          if (member(own_nodes, v)) anchor = v;
        TwoSided ts = closest_two_sided(t, portal_out, anchor, touching(t, portal_out, q, side, own_nodes), false,
                                        mix(ctx.seed, qt + step_tag + ":b"));
        rounds += ts.rounds;
        Cut c{q, portal_out.front(), {}};
        if (ts.node) {
          node_out = *ts.node;
          c.nodes.push_back({*ts.node, step(*ts.node, *open_side(t, *ts.node, q, side))});
        }
        cuts.push_back(c);
      };
      pick(on_g, data.gate, gp_rep, ac.first, ac.first_node, ":g");
      pick(on_gp, data.gate_prime, g_rep, ac.second, ac.second_node, ":gp");
      ctx.event("phase3 " + t.id + " " + name(q) + " case 2");
    }
  }
  std::vector<Region> parts = split_region(t, cuts);
  if (data.axes[0].kase != 2 || data.axes[1].kase != 2) {
    res.parts = std::move(parts);
    return res;
  }

  // M: the part touching the portals of both gates. Parts test in parallel.
  std::set<GridPoint> g_side, gp_side;
  for (int k = 0; k < 2; ++k) {
    g_side.insert(data.axes[k].first.begin(), data.axes[k].first.end());
    gp_side.insert(data.axes[k].second.begin(), data.axes[k].second.end());
  }
  std::vector<size_t> candidates;
  for (size_t i = 0; i < parts.size(); ++i) {
    const Region& p = parts[i];
    CircuitWorld pw(region_topology(p), 2, mix(ctx.seed, tag + ":m" + std::to_string(i)));
    std::vector<char> mg(p.size(), 0), mgp(p.size(), 0);
    for (size_t j = 0; j < p.size(); ++j) {
      mg[j] = g_side.count(p.nodes[j]) != 0;
      mgp[j] = gp_side.count(p.nodes[j]) != 0;
    }
    if (region_has(pw, mg).value && region_has(pw, mgp).value) candidates.push_back(i);
  }
  rounds += 2;
  data.m_candidates = static_cast<int>(candidates.size());
  if (candidates.empty()) {
    res.parts = std::move(parts);
    return res;
  }
  if (candidates.size() > 1) ctx.event("phase3 " + t.id + " has several M candidates");
  const size_t mi = candidates.front();
  const Region& m = parts[mi];
  data.has_m = true;
  data.m_id = m.id;

  // g: the node of M on G_x or G_z nearest to G. On these portals the
  // distance to G is the distance along the portal to its G node.
  auto choose = [&](const std::vector<GridPoint>& gate_nodes, const std::vector<GridPoint>& on_x,
                    const std::vector<GridPoint>& on_z, const std::string& step_tag) -> std::optional<GridPoint> {
    std::array<TwoSided, 2> found;
    const std::array<const std::vector<GridPoint>*, 2> portals = {&on_x, &on_z};
    size_t used = 0;
    for (int k = 0; k < 2; ++k) {
      GridPoint anchor{};
      for (const GridPoint& v : *portals[k])
        if (member(gate_nodes, v)) anchor = v;
      std::set<GridPoint> in_m;
      for (const GridPoint& v : *portals[k])
        if (m.contains(v)) in_m.insert(v);
      found[k] = closest_two_sided(t, *portals[k], anchor, in_m, k == 1,
                                   mix(ctx.seed, tag + step_tag + std::to_string(k)));
      used = std::max(used, found[k].rounds);
    }
    rounds += used;
    if (!found[0].node) return found[1].node;
    if (!found[1].node) return found[0].node;
    int cmp = compare_streams(world, t.find(*found[0].node), found[0].dist, t.find(*found[1].node), found[1].dist,
                              std::max(found[0].width, found[1].width), rounds);
    return cmp <= 0 ? found[0].node : found[1].node;
  };
  data.g = choose(data.gate, data.axes[0].first, data.axes[1].first, ":cg");
  data.g_prime = choose(data.gate_prime, data.axes[0].second, data.axes[1].second, ":cgp");
  if (!data.g || !data.g_prime) {
    res.parts = std::move(parts);
    return res;
  }
  auto sub = dist_point_gate_split(m, *data.g, *data.g_prime, ctx, tag + ":pgs", data.median, rounds);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i == mi)
      res.parts.insert(res.parts.end(), sub.begin(), sub.end());
    else
      res.parts.push_back(parts[i]);
  }
  return res;
}

}  // namespace

std::pair<std::vector<Region>, std::vector<TunnelCaseData>> dist_phase3(const std::vector<Region>& tunnels,
                                                                        uint64_t n_hat, uint64_t seed,
                                                                        SimulationTrace& trace) {
  Ctx ctx{n_hat, seed, &trace, trace.log_events};
  std::vector<Region> regions;
  std::vector<TunnelCaseData> cases;
  size_t rounds = 0;
  for (const Region& t : tunnels) {
    TunnelResult tr = convex_of(t, ctx);
    rounds = std::max(rounds, tr.rounds);
    regions.insert(regions.end(), tr.parts.begin(), tr.parts.end());
    if (!tr.data.gate.empty()) cases.push_back(std::move(tr.data));
  }
  trace.add_phase("phase3", rounds);
  trace.notes.push_back("phase3 order per tunnel: case classification, case-1 splits, case-2 splits, M handling");
  return {regions, cases};
}

// ---------------------------------------------------------------------------

DistributedOutcome run_distributed(const AmoebotStructure& s, uint64_t seed, const DistOptions& opts) {
  DistributedOutcome out;
  SimulationTrace& trace = out.trace;
  const uint64_t n_hat = opts.n_hat ? opts.n_hat : s.size();
  if (n_hat < s.size()) throw std::invalid_argument("n_hat must be at least n");
  trace.seed = seed;
  trace.n_hat = n_hat;
  trace.log_events = opts.log_events;
  audit_all(trace);

  const size_t budget = opts.round_budget ? opts.round_budget : default_round_budget(n_hat);
  auto check = [&](const char* phase) {
    if (trace.total_rounds > budget) {
      trace.timed_out = true;
      trace.notes.push_back(std::string("round budget exceeded in ") + phase);
      throw ProtocolTimeout("distributed run exceeded its round budget", trace);
    }
  };

  Decomposition& d = out.decomposition;
  Phase1Result p1 = dist_phase1(s, n_hat, seed, trace);
  check("phase1");
  d.holes = p1.splits.size();
  d.simple_regions = p1.regions;
  d.gates = p1.gates;
  d.tunnels = dist_phase2(p1.regions, n_hat, seed, trace);
  check("phase2");
  auto [regions, cases] = dist_phase3(d.tunnels, n_hat, seed, trace);
  check("phase3");
  d.cases = std::move(cases);
  out.knowledge = knowledge_of(regions);
  d.regions = regions_from_knowledge(out.knowledge);
  // Gate flags travel with the amoebots as well.
  std::map<std::string, const Region*> by_id;
  for (const Region& r : regions) by_id[r.id] = &r;
  for (Region& r : d.regions) r.gates = by_id.at(r.id)->gates;
  return out;
}

std::vector<NodeKnowledge> knowledge_of(const std::vector<Region>& regions) {
  std::vector<NodeKnowledge> out;
  for (const Region& r : regions)
    for (size_t i = 0; i < r.size(); ++i) out.push_back({r.id, r.nodes[i], r.dirs[i]});
  return out;
}

std::vector<Region> regions_from_knowledge(const std::vector<NodeKnowledge>& knowledge) {
  std::vector<Region> out;
  std::map<std::string, size_t> slot;
  for (const NodeKnowledge& k : knowledge) {
    auto [it, fresh] = slot.emplace(k.region_id, out.size());
    if (fresh) {
      out.emplace_back();
      out.back().id = k.region_id;
    }
    Region& r = out[it->second];
    r.nodes.push_back(k.node);
    r.dirs.push_back(k.dirs);
  }
  for (Region& r : out) {
    std::vector<size_t> order(r.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return r.nodes[x] < r.nodes[y]; });
    Region sorted_r;
    sorted_r.id = r.id;
    for (size_t i : order) {
      sorted_r.nodes.push_back(r.nodes[i]);
      sorted_r.dirs.push_back(r.dirs[i]);
    }
    r = std::move(sorted_r);
    // Every retained edge must be known from both ends.
    for (size_t i = 0; i < r.size(); ++i)
      for (Direction dir : kDirections)
        if (r.has_edge(r.nodes[i], dir) && !r.has_edge(step(r.nodes[i], dir), opposite(dir)))
          throw std::logic_error("inconsistent knowledge in region " + r.id);
    if (!is_region_connected(r)) throw std::logic_error("region " + r.id + " is not connected");
  }
  return out;
}

bool same_regions(const std::vector<Region>& x, const std::vector<Region>& y) {
  auto key = [](const std::vector<Region>& rs) {
    std::vector<std::pair<std::vector<GridPoint>, std::vector<Edge>>> out;
    for (const Region& r : rs) out.push_back({r.nodes, r.edges()});
    std::sort(out.begin(), out.end());
    return out;
  };
  return key(x) == key(y);
}

}  // namespace amoebot
