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

#include "amoebot/decompose.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace amoebot {

namespace {

bool in_sorted(const std::vector<GridPoint>& v, GridPoint p) {
  return std::binary_search(v.begin(), v.end(), p);
}

std::vector<GridPoint> sorted(std::vector<GridPoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// BFS over retained edges from a set of sources.
std::map<GridPoint, int> region_bfs(const Region& r, const std::vector<GridPoint>& sources) {
  std::map<GridPoint, int> dist;
  std::deque<GridPoint> queue;
  for (const GridPoint& s : sources)
    if (r.contains(s) && dist.emplace(s, 0).second) queue.push_back(s);
  while (!queue.empty()) {
    GridPoint u = queue.front();
    queue.pop_front();
    for (const GridPoint& v : r.neighbors(u))
      if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
  }
  return dist;
}

// First node of `chain` (in the given order) that is not excluded and misses
// a retained edge on `side`; returns the node and that empty point.
std::optional<SplitNodeSpec> boundary_touch(const Region& r, const std::vector<GridPoint>& chain,
                                            Axis q, int side, const std::vector<GridPoint>& excluded) {
  for (const GridPoint& v : chain) {
    if (in_sorted(excluded, v)) continue;
    for (Direction d : kDirections)
      if (side_of(d, q) == side && !r.has_edge(v, d)) return SplitNodeSpec{v, step(v, d)};
  }
  return std::nullopt;
}

std::vector<GridPoint> westernmost_first(std::vector<GridPoint> chain) {
  std::sort(chain.begin(), chain.end(), [](GridPoint x, GridPoint y) {
    return heading_value(x, Heading::E) < heading_value(y, Heading::E);
  });
  return chain;
}

std::vector<GridPoint> closest_first(std::vector<GridPoint> chain, const std::vector<GridPoint>& anchor, Axis q) {
  int ref = 0;
  bool found = false;
  for (const GridPoint& v : chain)
    if (in_sorted(anchor, v)) {
      ref = along(v, q);
      found = true;
      break;
    }
  if (!found) return chain;
  std::stable_sort(chain.begin(), chain.end(), [&](GridPoint x, GridPoint y) {
    return std::abs(along(x, q) - ref) < std::abs(along(y, q) - ref);
  });
  return chain;
}

// Articulation points of the subgraph induced by `nodes` on retained edges.
std::set<GridPoint> articulation_points(const Region& r, const std::vector<GridPoint>& nodes) {
  std::map<GridPoint, int> id;
  for (const GridPoint& p : nodes) id.emplace(p, static_cast<int>(id.size()));
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> adj(n);
  for (const GridPoint& p : nodes)
    for (const GridPoint& q : r.neighbors(p)) {
      auto it = id.find(q);
      if (it != id.end()) adj[id[p]].push_back(it->second);
    }
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), child_count(n, 0);
  std::vector<char> cut(n, 0);
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<std::pair<int, size_t>> stack = {{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [u, k] = stack.back();
      if (k < adj[u].size()) {
        int v = adj[u][k++];
        if (disc[v] < 0) {
          parent[v] = u;
          ++child_count[u];
          disc[v] = low[v] = timer++;
          stack.push_back({v, 0});
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        int done = u;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().first;
          low[p] = std::min(low[p], low[done]);
          if (parent[p] >= 0 && low[done] >= disc[p]) cut[p] = 1;
        }
      }
    }
    if (child_count[root] > 1) cut[root] = 1;
  }
  std::set<GridPoint> out;
  for (const GridPoint& p : nodes)
    if (cut[id[p]]) out.insert(p);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Phase 1: simple regions.

HoleSplit hole_split(const AmoebotStructure& s, const Hole& hole, int hole_index) {
  (void)s;
  HoleSplit hs;
  hs.hole = hole_index;
  const auto& b = hole.boundary;
  GridPoint wnw = b.front(), ese = b.front();
  for (const GridPoint& p : b) {
    if (p.a < wnw.a || (p.a == wnw.a && p.b > wnw.b)) wnw = p;
    if (p.a > ese.a || (p.a == ese.a && p.b > ese.b)) ese = p;
  }
  auto pick = [&](GridPoint v, Direction first, Direction second) {
    GridPoint c = step(v, first);
    if (in_sorted(hole.cells, c)) return SplitNodeSpec{v, c};
    return SplitNodeSpec{v, step(v, second)};
  };
  hs.wnw = pick(wnw, Direction::E, Direction::SSE);
  hs.ese = pick(ese, Direction::W, Direction::NNW);
  return hs;
}

std::vector<Cut> phase1_cuts(const Region& whole, const std::vector<HoleSplit>& splits) {
  std::map<GridPoint, Cut> by_front;
  for (const HoleSplit& hs : splits) {
    for (const SplitNodeSpec& spec : {hs.wnw, hs.ese}) {
      GridPoint front = portal_through(whole, spec.node, Axis::Y).front();
      Cut& c = by_front[front];
      c.axis = Axis::Y;
      c.seed = front;
      if (std::find(c.nodes.begin(), c.nodes.end(), spec) == c.nodes.end()) c.nodes.push_back(spec);
    }
  }
  std::vector<Cut> out;
  for (auto& [front, c] : by_front) out.push_back(std::move(c));
  return out;
}

Phase1Result phase1_simple(const AmoebotStructure& s) {
  Phase1Result out;
  HoleSet holes = find_holes(s);
  for (size_t h = 0; h < holes.inner.size(); ++h)
    out.splits.push_back(hole_split(s, holes.inner[h], static_cast<int>(h)));
  Region whole = whole_region(s, "0");
  auto cuts = phase1_cuts(whole, out.splits);
  out.regions = cuts.empty() ? std::vector<Region>{whole} : split_region(whole, cuts);
  for (const Region& r : out.regions) out.gates.insert(out.gates.end(), r.gates.begin(), r.gates.end());
  return out;
}

// ---------------------------------------------------------------------------
// Phase 2: tunnels.

std::vector<int> gate_portals(const Region& r, const PortalGraph& py) {
  std::set<int> ids;
  for (const Gate& g : r.gates) {
    if (g.axis != Axis::Y) continue;
    for (const GridPoint& p : g.nodes)
      if (r.contains(p)) ids.insert(py.of(p));
  }
  return {ids.begin(), ids.end()};
}

std::vector<Region> phase2_tunnels(const Region& r) { return phase2_tunnels(r, r.gates); }

std::vector<Region> phase2_tunnels(const Region& input, const std::vector<Gate>& gates) {
  Region r = input;
  r.gates = gates;
  const PortalGraph py = portal_graph(r, Axis::Y);
  const auto gp = gate_portals(r, py);
  if (gp.size() <= 1) return {r};

  const size_t np = py.portals.size();
  std::vector<char> is_gate(np, 0), removed(np, 0);
  for (int g : gp) is_gate[g] = 1;
  std::vector<int> deg(np);
  for (size_t i = 0; i < np; ++i) deg[i] = static_cast<int>(py.adj[i].size());
  std::vector<int> leaves;
  for (size_t i = 0; i < np; ++i)
    if (!is_gate[i] && deg[i] <= 1) leaves.push_back(static_cast<int>(i));
  while (!leaves.empty()) {
    int u = leaves.back();
    leaves.pop_back();
    if (removed[u]) continue;
    removed[u] = 1;
    for (int v : py.adj[u]) {
      if (removed[v]) continue;
      if (--deg[v] <= 1 && !is_gate[v]) leaves.push_back(v);
    }
  }
  std::set<GridPoint> kept_points;
  std::vector<Cut> cuts;
  for (size_t i = 0; i < np; ++i) {
    if (removed[i]) continue;
    kept_points.insert(py.portals[i].nodes.begin(), py.portals[i].nodes.end());
    if (!is_gate[i] && deg[i] >= 3) cuts.push_back(Cut{Axis::Y, py.portals[i].nodes.front(), {}});
  }
  std::vector<Region> children = cuts.empty() ? std::vector<Region>{r} : split_region(r, cuts);

  std::vector<Region> out;
  for (const Region& child : children) {
    const PortalGraph cpy = portal_graph(child, Axis::Y);
    auto kept = [&](int pid) { return kept_points.count(cpy.portals[pid].nodes.front()) != 0; };
    std::vector<Cut> node_cuts;
    for (int g : gate_portals(child, cpy)) {
      if (!kept(g)) continue;
      std::vector<int> nbrs;
      for (int v : cpy.adj[g])
        if (kept(v)) nbrs.push_back(v);
      if (nbrs.size() < 2) continue;
      // Northernmost gate node adjacent to each neighbor portal.
      std::vector<std::pair<GridPoint, int>> contacts;  // (g_i, side)
      for (int nb : nbrs) {
        std::optional<GridPoint> best;
        int side = 0;
        for (const GridPoint& v : cpy.portals[g].nodes)
          for (Direction d : kDirections) {
            if (axis_of(d) == Axis::Y || !child.has_edge(v, d)) continue;
            if (cpy.of(step(v, d)) != nb) continue;
            if (!best || v.b > best->b) {
              best = v;
              side = side_of(d, Axis::Y);
            }
          }
        contacts.emplace_back(*best, side);
      }
      std::sort(contacts.begin(), contacts.end(),
                [](const auto& x, const auto& y) { return x.first.b > y.first.b; });
      Cut c{Axis::Y, cpy.portals[g].nodes.front(), {}};
      for (size_t i = 1; i < contacts.size(); ++i) {
        auto [v, side] = contacts[i];
        SplitNodeSpec spec{v, step(v, side == 1 ? Direction::E : Direction::NNW)};
        if (std::find(c.nodes.begin(), c.nodes.end(), spec) == c.nodes.end()) c.nodes.push_back(spec);
      }
      node_cuts.push_back(std::move(c));
    }
    if (node_cuts.empty()) {
      out.push_back(child);
    } else {
      auto parts = split_region(child, node_cuts);
      out.insert(out.end(), parts.begin(), parts.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase 3: convex regions.

std::pair<std::vector<GridPoint>, std::vector<GridPoint>> tunnel_gates(const Region& t) {
  const PortalGraph py = portal_graph(t, Axis::Y);
  auto gp = gate_portals(t, py);
  if (gp.size() != 2) throw std::logic_error("tunnel " + t.id + " does not have exactly two gates");
  const auto& a = py.portals[gp[0]].nodes;
  const auto& b = py.portals[gp[1]].nodes;
  // Representatives are the northernmost nodes; G is the WNW-most of them.
  GridPoint ra = a.back(), rb = b.back();
  bool a_first = ra.a < rb.a || (ra.a == rb.a && ra.b > rb.b);
  return a_first ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::pair<std::vector<Region>, TunnelCaseData> phase3_convex(const Region& t) {
  TunnelCaseData data;
  data.tunnel_id = t.id;
  {
    const PortalGraph py = portal_graph(t, Axis::Y);
    auto gp = gate_portals(t, py);
    if (gp.size() > 2) throw std::logic_error("tunnel " + t.id + " intersects more than two gates");
    if (gp.size() < 2) return {{t}, data};
  }
  auto [gate, gate_prime] = tunnel_gates(t);
  data.gate = gate;
  data.gate_prime = gate_prime;
  const auto g_set = sorted(gate), gp_set = sorted(gate_prime);
  auto both = g_set;
  both.insert(both.end(), gp_set.begin(), gp_set.end());
  std::sort(both.begin(), both.end());

  std::vector<Cut> cuts;
  for (int k = 0; k < 2; ++k) {
    const Axis q = k == 0 ? Axis::X : Axis::Z;
    AxisCase& ac = data.axes[k];
    ac.axis = q;
    const PortalGraph pq = portal_graph(t, q);
    std::set<int> from_g, from_gp;
    for (const GridPoint& v : gate) from_g.insert(pq.of(v));
    for (const GridPoint& v : gate_prime) from_gp.insert(pq.of(v));
    std::vector<int> shared;
    std::set_intersection(from_g.begin(), from_g.end(), from_gp.begin(), from_gp.end(),
                          std::back_inserter(shared));
    const int up = upper_side(q);
    if (!shared.empty()) {
      ac.kase = 1;
      auto by_line = [&](int x, int y) { return pq.portals[x].line() < pq.portals[y].line(); };
      int top = *std::max_element(shared.begin(), shared.end(), by_line);
      int bottom = *std::min_element(shared.begin(), shared.end(), by_line);
      ac.first = pq.portals[top].nodes;
      ac.second = pq.portals[bottom].nodes;
      auto bt = boundary_touch(t, westernmost_first(ac.first), q, up, both);
      auto bb = boundary_touch(t, westernmost_first(ac.second), q, 1 - up, both);
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
    } else {
      ac.kase = 2;
      auto pick = [&](const std::set<int>& own, const std::set<int>& other,
                      const std::vector<GridPoint>& own_nodes,
                      std::vector<GridPoint>& portal_out, std::optional<GridPoint>& node_out) {
        auto dist = pq.distances({other.begin(), other.end()});
        int best = -1;
        for (int p : own)
          if (best < 0 || dist[p] < dist[best] ||
              (dist[p] == dist[best] && pq.portals[p].line() > pq.portals[best].line()))
            best = p;
        portal_out = pq.portals[best].nodes;
        // Side facing the opposite gate.
        int side = up;
        for (int nb : pq.adj[best])
          if (dist[nb] == dist[best] - 1) side = pq.portals[nb].line() > pq.portals[best].line() ? up : 1 - up;
        auto touch = boundary_touch(t, closest_first(portal_out, sorted(own_nodes), q), q, side,
                                    sorted(own_nodes));
        Cut c{q, portal_out.front(), {}};
        if (touch) {
          node_out = touch->node;
          c.nodes.push_back(*touch);
        }
        cuts.push_back(c);
      };
      pick(from_g, from_gp, gate, ac.first, ac.first_node);
      pick(from_gp, from_g, gate_prime, ac.second, ac.second_node);
    }
  }
  std::vector<Region> parts = split_region(t, cuts);
  if (data.axes[0].kase != 2 || data.axes[1].kase != 2) return {parts, data};

  // Both axes fell into the second case: find M and its point gates.
  auto g_side = sorted([&] {
    auto v = data.axes[0].first;
    v.insert(v.end(), data.axes[1].first.begin(), data.axes[1].first.end());
    return v;
  }());
  auto gp_side = sorted([&] {
    auto v = data.axes[0].second;
    v.insert(v.end(), data.axes[1].second.begin(), data.axes[1].second.end());
    return v;
  }());
  auto touches = [](const Region& r, const std::vector<GridPoint>& pts) {
    return std::any_of(pts.begin(), pts.end(), [&](const GridPoint& p) { return r.contains(p); });
  };
  std::vector<size_t> candidates;
  for (size_t i = 0; i < parts.size(); ++i)
    if (touches(parts[i], g_side) && touches(parts[i], gp_side)) candidates.push_back(i);
  data.m_candidates = static_cast<int>(candidates.size());
  if (candidates.empty()) return {parts, data};
  const size_t mi = candidates.front();
  const Region& m = parts[mi];
  data.has_m = true;
  data.m_id = m.id;

  auto choose = [&](const std::vector<GridPoint>& gate_nodes, const std::vector<GridPoint>& on_x,
                    const std::vector<GridPoint>& on_z) {
    auto dist = region_bfs(t, gate_nodes);
    std::optional<GridPoint> best;
    std::tuple<int, int, int> best_key;
    auto consider = [&](const std::vector<GridPoint>& portal, int pref) {
      for (const GridPoint& v : portal) {
        if (!m.contains(v)) continue;
        std::tuple<int, int, int> key{dist.at(v), pref, -v.b};
        if (!best || key < best_key) {
          best = v;
          best_key = key;
        }
      }
    };
    consider(on_x, 0);
    consider(on_z, 1);
    return best;
  };
  data.g = choose(gate, data.axes[0].first, data.axes[1].first);
  data.g_prime = choose(gate_prime, data.axes[0].second, data.axes[1].second);
  if (!data.g || !data.g_prime) return {parts, data};
  auto sub = point_gate_split(m, *data.g, *data.g_prime, &data.median);
  std::vector<Region> out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i == mi)
      out.insert(out.end(), sub.begin(), sub.end());
    else
      out.push_back(parts[i]);
  }
  return {out, data};
}

std::vector<Region> point_gate_split(const Region& m, GridPoint g, GridPoint g_prime,
                                     std::vector<MedianCut>* info) {
  if (!m.contains(g) || !m.contains(g_prime)) throw std::invalid_argument("point gate outside region");
  auto dg = region_bfs(m, {g});
  auto dgp = region_bfs(m, {g_prime});
  const int total = dg.at(g_prime);
  std::vector<GridPoint> s_m;
  for (const GridPoint& v : m.nodes)
    if (dg.count(v) && dgp.count(v) && dg[v] + dgp[v] == total) s_m.push_back(v);
  const auto cut_nodes = articulation_points(m, s_m);

  std::vector<Cut> cuts;
  for (Axis q : kAxes) {
    MedianCut mc;
    mc.axis = q;
    const PortalGraph pg = portal_graph(m, q);
    const int a = pg.of(g), b = pg.of(g_prime);
    auto da = pg.distances({a});
    auto db = pg.distances({b});
    mc.d = da[b];
    const int hi = (mc.d + 1) / 2, lo = mc.d / 2;
    int median = -1;
    for (size_t p = 0; p < pg.portals.size(); ++p)
      if (da[p] == hi && db[p] == lo) {
        median = static_cast<int>(p);
        break;
      }
    if (median < 0) throw std::logic_error("no median portal between point gates");
    mc.portal = pg.portals[median].nodes;
    Cut c{q, mc.portal.front(), {}};
    // Neighbors of the median on the g-g' portal path.
    if (mc.d >= 2) {
      int before = -1, after = -1;
      for (int nb : pg.adj[median]) {
        if (da[nb] == hi - 1 && db[nb] == lo + 1) before = nb;
        if (da[nb] == hi + 1 && db[nb] == lo - 1) after = nb;
      }
      if (before >= 0 && after >= 0 && pg.portals[before].line() == pg.portals[after].line()) {
        mc.same_side = true;
        const int side = pg.portals[before].line() > pg.portals[median].line() ? upper_side(q)
                                                                              : 1 - upper_side(q);
        for (const GridPoint& v : westernmost_first(mc.portal)) {
          if (!cut_nodes.count(v)) continue;
          for (Direction d : kDirections)
            if (side_of(d, q) == side) {
              mc.b = v;
              c.nodes.push_back({v, step(v, d)});
              break;
            }
          break;
        }
      }
    }
    cuts.push_back(std::move(c));
    if (info) info->push_back(mc);
  }
  return split_region(m, cuts);
}

// ---------------------------------------------------------------------------

Decomposition decompose(const AmoebotStructure& s) {
  Decomposition out;
  out.holes = find_holes(s).inner.size();
  Phase1Result p1 = phase1_simple(s);
  out.simple_regions = p1.regions;
  out.gates = p1.gates;
  for (const Region& r : p1.regions) {
    auto tunnels = phase2_tunnels(r);
    out.tunnels.insert(out.tunnels.end(), tunnels.begin(), tunnels.end());
  }
  for (const Region& t : out.tunnels) {
    auto [parts, data] = phase3_convex(t);
    out.regions.insert(out.regions.end(), parts.begin(), parts.end());
    if (!data.gate.empty()) out.cases.push_back(std::move(data));
  }
  return out;
}

}  // namespace amoebot
