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

#include "amoebot/split.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace amoebot {

std::vector<GridPoint> portal_through(const Region& r, GridPoint p, Axis q) {
  if (!r.contains(p)) throw std::invalid_argument("cut seed " + to_string(p) + " outside region");
  const Direction fwd = axis_direction(q), back = opposite(fwd);
  GridPoint start = p;
  while (r.has_edge(start, back)) start = step(start, back);
  std::vector<GridPoint> chain = {start};
  while (r.has_edge(chain.back(), fwd)) chain.push_back(step(chain.back(), fwd));
  return chain;
}

namespace {

// Around each node, slot 2d is direction d and slot 2d+1 the gap between d
// and d+1. Line cuts occupy direction slots, node specs occupy gap slots.
constexpr int kSlots = 12;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct NodeSectors {
  std::vector<uint8_t> masks;      // directions per sector
  std::array<int, 6> ccw{};        // sector starting at a line slot (or the only one)
  std::array<int, 6> cw{};         // sector ending at a line slot (or the only one)
};

NodeSectors sectors_for(uint16_t slots) {
  NodeSectors ns;
  std::vector<int> cuts;
  for (int s = 0; s < kSlots; ++s)
    if ((slots >> s) & 1) cuts.push_back(s);
  if (cuts.empty()) {
    ns.masks.push_back(0x3f);
    ns.ccw.fill(0);
    ns.cw.fill(0);
    return ns;
  }
  ns.ccw.fill(-1);
  ns.cw.fill(-1);
  const size_t k = cuts.size();
  for (size_t j = 0; j < k; ++j) {
    int from = cuts[j];
    int to = k == 1 ? from + kSlots : cuts[(j + 1) % k] + (j + 1 == k ? kSlots : 0);
    uint8_t m = 0;
    for (int s = from; s <= to; ++s)
      if (s % 2 == 0) m |= uint8_t(1u << ((s % kSlots) / 2));
    int id = static_cast<int>(ns.masks.size());
    ns.masks.push_back(m);
    if (from % 2 == 0) ns.ccw[(from % kSlots) / 2] = id;
    if (to % 2 == 0) ns.cw[(to % kSlots) / 2] = id;
  }
  // Directions strictly inside a sector map to that sector in both slots.
  for (int d = 0; d < 6; ++d) {
    if (ns.ccw[d] >= 0 && ns.cw[d] >= 0) continue;
    for (size_t s = 0; s < ns.masks.size(); ++s)
      if ((ns.masks[s] >> d) & 1) {
        if (ns.ccw[d] < 0) ns.ccw[d] = static_cast<int>(s);
        if (ns.cw[d] < 0) ns.cw[d] = static_cast<int>(s);
      }
  }
  return ns;
}

int gap_slot(GridPoint node, GridPoint empty_point, Axis q) {
  auto d = direction_between(node, empty_point);
  if (!d) throw std::invalid_argument("split point " + to_string(empty_point) +
                                      " is not adjacent to " + to_string(node));
  int side = side_of(*d, q);
  if (side < 0) throw std::invalid_argument("split point lies along the cut axis");
  int p = index(axis_direction(q));
  return (2 * ((p + (side == 0 ? 1 : 4)) % 6) + 1) % kSlots;
}

struct SortKey {
  int min_a;
  int neg_max_b;
  const std::vector<GridPoint>* nodes;
  bool operator<(const SortKey& o) const {
    return std::tie(min_a, neg_max_b, *nodes) < std::tie(o.min_a, o.neg_max_b, *o.nodes);
  }
};

SortKey key_of(const Region& r) {
  int min_a = r.nodes.front().a;
  for (const GridPoint& p : r.nodes) min_a = std::min(min_a, p.a);
  int max_b = std::numeric_limits<int>::min();
  for (const GridPoint& p : r.nodes)
    if (p.a == min_a) max_b = std::max(max_b, p.b);
  return {min_a, -max_b, &r.nodes};
}

// Merges gates on one line whose node runs touch.
void normalize_gates(std::vector<Gate>& gates) {
  std::sort(gates.begin(), gates.end(), [](const Gate& x, const Gate& y) {
    return std::tie(x.axis, x.line, x.side) < std::tie(y.axis, y.line, y.side);
  });
  std::vector<Gate> out;
  for (size_t i = 0; i < gates.size();) {
    size_t j = i;
    std::set<int> pos;
    std::map<int, GridPoint> at;
    while (j < gates.size() && gates[j].axis == gates[i].axis && gates[j].line == gates[i].line &&
           gates[j].side == gates[i].side) {
      for (const GridPoint& p : gates[j].nodes) at[along(p, gates[j].axis)] = p;
      ++j;
    }
    Gate cur = gates[i];
    cur.nodes.clear();
    int last = 0;
    for (auto& [k, p] : at) {
      if (!cur.nodes.empty() && k != last + 1) {
        out.push_back(cur);
        cur.nodes.clear();
      }
      cur.nodes.push_back(p);
      last = k;
    }
    if (!cur.nodes.empty()) out.push_back(cur);
    i = j;
  }
  gates = std::move(out);
}

}  // namespace

std::vector<Region> split_region(const Region& r, const std::vector<Cut>& cuts) {
  const size_t n = r.nodes.size();
  std::vector<uint16_t> slots(n, 0);
  struct CutInfo {
    Axis axis;
    std::vector<GridPoint> chain;
  };
  std::vector<CutInfo> infos;
  for (const Cut& c : cuts) {
    CutInfo info{c.axis, portal_through(r, c.seed, c.axis)};
    const int p = index(axis_direction(c.axis));
    for (const GridPoint& v : info.chain) {
      slots[r.find(v)] |= uint16_t((1u << (2 * p)) | (1u << (2 * ((p + 3) % 6))));
    }
    for (const SplitNodeSpec& s : c.nodes) {
      if (std::find(info.chain.begin(), info.chain.end(), s.node) == info.chain.end())
        throw std::invalid_argument("split node " + to_string(s.node) + " is not on the cut portal");
      slots[r.find(s.node)] |= uint16_t(1u << gap_slot(s.node, s.empty_point, c.axis));
    }
    infos.push_back(std::move(info));
  }

  // Copy vertices.
  std::vector<NodeSectors> sec(n);
  std::vector<int> base(n + 1, 0);
  for (size_t i = 0; i < n; ++i) {
    sec[i] = sectors_for(slots[i]);
    base[i + 1] = base[i] + static_cast<int>(sec[i].masks.size());
  }
  const int nv = base[n];
  std::vector<int> vnode(nv);
  for (size_t i = 0; i < n; ++i)
    for (int v = base[i]; v < base[i + 1]; ++v) vnode[v] = static_cast<int>(i);

  struct EdgeUse {
    int va, vb;
    int node;
    int dir;
    bool shared;
  };
  std::vector<EdgeUse> uses;
  UnionFind uf(nv);
  for (size_t i = 0; i < n; ++i) {
    for (int d = 0; d < 6; ++d) {
      if (!((r.dirs[i] >> d) & 1)) continue;
      GridPoint q = step(r.nodes[i], direction(d));
      if (q < r.nodes[i]) continue;
      int j = r.find(q);
      if (j < 0) throw std::logic_error("retained edge leaves the region");
      const int e = (d + 3) % 6;
      bool line_i = (slots[i] >> (2 * d)) & 1, line_j = (slots[j] >> (2 * e)) & 1;
      if (line_i != line_j) throw std::logic_error("cut line ends inside an edge");
      if (line_i) {
        int a1 = base[i] + sec[i].ccw[d], b1 = base[j] + sec[j].cw[e];
        int a2 = base[i] + sec[i].cw[d], b2 = base[j] + sec[j].ccw[e];
        uses.push_back({a1, b1, static_cast<int>(i), d, true});
        uses.push_back({a2, b2, static_cast<int>(i), d, true});
        uf.unite(a1, b1);
        uf.unite(a2, b2);
      } else {
        int a = base[i] + sec[i].ccw[d], b = base[j] + sec[j].ccw[e];
        uses.push_back({a, b, static_cast<int>(i), d, false});
        uf.unite(a, b);
      }
    }
  }

  // Components.
  std::map<int, int> comp_of_root;
  std::vector<std::vector<int>> comp_vertices;
  for (int v = 0; v < nv; ++v) {
    int root = uf.find(v);
    auto [it, fresh] = comp_of_root.emplace(root, static_cast<int>(comp_vertices.size()));
    if (fresh) comp_vertices.emplace_back();
    comp_vertices[it->second].push_back(v);
  }
  const size_t nc = comp_vertices.size();
  std::vector<std::map<int, uint8_t>> masks(nc);
  std::vector<char> has_private(nc, 0);
  for (size_t c = 0; c < nc; ++c)
    for (int v : comp_vertices[c]) masks[c][vnode[v]];
  for (const EdgeUse& u : uses) {
    int c = comp_of_root.at(uf.find(u.va));
    int j = r.find(step(r.nodes[u.node], direction(u.dir)));
    masks[c][u.node] |= uint8_t(1u << u.dir);
    masks[c][j] |= uint8_t(1u << ((u.dir + 3) % 6));
    if (!u.shared) has_private[c] = 1;
  }

  std::vector<Region> parts;
  std::vector<char> degenerate;
  for (size_t c = 0; c < nc; ++c) {
    Region part;
    for (auto& [i, m] : masks[c]) {
      part.nodes.push_back(r.nodes[i]);
      part.dirs.push_back(m);
    }
    parts.push_back(std::move(part));
    degenerate.push_back(!has_private[c]);
  }

  // Drop pieces that only repeat cut-line edges of other pieces.
  std::set<GridPoint> covered;
  for (size_t c = 0; c < nc; ++c)
    if (!degenerate[c]) covered.insert(parts[c].nodes.begin(), parts[c].nodes.end());
  std::vector<Region> kept;
  for (size_t c = 0; c < nc; ++c) {
    if (degenerate[c]) {
      bool all_covered = std::all_of(parts[c].nodes.begin(), parts[c].nodes.end(),
                                     [&](const GridPoint& p) { return covered.count(p) != 0; });
      if (all_covered) continue;
    }
    bool dup = std::any_of(kept.begin(), kept.end(),
                           [&](const Region& k) { return same_shape(k, parts[c]); });
    if (!dup) kept.push_back(std::move(parts[c]));
  }

  std::vector<size_t> order(kept.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<SortKey> keys;
  for (const Region& k : kept) keys.push_back(key_of(k));
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return keys[x] < keys[y]; });

  std::vector<Region> out;
  for (size_t k = 0; k < order.size(); ++k) {
    Region child = std::move(kept[order[k]]);
    child.id = order.size() == 1 ? r.id : r.id + "." + std::to_string(k);
    for (const Gate& g : r.gates) {
      Gate h = g;
      h.nodes.clear();
      for (const GridPoint& p : g.nodes)
        if (child.contains(p)) h.nodes.push_back(p);
      if (!h.nodes.empty()) child.gates.push_back(std::move(h));
    }
    for (const CutInfo& info : infos) {
      Gate h;
      h.axis = info.axis;
      h.line = line_index(info.chain.front(), info.axis);
      h.side = -1;
      for (const GridPoint& p : info.chain) {
        if (!child.contains(p)) continue;
        h.nodes.push_back(p);
        if (h.side >= 0) continue;
        uint8_t m = child.mask(p);
        for (int d = 0; d < 6 && h.side < 0; ++d)
          if ((m >> d) & 1) h.side = side_of(direction(d), info.axis);
      }
      if (h.nodes.empty()) continue;
      if (h.side < 0) h.side = 0;
      child.gates.push_back(std::move(h));
    }
    normalize_gates(child.gates);
    for (Gate& g : child.gates) g.region_id = child.id;
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<Region> split_at_portal(const Region& r, const Portal& portal) {
  return split_at_portal_and_nodes(r, portal, {});
}

std::vector<Region> split_at_portal_and_nodes(const Region& r, const Portal& portal,
                                              const std::vector<SplitNodeSpec>& specs) {
  if (portal.nodes.empty() || !r.contains(portal.nodes.front()))
    throw std::invalid_argument("portal not within region");
  auto chain = portal_through(r, portal.nodes.front(), portal.axis);
  auto sorted_chain = chain, sorted_portal = portal.nodes;
  std::sort(sorted_chain.begin(), sorted_chain.end());
  std::sort(sorted_portal.begin(), sorted_portal.end());
  if (sorted_chain != sorted_portal) throw std::invalid_argument("portal not within region");
  for (const SplitNodeSpec& s : specs) {
    if (!std::binary_search(sorted_chain.begin(), sorted_chain.end(), s.node))
      throw std::invalid_argument("split node " + to_string(s.node) + " is not on the portal");
    auto d = direction_between(s.node, s.empty_point);
    if (!d || side_of(*d, portal.axis) < 0)
      throw std::invalid_argument("split point is not a cross-axis neighbor");
    if (r.has_edge(s.node, *d))
      throw std::invalid_argument("split point " + to_string(s.empty_point) + " is occupied");
  }
  return split_region(r, {Cut{portal.axis, portal.nodes.front(), specs}});
}

std::vector<Region> split_region_at_node(const Region& r, const SplitNodeSpec& spec) {
  for (const Gate& g : r.gates) {
    if (g.axis != Axis::Y) continue;
    if (std::find(g.nodes.begin(), g.nodes.end(), spec.node) == g.nodes.end()) continue;
    return split_region(r, {Cut{Axis::Y, spec.node, {spec}}});
  }
  throw std::invalid_argument("node " + to_string(spec.node) + " is not on a gate");
}

}  // namespace amoebot
