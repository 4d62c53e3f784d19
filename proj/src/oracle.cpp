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

#include "amoebot/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "amoebot/portals.hpp"

namespace amoebot {

std::vector<int> structure_bfs(const AmoebotStructure& s, GridPoint u) {
  std::vector<int> dist(s.size(), -1);
  std::vector<int> queue;
  queue.reserve(s.size());
  const int src = s.index_of(u);
  dist[src] = 0;
  queue.push_back(src);
  for (size_t h = 0; h < queue.size(); ++h) {
    int x = queue[h];
    for (int y : s.neighbor_indices(x))
      if (y >= 0 && dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

std::vector<GridPoint> shortest_path_nodes(const AmoebotStructure& s, GridPoint u, GridPoint v) {
  auto du = structure_bfs(s, u);
  auto dv = structure_bfs(s, v);
  const int total = du[s.index_of(v)];
  std::vector<GridPoint> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (du[i] + dv[i] == total) out.push_back(s.nodes()[i]);
  return out;
}

namespace {

// For source u: walk the BFS layers backwards and mark every node that lies
// on a shortest path from u to some region node.
std::optional<ConvexityWitness> check_source(const AmoebotStructure& s, const std::vector<char>& in_region,
                                             int src) {
  const size_t n = s.size();
  std::vector<int> dist(n, -1), order;
  order.reserve(n);
  dist[src] = 0;
  order.push_back(src);
  for (size_t h = 0; h < order.size(); ++h) {
    int x = order[h];
    for (int y : s.neighbor_indices(x))
      if (y >= 0 && dist[y] < 0) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
  }
  std::vector<char> need(n, 0);
  for (size_t k = order.size(); k-- > 0;) {
    int x = order[k];
    if (in_region[x]) {
      need[x] = 1;
      continue;
    }
    for (int y : s.neighbor_indices(x))
      if (y >= 0 && dist[y] == dist[x] + 1 && need[y]) {
        need[x] = 1;
        break;
      }
  }
  for (int x : order) {
    if (!need[x] || in_region[x]) continue;
    // Follow successors down to a region node to build the witness.
    int y = x;
    while (!in_region[y]) {
      for (int z : s.neighbor_indices(y))
        if (z >= 0 && dist[z] == dist[y] + 1 && need[z]) {
          y = z;
          break;
        }
    }
    return ConvexityWitness{s.nodes()[src], s.nodes()[y], s.nodes()[x]};
  }
  return std::nullopt;
}

}  // namespace

ConvexityResult is_geodesically_convex(const AmoebotStructure& s, const std::vector<GridPoint>& region,
                                       size_t exhaustive_limit, size_t samples) {
  ConvexityResult res;
  std::vector<char> in_region(s.size(), 0);
  std::vector<int> ids;
  for (const GridPoint& p : region) {
    int i = s.index_of(p);
    if (!in_region[i]) ids.push_back(i);
    in_region[i] = 1;
  }
  std::sort(ids.begin(), ids.end());
  if (ids.size() > exhaustive_limit) {
    res.exhaustive = false;
    std::mt19937_64 rng(0x5eedULL + ids.size());
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(std::min(samples, ids.size()));
  }
  for (int src : ids) {
    if (auto w = check_source(s, in_region, src)) {
      res.convex = false;
      res.witness = w;
      return res;
    }
  }
  return res;
}

ConvexityResult is_geodesically_convex(const AmoebotStructure& s, const Region& region,
                                       size_t exhaustive_limit, size_t samples) {
  return is_geodesically_convex(s, region.nodes, exhaustive_limit, samples);
}

bool is_simple(const std::vector<GridPoint>& nodes) {
  if (nodes.empty()) return true;
  int amin = nodes[0].a, amax = amin, bmin = nodes[0].b, bmax = bmin;
  for (const GridPoint& p : nodes) {
    amin = std::min(amin, p.a);
    amax = std::max(amax, p.a);
    bmin = std::min(bmin, p.b);
    bmax = std::max(bmax, p.b);
  }
  // Padded box; everything reachable from its corner is outside.
  amin -= 1, bmin -= 1, amax += 1, bmax += 1;
  const int w = amax - amin + 1, h = bmax - bmin + 1;
  std::vector<char> cell(static_cast<size_t>(w) * h, 0);  // 1 occupied, 2 outside
  auto at = [&](int a, int b) -> char& { return cell[static_cast<size_t>(b - bmin) * w + (a - amin)]; };
  for (const GridPoint& p : nodes) at(p.a, p.b) = 1;
  std::vector<GridPoint> stack = {{amin, bmin}};
  at(amin, bmin) = 2;
  size_t outside = 1;
  while (!stack.empty()) {
    GridPoint p = stack.back();
    stack.pop_back();
    for (Direction d : kDirections) {
      GridPoint q = step(p, d);
      if (q.a < amin || q.a > amax || q.b < bmin || q.b > bmax || at(q.a, q.b)) continue;
      at(q.a, q.b) = 2;
      ++outside;
      stack.push_back(q);
    }
  }
  std::set<GridPoint> distinct(nodes.begin(), nodes.end());
  return outside + distinct.size() == cell.size();
}

bool is_simple(const AmoebotStructure& s) { return is_simple(s.nodes()); }
bool is_simple(const Region& r) { return is_simple(r.nodes); }

bool distance_identity_holds(const Region& r, size_t exhaustive_limit, size_t samples) {
  const size_t n = r.size();
  std::array<PortalGraph, 3> pg = {portal_graph(r, Axis::X), portal_graph(r, Axis::Y),
                                   portal_graph(r, Axis::Z)};
  std::vector<std::array<int, 6>> nbr(n);
  for (size_t i = 0; i < n; ++i)
    for (int d = 0; d < 6; ++d)
      nbr[i][d] = ((r.dirs[i] >> d) & 1) ? r.find(step(r.nodes[i], direction(d))) : -1;
  std::vector<size_t> sources(n);
  for (size_t i = 0; i < n; ++i) sources[i] = i;
  if (n > exhaustive_limit) {
    std::mt19937_64 rng(0xd15ULL + n);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(samples);
  }
  for (size_t src : sources) {
    std::vector<int> dist(n, -1), queue = {static_cast<int>(src)};
    dist[src] = 0;
    for (size_t h = 0; h < queue.size(); ++h)
      for (int y : nbr[queue[h]])
        if (y >= 0 && dist[y] < 0) {
          dist[y] = dist[queue[h]] + 1;
          queue.push_back(y);
        }
    std::array<std::vector<int>, 3> dq;
    for (int k = 0; k < 3; ++k) dq[k] = pg[k].distances({pg[k].of(r.nodes[src])});
    for (size_t v = 0; v < n; ++v) {
      int sum = 0;
      for (int k = 0; k < 3; ++k) sum += dq[k][pg[k].of(r.nodes[v])];
      if (dist[v] < 0 || 2 * dist[v] != sum) return false;
    }
  }
  return true;
}

std::vector<GridPoint> global_maxima_oracle(const std::vector<GridPoint>& region, Heading d) {
  std::vector<GridPoint> out;
  size_t best = region.size() + 1;
  for (const GridPoint& w : region) {
    const int64_t fw = heading_value(w, d);
    size_t count = 0;
    for (const GridPoint& u : region)
      if (heading_value(u, d) > fw) ++count;
    if (count < best) {
      best = count;
      out.clear();
    }
    if (count == best) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool VerificationReport::simple_ok() const {
  return std::all_of(regions.begin(), regions.end(), [](const RegionCheck& c) { return c.simple_ok; });
}
bool VerificationReport::convex_ok() const {
  return std::all_of(regions.begin(), regions.end(), [](const RegionCheck& c) { return c.convex_ok; });
}
bool VerificationReport::knowledge_ok() const {
  return std::all_of(regions.begin(), regions.end(),
                     [](const RegionCheck& c) { return c.knowledge_ok && c.connected; });
}
bool VerificationReport::all_ok() const {
  return coverage_ok && simple_ok() && convex_ok() && knowledge_ok() && phase1_bound_ok && gate_bound_ok &&
         distance_identity_ok;
}

VerificationReport verify_decomposition(const AmoebotStructure& s, const Decomposition& d,
                                        const VerifyOptions& options) {
  VerificationReport rep;
  rep.holes = d.holes;
  rep.region_count = d.regions.size();
  rep.phase1_regions = d.simple_regions.size();
  rep.gate_count = d.gates.size();
  rep.phase1_bound_ok = rep.phase1_regions <= 3 * rep.holes + 1;
  rep.gate_bound_ok = rep.gate_count <= 6 * rep.holes;
  rep.region_constant =
      rep.holes == 0 ? 0.0 : static_cast<double>(rep.region_count - 1) / static_cast<double>(rep.holes);

  std::vector<char> covered(s.size(), 0);
  for (const Region& r : d.regions) {
    RegionCheck c;
    c.id = r.id;
    c.size = r.size();
    for (size_t i = 0; i < r.size(); ++i) {
      if (!s.contains(r.nodes[i])) {
        c.knowledge_ok = false;
        continue;
      }
      covered[s.index_of(r.nodes[i])] = 1;
      for (int k = 0; k < 6; ++k)
        if (((r.dirs[i] >> k) & 1) && !r.contains(step(r.nodes[i], direction(k)))) c.knowledge_ok = false;
    }
    c.connected = c.knowledge_ok && is_region_connected(r);
    c.simple_ok = is_simple(r);
    if (options.check_convexity && c.knowledge_ok) {
      auto res = is_geodesically_convex(s, r, options.exhaustive_limit);
      c.convex_ok = res.convex;
      c.convex_exhaustive = res.exhaustive;
      c.witness = res.witness;
    }
    if (options.check_distance_identity && c.connected && c.simple_ok) {
      c.distance_identity_ok = distance_identity_holds(r);
      rep.distance_identity_ok = rep.distance_identity_ok && c.distance_identity_ok;
    }
    rep.regions.push_back(std::move(c));
  }
  rep.coverage_ok = std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
  return rep;
}

}  // namespace amoebot
