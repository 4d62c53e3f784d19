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

#include "amoebot/portals.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace amoebot {

std::vector<Portal> compute_portals(const Region& r, Axis q) {
  const Direction fwd = axis_direction(q), back = opposite(fwd);
  std::vector<Portal> out;
  // Start a chain at every node without a retained backward edge.
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    if ((r.dirs[i] >> index(back)) & 1) continue;
    Portal p;
    p.axis = q;
    GridPoint cur = r.nodes[i];
    p.nodes.push_back(cur);
    while (r.has_edge(cur, fwd)) {
      cur = step(cur, fwd);
      p.nodes.push_back(cur);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Portal& x, const Portal& y) {
    return *std::min_element(x.nodes.begin(), x.nodes.end()) <
           *std::min_element(y.nodes.begin(), y.nodes.end());
  });
  for (size_t k = 0; k < out.size(); ++k) out[k].id = static_cast<int>(k);
  return out;
}

PortalGraph portal_graph(const Region& r, Axis q) {
  PortalGraph g;
  g.axis = q;
  g.portals = compute_portals(r, q);
  for (const Portal& p : g.portals)
    for (const GridPoint& v : p.nodes) g.portal_of[v] = p.id;
  g.adj.resize(g.portals.size());
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    int pi = g.portal_of.at(r.nodes[i]);
    for (int d = 0; d < 6; ++d) {
      if (!((r.dirs[i] >> d) & 1) || axis_of(direction(d)) == q) continue;
      int pj = g.portal_of.at(step(r.nodes[i], direction(d)));
      if (pi < pj) g.edges.emplace_back(pi, pj);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

int PortalGraph::of(GridPoint p) const { return portal_of.at(p); }

std::vector<int> PortalGraph::distances(const std::vector<int>& sources) const {
  std::vector<int> dist(portals.size(), -1);
  std::deque<int> queue;
  for (int s : sources)
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

bool PortalGraph::connected() const {
  if (portals.empty()) return false;
  auto d = distances({0});
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

bool PortalGraph::is_tree() const {
  return connected() && edges.size() + 1 == portals.size();
}

int portal_distance(const PortalGraph& g, GridPoint u, GridPoint v) {
  return g.distances({g.of(u)})[g.of(v)];
}

int portal_distance(const Region& r, GridPoint u, GridPoint v, Axis q) {
  if (!r.contains(u) || !r.contains(v)) throw std::domain_error("point outside region");
  return portal_distance(portal_graph(r, q), u, v);
}

}  // namespace amoebot
