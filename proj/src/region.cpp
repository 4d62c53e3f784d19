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

#include "amoebot/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace amoebot {

Edge make_edge(GridPoint u, GridPoint v) { return u < v ? Edge{u, v} : Edge{v, u}; }

int Region::find(GridPoint p) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), p);
  if (it == nodes.end() || *it != p) return -1;
  return static_cast<int>(it - nodes.begin());
}

uint8_t Region::mask(GridPoint p) const {
  int i = find(p);
  return i < 0 ? 0 : dirs[i];
}

std::vector<Edge> Region::edges() const {
  std::vector<Edge> out;
  for (size_t i = 0; i < nodes.size(); ++i)
    for (int d = 0; d < 6; ++d)
      if ((dirs[i] >> d) & 1) {
        GridPoint q = step(nodes[i], direction(d));
        if (nodes[i] < q) out.push_back({nodes[i], q});
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GridPoint> Region::neighbors(GridPoint p) const {
  std::vector<GridPoint> out;
  uint8_t m = mask(p);
  for (int d = 0; d < 6; ++d)
    if ((m >> d) & 1) out.push_back(step(p, direction(d)));
  return out;
}

Region whole_region(const AmoebotStructure& s, std::string id) {
  Region r;
  r.id = std::move(id);
  r.nodes = s.nodes();
  r.dirs.resize(r.nodes.size());
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    uint8_t m = 0;
    const auto& nb = s.neighbor_indices(static_cast<int>(i));
    for (int d = 0; d < 6; ++d)
      if (nb[d] >= 0) m |= uint8_t(1u << d);
    r.dirs[i] = m;
  }
  return r;
}

Region make_region(std::string id, std::vector<GridPoint> nodes, const std::vector<Edge>& edges) {
  Region r;
  r.id = std::move(id);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  r.nodes = std::move(nodes);
  r.dirs.assign(r.nodes.size(), 0);
  for (const Edge& e : edges) {
    auto d = direction_between(e.first, e.second);
    int i = r.find(e.first), j = r.find(e.second);
    if (!d || i < 0 || j < 0) throw std::invalid_argument("edge does not fit the node set");
    r.dirs[i] |= uint8_t(1u << index(*d));
    r.dirs[j] |= uint8_t(1u << index(opposite(*d)));
  }
  return r;
}

bool is_region_connected(const Region& r) {
  if (r.nodes.empty()) return false;
  std::vector<char> seen(r.nodes.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  size_t count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int d = 0; d < 6; ++d) {
      if (!((r.dirs[i] >> d) & 1)) continue;
      int j = r.find(step(r.nodes[i], direction(d)));
      if (j >= 0 && !seen[j]) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == r.nodes.size();
}

bool same_shape(const Region& x, const Region& y) {
  return x.nodes == y.nodes && x.dirs == y.dirs;
}

}  // namespace amoebot
