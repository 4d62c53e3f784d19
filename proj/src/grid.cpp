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

#include "amoebot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace amoebot {

namespace {

constexpr std::array<GridPoint, 6> kOffsets = {
    GridPoint{1, 0}, GridPoint{0, 1}, GridPoint{-1, 1},
    GridPoint{-1, 0}, GridPoint{0, -1}, GridPoint{1, -1}};

// Dense occupancy grid over a padded bounding box.
struct Box {
  int a0, b0, w, h;
  explicit Box(const std::vector<GridPoint>& pts) {
    int amin = pts[0].a, amax = pts[0].a, bmin = pts[0].b, bmax = pts[0].b;
    for (const GridPoint& p : pts) {
      amin = std::min(amin, p.a);
      amax = std::max(amax, p.a);
      bmin = std::min(bmin, p.b);
      bmax = std::max(bmax, p.b);
    }
    a0 = amin - 1;
    b0 = bmin - 1;
    w = amax - amin + 3;
    h = bmax - bmin + 3;
  }
  bool inside(GridPoint p) const {
    return p.a >= a0 && p.a < a0 + w && p.b >= b0 && p.b < b0 + h;
  }
  int id(GridPoint p) const { return (p.b - b0) * w + (p.a - a0); }
  GridPoint point(int id) const { return {a0 + id % w, b0 + id / w}; }
  bool border(GridPoint p) const {
    return p.a == a0 || p.b == b0 || p.a == a0 + w - 1 || p.b == b0 + h - 1;
  }
};

}  // namespace

const char* name(Direction d) {
  static const char* kNames[] = {"E", "NNE", "NNW", "W", "SSW", "SSE"};
  return kNames[index(d)];
}

const char* name(Axis q) {
  static const char* kNames[] = {"x", "y", "z"};
  return kNames[static_cast<int>(q)];
}

GridPoint offset(Direction d) { return kOffsets[index(d)]; }

std::optional<Direction> direction_between(GridPoint from, GridPoint to) {
  GridPoint d = to - from;
  for (int i = 0; i < 6; ++i)
    if (kOffsets[i] == d) return direction(i);
  return std::nullopt;
}

std::string to_string(GridPoint p) {
  return "(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

std::pair<double, double> position(GridPoint p) {
  return {p.a + 0.5 * p.b, std::sqrt(3.0) / 2.0 * p.b};
}

Direction axis_direction(Axis q) { return direction(static_cast<int>(q)); }

Axis axis_of(Direction d) { return static_cast<Axis>(index(d) % 3); }

int line_index(GridPoint p, Axis q) {
  switch (q) {
    case Axis::X: return p.b;
    case Axis::Y: return p.a;
    case Axis::Z: return p.a + p.b;
  }
  return 0;
}

int along(GridPoint p, Axis q) { return q == Axis::X ? p.a : p.b; }

int side_of(Direction d, Axis q) {
  int k = (index(d) - index(axis_direction(q)) + 6) % 6;
  if (k == 0 || k == 3) return -1;
  return k < 3 ? 0 : 1;
}

int upper_side(Axis q) { return q == Axis::X ? 0 : 1; }

int64_t heading_value(GridPoint p, Heading h) {
  const int64_t a = p.a, b = p.b;
  switch (h) {
    case Heading::E: return 2 * a + b;
    case Heading::W: return -(2 * a + b);
    case Heading::NNE: return a + 2 * b;
    case Heading::SSW: return -(a + 2 * b);
    case Heading::NNW: return b - a;
    case Heading::SSE: return a - b;
    case Heading::WNW: return -a;
    case Heading::ESE: return a;
    case Heading::N: return b;
    case Heading::S: return -b;
  }
  return 0;
}

Heading heading_of(Direction d) { return static_cast<Heading>(index(d)); }

// ---------------------------------------------------------------------------

bool is_connected(const std::vector<GridPoint>& nodes) {
  if (nodes.empty()) return false;
  std::unordered_map<GridPoint, bool, GridPointHash> seen;
  for (const GridPoint& p : nodes) seen[p] = false;
  std::vector<GridPoint> stack = {nodes[0]};
  seen[nodes[0]] = true;
  size_t count = 1;
  while (!stack.empty()) {
    GridPoint p = stack.back();
    stack.pop_back();
    for (const GridPoint& o : kOffsets) {
      auto it = seen.find(p + o);
      if (it != seen.end() && !it->second) {
        it->second = true;
        ++count;
        stack.push_back(p + o);
      }
    }
  }
  return count == seen.size();
}

AmoebotStructure::AmoebotStructure(std::vector<GridPoint> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("structure must contain at least one node");
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw std::invalid_argument("duplicate grid point in structure");
  if (!is_connected(nodes_)) throw std::invalid_argument("structure is not connected");
  index_.reserve(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = static_cast<int>(i);
  nbr_.resize(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (int d = 0; d < 6; ++d) nbr_[i][d] = index_of(nodes_[i] + kOffsets[d]);
}

int AmoebotStructure::index_of(GridPoint p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::pair<Direction, GridPoint>> AmoebotStructure::neighbors(GridPoint p) const {
  int i = index_of(p);
  if (i < 0) throw std::domain_error("point " + to_string(p) + " is not in the structure");
  std::vector<std::pair<Direction, GridPoint>> out;
  for (int d = 0; d < 6; ++d)
    if (nbr_[i][d] >= 0) out.emplace_back(direction(d), nodes_[nbr_[i][d]]);
  return out;
}

// ---------------------------------------------------------------------------

HoleSet find_holes(const AmoebotStructure& s) {
  const Box box(s.nodes());
  // 0 = free, 1 = occupied, 2 = outer, 3+ = inner hole index + 3
  std::vector<int> cell(static_cast<size_t>(box.w) * box.h, 0);
  for (const GridPoint& p : s.nodes()) cell[box.id(p)] = 1;

  auto flood = [&](int start, int label) {
    std::vector<int> stack = {start};
    cell[start] = label;
    while (!stack.empty()) {
      GridPoint p = box.point(stack.back());
      stack.pop_back();
      for (const GridPoint& o : kOffsets) {
        GridPoint q = p + o;
        if (!box.inside(q)) continue;
        int id = box.id(q);
        if (cell[id] == 0) {
          cell[id] = label;
          stack.push_back(id);
        }
      }
    }
  };
  // The padded border is free and connected, so one fill covers the outer hole.
  flood(box.id({box.a0, box.b0}), 2);
  int next = 3;
  for (int id = 0; id < static_cast<int>(cell.size()); ++id)
    if (cell[id] == 0) flood(id, next++);

  HoleSet out;
  out.outer.kind = Hole::Kind::Outer;
  out.inner.resize(next - 3);
  std::vector<std::set<GridPoint>> boundary(next - 2);
  std::set<GridPoint> outer_cells;
  for (const GridPoint& p : s.nodes()) {
    for (const GridPoint& o : kOffsets) {
      GridPoint q = p + o;
      int label = cell[box.id(q)];
      if (label < 2) continue;
      boundary[label - 2].insert(p);
      if (label == 2) outer_cells.insert(q);
    }
  }
  for (int id = 0; id < static_cast<int>(cell.size()); ++id)
    if (cell[id] >= 3) out.inner[cell[id] - 3].cells.push_back(box.point(id));
  out.outer.cells.assign(outer_cells.begin(), outer_cells.end());
  out.outer.boundary.assign(boundary[0].begin(), boundary[0].end());
  for (size_t h = 0; h < out.inner.size(); ++h) {
    Hole& hole = out.inner[h];
    hole.kind = Hole::Kind::Inner;
    std::sort(hole.cells.begin(), hole.cells.end());
    hole.boundary.assign(boundary[h + 1].begin(), boundary[h + 1].end());
  }
  std::sort(out.inner.begin(), out.inner.end(),
            [](const Hole& x, const Hole& y) { return x.cells.front() < y.cells.front(); });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<GridPoint> BoundaryCycle::nodes() const {
  std::vector<GridPoint> out;
  out.reserve(steps.size());
  for (const BoundaryStep& s : steps) out.push_back(s.node);
  return out;
}

namespace {

// Maximal runs of empty directions around node i, keyed by first direction.
std::vector<BoundaryStep> runs_at(const AmoebotStructure& s, int i) {
  const auto& nb = s.neighbor_indices(i);
  std::vector<BoundaryStep> out;
  int empty = 0;
  for (int d = 0; d < 6; ++d) empty += nb[d] < 0;
  if (empty == 0) return out;
  if (empty == 6) return {{s.nodes()[i], Direction::E, 6}};
  for (int d = 0; d < 6; ++d) {
    if (nb[d] >= 0 || nb[(d + 5) % 6] < 0) continue;
    int len = 0;
    while (nb[(d + len) % 6] < 0) ++len;
    out.push_back({s.nodes()[i], direction(d), len});
  }
  return out;
}

BoundaryStep successor(const AmoebotStructure& s, const BoundaryStep& st) {
  if (st.run_length == 6) return st;
  int last = index(st.first_empty) + st.run_length - 1;
  GridPoint w = step(st.node, direction(last + 1));
  GridPoint e = step(st.node, direction(last));
  int dir = index(*direction_between(w, e));
  for (const BoundaryStep& r : runs_at(s, s.index_of(w))) {
    int k = (dir - index(r.first_empty) + 6) % 6;
    if (k < r.run_length) return r;
  }
  throw std::logic_error("wall following lost the boundary");
}

}  // namespace

std::vector<BoundaryCycle> boundary_cycles(const AmoebotStructure& s) {
  return boundary_cycles(s, find_holes(s));
}

std::vector<BoundaryCycle> boundary_cycles(const AmoebotStructure& s, const HoleSet& holes) {
  std::unordered_map<GridPoint, int, GridPointHash> hole_of;
  for (const GridPoint& c : holes.outer.cells) hole_of[c] = -1;
  for (size_t h = 0; h < holes.inner.size(); ++h)
    for (const GridPoint& c : holes.inner[h].cells) hole_of[c] = static_cast<int>(h);

  std::vector<BoundaryStep> all;
  for (size_t i = 0; i < s.size(); ++i) {
    auto r = runs_at(s, static_cast<int>(i));
    all.insert(all.end(), r.begin(), r.end());
  }
  std::sort(all.begin(), all.end());
  std::set<BoundaryStep> seen;
  std::vector<BoundaryCycle> cycles;
  for (const BoundaryStep& start : all) {
    if (seen.count(start)) continue;
    BoundaryCycle c;
    int h = hole_of.at(step(start.node, start.first_empty));
    c.hole = h;
    c.kind = h < 0 ? Hole::Kind::Outer : Hole::Kind::Inner;
    BoundaryStep cur = start;
    do {
      seen.insert(cur);
      c.steps.push_back(cur);
      cur = successor(s, cur);
    } while (!(cur == start));
    cycles.push_back(std::move(c));
  }
  std::stable_sort(cycles.begin(), cycles.end(), [](const BoundaryCycle& x, const BoundaryCycle& y) {
    return x.hole < y.hole;
  });
  return cycles;
}

}  // namespace amoebot
