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

#include "amoebot/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace amoebot {

namespace {

using PointSet = std::unordered_set<GridPoint, GridPointHash>;

int hex_distance(GridPoint p) { return std::max({std::abs(p.a), std::abs(p.b), std::abs(p.a + p.b)}); }

// Portable bounded draw; std distributions differ between standard libraries.
size_t draw(std::mt19937_64& rng, size_t k) { return static_cast<size_t>(rng() % k); }

// Removing p keeps connectivity and the hole count iff its occupied
// neighbors form one nonempty proper arc.
bool simple_point(const PointSet& occ, GridPoint p) {
  int arcs = 0, count = 0;
  for (int d = 0; d < 6; ++d) {
    bool here = occ.count(step(p, direction(d))) != 0;
    bool next = occ.count(step(p, direction(d + 1))) != 0;
    count += here;
    if (here && !next) ++arcs;
  }
  return count > 0 && count < 6 && arcs == 1;
}

std::vector<GridPoint> sorted_points(const PointSet& s) {
  std::vector<GridPoint> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

AmoebotStructure generate_random(int n, int holes, uint64_t seed, const GenerateOptions& options) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (holes < 0) throw std::invalid_argument("hole count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<int> hole_size(holes);
  int planned = 0;
  for (int& h : hole_size) {
    h = 1 + static_cast<int>(draw(rng, std::max(1, options.max_hole_cells)));
    planned += h;
  }
  // Every hole costs its cells plus a ring around it.
  if (holes > 0 && n < 7 * holes + 12) throw std::invalid_argument("too many holes for n");

  // Accretion.
  const size_t grow_to = static_cast<size_t>(n + planned);
  PointSet occ = {{0, 0}};
  std::vector<GridPoint> frontier;
  std::unordered_map<GridPoint, size_t, GridPointHash> frontier_pos;
  auto push_frontier = [&](GridPoint p) {
    if (occ.count(p) || frontier_pos.count(p)) return;
    frontier_pos[p] = frontier.size();
    frontier.push_back(p);
  };
  for (Direction d : kDirections) push_frontier(step({0, 0}, d));
  while (occ.size() < grow_to) {
    size_t k = draw(rng, frontier.size());
    GridPoint p = frontier[k];
    frontier_pos[frontier.back()] = k;
    frontier[k] = frontier.back();
    frontier.pop_back();
    frontier_pos.erase(p);
    occ.insert(p);
    for (Direction d : kDirections) push_frontier(step(p, d));
  }
  // Fill any enclosed pockets so that all holes below are carved on purpose.
  {
    AmoebotStructure grown(sorted_points(occ));
    for (const Hole& h : find_holes(grown).inner) occ.insert(h.cells.begin(), h.cells.end());
  }

  // Carving.
  std::unordered_map<GridPoint, int, GridPointHash> hole_of;
  auto free_around = [&](GridPoint p, int radius) {
    for (int da = -radius; da <= radius; ++da)
      for (int db = -radius; db <= radius; ++db) {
        GridPoint q{p.a + da, p.b + db};
        if (hex_distance({da, db}) <= radius && !occ.count(q)) return false;
      }
    return true;
  };
  for (int h = 0; h < holes; ++h) {
    std::vector<GridPoint> seeds;
    for (int radius : {3, 2, 1}) {
      for (const GridPoint& p : sorted_points(occ))
        if (free_around(p, radius)) seeds.push_back(p);
      if (!seeds.empty()) break;
    }
    if (seeds.empty()) throw std::invalid_argument("no room for another hole");
    GridPoint c = seeds[draw(rng, seeds.size())];
    occ.erase(c);
    hole_of[c] = h;
    std::vector<GridPoint> cells = {c};
    while (static_cast<int>(cells.size()) < hole_size[h]) {
      std::vector<GridPoint> cand;
      for (const GridPoint& x : cells)
        for (Direction d : kDirections) {
          GridPoint p = step(x, d);
          if (!occ.count(p) || !simple_point(occ, p)) continue;
          bool ok = true;
          for (Direction e : kDirections) {
            GridPoint q = step(p, e);
            if (occ.count(q)) continue;
            auto it = hole_of.find(q);
            if (it == hole_of.end() || it->second != h) ok = false;
          }
          if (ok) cand.push_back(p);
        }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      if (cand.empty()) break;
      GridPoint p = cand[draw(rng, cand.size())];
      occ.erase(p);
      hole_of[p] = h;
      cells.push_back(p);
    }
  }

  // Trim outer boundary nodes down to exactly n.
  while (occ.size() > static_cast<size_t>(n)) {
    std::vector<GridPoint> cand;
    for (const GridPoint& p : sorted_points(occ)) {
      if (!simple_point(occ, p)) continue;
      bool ok = true;
      for (Direction d : kDirections) {
        GridPoint q = step(p, d);
        if (!occ.count(q) && hole_of.count(q)) ok = false;
      }
      if (ok) cand.push_back(p);
    }
    if (cand.empty()) throw std::invalid_argument("cannot trim structure to n");
    std::shuffle(cand.begin(), cand.end(), rng);
    for (const GridPoint& p : cand) {
      if (occ.size() <= static_cast<size_t>(n)) break;
      // Earlier removals in this pass may have changed p's neighborhood.
      if (!simple_point(occ, p)) continue;
      bool ok = true;
      for (Direction d : kDirections) {
        GridPoint q = step(p, d);
        if (!occ.count(q) && hole_of.count(q)) ok = false;
      }
      if (ok) occ.erase(p);
    }
  }
  return AmoebotStructure(sorted_points(occ));
}

AmoebotStructure hexagon(int radius, GridPoint center) {
  std::vector<GridPoint> pts;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      if (hex_distance({a, b}) <= radius) pts.push_back(center + GridPoint{a, b});
  return AmoebotStructure(pts);
}

AmoebotStructure parallelogram(int width, int height, GridPoint origin) {
  std::vector<GridPoint> pts;
  for (int a = 0; a < width; ++a)
    for (int b = 0; b < height; ++b) pts.push_back(origin + GridPoint{a, b});
  return AmoebotStructure(pts);
}

AmoebotStructure annulus(int outer, int inner) {
  std::vector<GridPoint> pts;
  for (int a = -outer; a <= outer; ++a)
    for (int b = -outer; b <= outer; ++b) {
      int r = hex_distance({a, b});
      if (r <= outer && r > inner) pts.push_back({a, b});
    }
  return AmoebotStructure(pts);
}

}  // namespace amoebot
