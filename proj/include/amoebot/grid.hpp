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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace amoebot {

// Lattice directions in counter-clockwise order, 60 degrees apart.
enum class Direction : uint8_t { E = 0, NNE = 1, NNW = 2, W = 3, SSW = 4, SSE = 5 };

inline constexpr std::array<Direction, 6> kDirections = {
    Direction::E, Direction::NNE, Direction::NNW,
    Direction::W, Direction::SSW, Direction::SSE};

constexpr int index(Direction d) { return static_cast<int>(d); }
constexpr Direction direction(int i) {
  return static_cast<Direction>(((i % 6) + 6) % 6);
}
constexpr Direction rotate(Direction d, int steps) {
  return direction(index(d) + steps);
}
constexpr Direction opposite(Direction d) { return rotate(d, 3); }
const char* name(Direction d);

struct GridPoint {
  int a = 0;  // steps along E
  int b = 0;  // steps along NNE
  auto operator<=>(const GridPoint&) const = default;
};

GridPoint offset(Direction d);
inline GridPoint operator+(GridPoint p, GridPoint q) { return {p.a + q.a, p.b + q.b}; }
inline GridPoint operator-(GridPoint p, GridPoint q) { return {p.a - q.a, p.b - q.b}; }
inline GridPoint step(GridPoint p, Direction d) { return p + offset(d); }
// Direction of `to` seen from `from`, if they are grid neighbors.
std::optional<Direction> direction_between(GridPoint from, GridPoint to);
std::string to_string(GridPoint p);

struct GridPointHash {
  size_t operator()(const GridPoint& p) const noexcept {
    return std::hash<int64_t>()((static_cast<int64_t>(p.a) << 32) ^
                                static_cast<uint32_t>(p.b));
  }
};

// Rendering-plane embedding: a*(1,0) + b*(1/2, sqrt(3)/2).
std::pair<double, double> position(GridPoint p);

// Axes. Portals along an axis are chains of edges parallel to it.
enum class Axis : uint8_t { X = 0, Y = 1, Z = 2 };
inline constexpr std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};
const char* name(Axis q);

// Positive chain direction of an axis: X -> E, Y -> NNE, Z -> NNW.
Direction axis_direction(Axis q);
Axis axis_of(Direction d);
// Index of the axis-parallel grid line through p (x: b, y: a, z: a+b).
int line_index(GridPoint p, Axis q);
// Position of p along its line, increasing in the positive chain direction.
int along(GridPoint p, Axis q);

// The two sides of an axis line. Side 0 holds directions p+1, p+2 and side 1
// holds p+4, p+5 where p is the axis direction. For Y this is WNW / ESE.
int side_of(Direction d, Axis q);  // -1 for directions along the axis
// Side on which the line index grows (x: NNE/NNW, y: E/SSE, z: E/NNE).
int upper_side(Axis q);

// Compass headings used for orderings. Lattice headings plus the two normals
// of y-portals (WNW, ESE) and plain north/south.
enum class Heading : uint8_t { E, NNE, NNW, W, SSW, SSE, WNW, ESE, N, S };
// Linear functional that grows when moving towards the heading.
int64_t heading_value(GridPoint p, Heading h);
Heading heading_of(Direction d);

// ---------------------------------------------------------------------------

class AmoebotStructure {
 public:
  AmoebotStructure() = default;
  // Validates connectivity, n >= 1 and uniqueness; throws std::invalid_argument.
  explicit AmoebotStructure(std::vector<GridPoint> nodes);

  size_t size() const { return nodes_.size(); }
  const std::vector<GridPoint>& nodes() const { return nodes_; }
  bool contains(GridPoint p) const { return index_.count(p) != 0; }
  // Dense index in sorted order, or -1.
  int index_of(GridPoint p) const;
  // Neighbor index per direction, -1 when the grid point is empty.
  const std::array<int, 6>& neighbor_indices(int i) const { return nbr_[i]; }

  // Occupied neighbors in direction order E, NNE, NNW, W, SSW, SSE.
  // Throws std::domain_error if p is not part of the structure.
  std::vector<std::pair<Direction, GridPoint>> neighbors(GridPoint p) const;

 private:
  std::vector<GridPoint> nodes_;
  std::unordered_map<GridPoint, int, GridPointHash> index_;
  std::vector<std::array<int, 6>> nbr_;
};

bool is_connected(const std::vector<GridPoint>& nodes);

struct Hole {
  enum class Kind : uint8_t { Inner, Outer };
  Kind kind = Kind::Inner;
  // Inner: all cells. Outer: only the unoccupied cells adjacent to the
  // structure, since the outer hole is unbounded.
  std::vector<GridPoint> cells;
  std::vector<GridPoint> boundary;  // occupied nodes adjacent to the hole
};

struct HoleSet {
  Hole outer;
  std::vector<Hole> inner;  // ordered by minimal cell
};

HoleSet find_holes(const AmoebotStructure& s);

// One visit of the wall-following walk: the node and the first (in
// counter-clockwise order) of the maximal run of empty directions that faces
// the hole.
struct BoundaryStep {
  GridPoint node;
  Direction first_empty;
  int run_length = 0;
  auto operator<=>(const BoundaryStep&) const = default;
};

struct BoundaryCycle {
  Hole::Kind kind = Hole::Kind::Outer;
  int hole = -1;  // index into HoleSet::inner, -1 for the outer hole
  std::vector<BoundaryStep> steps;
  std::vector<GridPoint> nodes() const;
};

// Outer cycle first, then inner cycles in hole order.
std::vector<BoundaryCycle> boundary_cycles(const AmoebotStructure& s);
std::vector<BoundaryCycle> boundary_cycles(const AmoebotStructure& s, const HoleSet& holes);

}  // namespace amoebot
