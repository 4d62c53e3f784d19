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

#include <optional>
#include <string>
#include <vector>

#include "amoebot/decompose.hpp"
#include "amoebot/region.hpp"

namespace amoebot {

// BFS distances in the structure from u, indexed like s.nodes() (-1 when the
// point is unreachable, which cannot happen for a valid structure).
std::vector<int> structure_bfs(const AmoebotStructure& s, GridPoint u);

// Every node on some shortest u-v path, sorted.
std::vector<GridPoint> shortest_path_nodes(const AmoebotStructure& s, GridPoint u, GridPoint v);

struct ConvexityWitness {
  GridPoint u, v, w;  // w lies on a shortest u-v path but outside the region
};

struct ConvexityResult {
  bool convex = true;
  std::optional<ConvexityWitness> witness;
  bool exhaustive = true;  // false when only sampled sources were checked
};

inline constexpr size_t kExhaustiveConvexityLimit = 3000;

// Checks all sources when the region has at most `exhaustive_limit` nodes,
// otherwise `samples` sources drawn with a fixed seed.
ConvexityResult is_geodesically_convex(const AmoebotStructure& s, const std::vector<GridPoint>& region,
                                       size_t exhaustive_limit = kExhaustiveConvexityLimit,
                                       size_t samples = 256);
ConvexityResult is_geodesically_convex(const AmoebotStructure& s, const Region& region,
                                       size_t exhaustive_limit = kExhaustiveConvexityLimit,
                                       size_t samples = 256);

// No bounded component in the complement of the node set.
bool is_simple(const std::vector<GridPoint>& nodes);
bool is_simple(const AmoebotStructure& s);
bool is_simple(const Region& r);

// d_R(u,v) = (d_x + d_y + d_z) / 2 over the region's graph and portal graphs.
// Exhaustive up to `exhaustive_limit` nodes, sampled sources beyond.
bool distance_identity_holds(const Region& r, size_t exhaustive_limit = 400, size_t samples = 64);

// Nodes minimizing the number of region nodes strictly beyond them in
// direction d. Brute force.
std::vector<GridPoint> global_maxima_oracle(const std::vector<GridPoint>& region, Heading d);

struct RegionCheck {
  std::string id;
  size_t size = 0;
  bool connected = true;
  bool simple_ok = true;
  bool convex_ok = true;
  bool convex_exhaustive = true;
  std::optional<ConvexityWitness> witness;
  bool knowledge_ok = true;  // retained edges are induced edges of the structure
  bool distance_identity_ok = true;
};

struct VerificationReport {
  bool coverage_ok = true;
  std::vector<RegionCheck> regions;
  size_t region_count = 0, phase1_regions = 0, gate_count = 0, holes = 0;
  bool phase1_bound_ok = true;  // phase-1 regions <= 3|H| + 1
  bool gate_bound_ok = true;    // gates <= 6|H|
  // (final regions - 1) / |H|, or 0 without holes.
  double region_constant = 0.0;
  bool distance_identity_ok = true;

  bool simple_ok() const;
  bool convex_ok() const;
  bool knowledge_ok() const;
  bool all_ok() const;
};

struct VerifyOptions {
  bool check_convexity = true;
  bool check_distance_identity = true;
  size_t exhaustive_limit = kExhaustiveConvexityLimit;
};

VerificationReport verify_decomposition(const AmoebotStructure& s, const Decomposition& d,
                                        const VerifyOptions& options = {});

}  // namespace amoebot
