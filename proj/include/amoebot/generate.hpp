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

#include <cstdint>

#include "amoebot/grid.hpp"

namespace amoebot {

struct GenerateOptions {
  int max_hole_cells = 4;  // each hole gets 1..max_hole_cells cells
};

// Connected structure with exactly n nodes and `holes` inner holes, grown by
// seeded accretion and then carved. Throws std::invalid_argument when the
// holes do not fit.
AmoebotStructure generate_random(int n, int holes, uint64_t seed, const GenerateOptions& options = {});

// Small fixed shapes used by tests and examples.
AmoebotStructure hexagon(int radius, GridPoint center = {0, 0});
AmoebotStructure parallelogram(int width, int height, GridPoint origin = {0, 0});
// Filled hexagon of the given outer radius with the inner hexagon of radius
// `inner` (or just the center when inner = 0) removed.
AmoebotStructure annulus(int outer, int inner);

}  // namespace amoebot
