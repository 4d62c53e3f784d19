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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebot/circuits.hpp"
#include "amoebot/decompose.hpp"
#include "amoebot/oracle.hpp"

namespace amoebot {

// Bad structure files: syntax, duplicates, empty or disconnected input.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One node per line as "a b"; '#' starts a comment, blank lines are skipped.
AmoebotStructure parse_structure(const std::string& text);
AmoebotStructure load_structure(const std::string& path);
std::string format_structure(const AmoebotStructure& s);
void save_structure(const std::string& path, const AmoebotStructure& s);

void write_file(const std::string& path, const std::string& content);

std::string svg_document(const AmoebotStructure& s, const Decomposition& d);
void emit_svg(const AmoebotStructure& s, const Decomposition& d, const std::string& path);

// Pretty-printed JSON with sorted keys. report and trace are optional.
std::string json_document(const Decomposition& d, const VerificationReport* report, const SimulationTrace* trace);
void emit_json(const Decomposition& d, const VerificationReport* report, const SimulationTrace* trace,
               const std::string& path);

std::string trace_text(const SimulationTrace& trace);

struct BenchRow {
  int n = 0;
  size_t holes = 0;
  uint64_t seed = 0;
  std::array<size_t, 3> phase_rounds{};
  size_t total = 0;
  double ratio = 0.0;  // total / log2 n
  bool flagged = false;
};

inline constexpr double kBenchHoleDensity = 1.0 / 64.0;
inline constexpr double kBenchFlagFactor = 3.0;

// Holes per structure for the fixed density, at least one.
int bench_holes(int n, double density = kBenchHoleDensity);
// Distributed runs over sizes x seeds; rows whose ratio exceeds
// kBenchFlagFactor times the median ratio are flagged.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int seeds, uint64_t base_seed,
                                double density = kBenchHoleDensity);
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace amoebot
