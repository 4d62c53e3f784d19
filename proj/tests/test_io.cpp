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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amoebot/distalgo.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace amoebot;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "amoebot_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("structure parsing") {
  AmoebotStructure s = parse_structure("# two nodes\n0 0\n\n1 0   # east\n");
  CHECK(s.size() == 2);
  CHECK(s.contains({1, 0}));
  CHECK_THROWS_AS(parse_structure(""), InputError);
  CHECK_THROWS_AS(parse_structure("# nothing\n"), InputError);
  CHECK_THROWS_AS(parse_structure("0 0\n0 0\n"), InputError);
  CHECK_THROWS_AS(parse_structure("0 0\n5 5\n"), InputError);  // disconnected
  CHECK_THROWS_AS(parse_structure("0 x\n"), InputError);
  CHECK_THROWS_AS(parse_structure("0 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_structure("zero zero\n"), InputError);
  CHECK_THROWS_AS(load_structure(scratch("missing.txt").string()), InputError);
}

TEST_CASE("structure files round-trip") {
  auto s = generate_random(150, 2, 4);
  const auto path = scratch("s.txt").string();
  save_structure(path, s);
  AmoebotStructure back = load_structure(path);
  CHECK(back.nodes() == s.nodes());
  CHECK(format_structure(back) == slurp(path));
}

TEST_CASE("SVG output is deterministic") {
  auto s = annulus(2, 0);
  Decomposition d = decompose(s);
  std::string a = svg_document(s, d), b = svg_document(s, decompose(s));
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  // One filled disc per node plus rings around replicated ones.
  size_t discs = 0;
  for (size_t p = a.find("<circle"); p != std::string::npos; p = a.find("<circle", p + 1)) ++discs;
  CHECK(discs >= s.size());
  emit_svg(s, d, scratch("a.svg").string());
  CHECK(slurp(scratch("a.svg")) == a);
}

TEST_CASE("JSON schema") {
  auto s = generate_random(200, 2, 1);
  DistributedOutcome o = run_distributed(s, 1);
  VerificationReport v = verify_decomposition(s, o.decomposition);
  const std::string text = json_document(o.decomposition, &v, &o.trace);
  CHECK(text == json_document(o.decomposition, &v, &o.trace));
  auto doc = nlohmann::json::parse(text);
  for (const char* key : {"regions", "gates", "holes", "verification", "trace"}) CHECK(doc.contains(key));
  CHECK(doc["holes"] == 2);
  CHECK(doc["regions"].size() == o.decomposition.regions.size());
  for (const auto& r : doc["regions"])
    for (const char* key : {"id", "nodes", "edges", "gates"}) CHECK(r.contains(key));
  CHECK(doc["verification"]["all_ok"] == true);
  CHECK(doc["trace"]["total"] == o.trace.total_rounds);
  CHECK(doc["trace"]["phase_rounds"].size() == 3);
  CHECK(doc["trace"]["phase_rounds"][0]["name"] == "phase1");
  CHECK(doc["trace"]["seed"] == 1);

  // Centralized runs carry an empty trace.
  auto bare = nlohmann::json::parse(json_document(decompose(s), nullptr, nullptr));
  CHECK(bare["trace"]["total"] == 0);
  CHECK(bare["verification"].empty());
}

TEST_CASE("trace text") {
  DistributedOutcome o = run_distributed(hexagon(2), 3);
  const std::string t = trace_text(o.trace);
  CHECK(t.rfind("seed 3 n_hat 19\n", 0) == 0);
  CHECK(t.find("  phase1: ") != std::string::npos);
  CHECK(t.find("  total: " + std::to_string(o.trace.total_rounds) + " rounds") != std::string::npos);
  CHECK(t == trace_text(run_distributed(hexagon(2), 3).trace));
}

TEST_CASE("bench rows") {
  CHECK(bench_holes(64) == 1);
  CHECK(bench_holes(10) == 1);
  CHECK(bench_holes(1024) == 16);
  auto rows = run_bench({64, 128}, 3, 10);
  REQUIRE(rows.size() == 6);
  for (const BenchRow& r : rows) {
    CHECK(r.total == r.phase_rounds[0] + r.phase_rounds[1] + r.phase_rounds[2]);
    CHECK(r.ratio == doctest::Approx(r.total / std::log2(r.n)));
    CHECK_FALSE(r.flagged);
  }
  const std::string table = bench_table(rows);
  CHECK(table.rfind("n\tholes\tseed\tphase1\tphase2\tphase3\ttotal\trounds_per_log2n\tflag\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 7);
}
