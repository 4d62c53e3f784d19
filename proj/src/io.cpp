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

#include "amoebot/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "amoebot/distalgo.hpp"
#include "amoebot/generate.hpp"
#include "json.hpp"

namespace amoebot {

AmoebotStructure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<GridPoint> nodes;
  std::set<GridPoint> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    GridPoint p;
    if (!(ls >> p.a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw InputError("line " + std::to_string(lineno) + ": expected two integers");
      continue;
    }
    std::string rest;
    if (!(ls >> p.b) || (ls >> rest)) throw InputError("line " + std::to_string(lineno) + ": expected two integers");
    if (!seen.insert(p).second) throw InputError("line " + std::to_string(lineno) + ": duplicate node " + to_string(p));
    nodes.push_back(p);
  }
  if (nodes.empty()) throw InputError("structure is empty");
  try {
    return AmoebotStructure(std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

AmoebotStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string format_structure(const AmoebotStructure& s) {
  std::string out;
  for (const GridPoint& p : s.nodes()) out += std::to_string(p.a) + " " + std::to_string(p.b) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void save_structure(const std::string& path, const AmoebotStructure& s) { write_file(path, format_structure(s)); }

// ---------------------------------------------------------------------------
// SVG.

namespace {

constexpr double kScale = 24.0, kRadius = 7.0, kMargin = 30.0;
constexpr std::array<const char*, 10> kPalette = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string svg_document(const AmoebotStructure& s, const Decomposition& d) {
  double min_x = 1e18, max_x = -1e18, min_y = 1e18, max_y = -1e18;
  for (const GridPoint& p : s.nodes()) {
    auto [x, y] = position(p);
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  // y grows downwards in SVG.
  auto xy = [&](GridPoint p) {
    auto [x, y] = position(p);
    return std::make_pair(kMargin + (x - min_x) * kScale, kMargin + (max_y - y) * kScale);
  };
  const double width = 2 * kMargin + (max_x - min_x) * kScale, height = 2 * kMargin + (max_y - min_y) * kScale;

  std::map<GridPoint, int> copies;
  std::map<GridPoint, int> color;
  for (size_t i = 0; i < d.regions.size(); ++i)
    for (const GridPoint& p : d.regions[i].nodes) {
      ++copies[p];
      color.emplace(p, static_cast<int>(i % kPalette.size()));
    }
  std::set<GridPoint> gate_nodes;
  for (const Gate& g : d.gates) gate_nodes.insert(g.nodes.begin(), g.nodes.end());
  for (const Region& r : d.regions)
    for (const Gate& g : r.gates) gate_nodes.insert(g.nodes.begin(), g.nodes.end());

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Grid edges of the structure, faint.
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (const GridPoint& p : s.nodes())
    for (auto [dir, q] : s.neighbors(p)) {
      if (!(p < q)) continue;
      auto [x1, y1] = xy(p);
      auto [x2, y2] = xy(q);
      out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\"/>\n";
    }
  out << "</g>\n";
  for (size_t i = 0; i < d.regions.size(); ++i) {
    const Region& r = d.regions[i];
    out << "<g id=\"region-" << r.id << "\" stroke=\"" << kPalette[i % kPalette.size()] << "\" stroke-width=\"3\">\n";
    for (const Edge& e : r.edges()) {
      auto [x1, y1] = xy(e.first);
      auto [x2, y2] = xy(e.second);
      out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "<g>\n";
  for (const GridPoint& p : s.nodes()) {
    auto [x, y] = xy(p);
    const char* fill = color.count(p) ? kPalette[color[p]] : "#999999";
    const bool gate = gate_nodes.count(p) != 0;
    out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(kRadius) << "\" fill=\"" << fill
        << "\" stroke=\"" << (gate ? "#000000" : "none") << "\" stroke-width=\"" << (gate ? "2.5" : "0") << "\"/>\n";
    if (copies[p] > 1)
      out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(kRadius + 3.5)
          << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void emit_svg(const AmoebotStructure& s, const Decomposition& d, const std::string& path) {
  write_file(path, svg_document(s, d));
}

// ---------------------------------------------------------------------------
// JSON.

namespace {

using nlohmann::json;

json point(GridPoint p) { return json::array({p.a, p.b}); }

json points(const std::vector<GridPoint>& v) {
  json out = json::array();
  for (const GridPoint& p : v) out.push_back(point(p));
  return out;
}

json gate_json(const Gate& g) {
  return {{"axis", name(g.axis)}, {"line", g.line}, {"side", g.side}, {"region", g.region_id},
          {"nodes", points(g.nodes)}};
}

json region_json(const Region& r) {
  json edges = json::array();
  for (const Edge& e : r.edges()) edges.push_back(json::array({point(e.first), point(e.second)}));
  json gates = json::array();
  for (const Gate& g : r.gates) gates.push_back(gate_json(g));
  return {{"id", r.id}, {"nodes", points(r.nodes)}, {"edges", edges}, {"gates", gates}};
}

json report_json(const VerificationReport& v) {
  json regions = json::array();
  for (const RegionCheck& c : v.regions) {
    json item = {{"id", c.id},
                 {"size", c.size},
                 {"connected", c.connected},
                 {"simple", c.simple_ok},
                 {"convex", c.convex_ok},
                 {"convex_exhaustive", c.convex_exhaustive},
                 {"knowledge", c.knowledge_ok},
                 {"distance_identity", c.distance_identity_ok}};
    if (c.witness) item["witness"] = json::array({point(c.witness->u), point(c.witness->v), point(c.witness->w)});
    regions.push_back(item);
  }
  return {{"all_ok", v.all_ok()},
          {"coverage", v.coverage_ok},
          {"simple", v.simple_ok()},
          {"convex", v.convex_ok()},
          {"knowledge", v.knowledge_ok()},
          {"distance_identity", v.distance_identity_ok},
          {"phase1_bound", v.phase1_bound_ok},
          {"gate_bound", v.gate_bound_ok},
          {"region_count", v.region_count},
          {"phase1_regions", v.phase1_regions},
          {"gate_count", v.gate_count},
          {"region_constant", v.region_constant},
          {"regions", regions}};
}

json trace_json(const SimulationTrace& t) {
  json phases = json::array();
  for (const PhaseRounds& p : t.phases) phases.push_back({{"name", p.name}, {"rounds", p.rounds}});
  json memory = json::array();
  for (const MemoryAudit& m : t.memory)
    memory.push_back({{"protocol", m.protocol}, {"words", m.words}, {"flagged", m.flagged}});
  return {{"seed", t.seed},         {"n_hat", t.n_hat},   {"phase_rounds", phases}, {"total", t.total_rounds},
          {"memory", memory},       {"notes", t.notes},   {"events", t.events},     {"timed_out", t.timed_out}};
}

}  // namespace

std::string json_document(const Decomposition& d, const VerificationReport* report, const SimulationTrace* trace) {
  json regions = json::array();
  for (const Region& r : d.regions) regions.push_back(region_json(r));
  json gates = json::array();
  for (const Gate& g : d.gates) gates.push_back(gate_json(g));
  json doc = {{"regions", regions}, {"gates", gates}, {"holes", d.holes}};
  doc["verification"] = report ? report_json(*report) : json::object();
  doc["trace"] = trace ? trace_json(*trace) : json{{"phase_rounds", json::array()}, {"total", 0}};
  return doc.dump(2) + "\n";
}

void emit_json(const Decomposition& d, const VerificationReport* report, const SimulationTrace* trace,
               const std::string& path) {
  write_file(path, json_document(d, report, trace));
}

std::string trace_text(const SimulationTrace& t) {
  std::ostringstream out;
  out << "seed " << t.seed << " n_hat " << t.n_hat << "\n";
  for (const PhaseRounds& p : t.phases) out << "  " << p.name << ": " << p.rounds << " rounds\n";
  out << "  total: " << t.total_rounds << " rounds\n";
  for (const MemoryAudit& m : t.memory)
    out << "  memory " << m.protocol << ": " << m.words << " words" << (m.flagged ? " (over limit)" : "") << "\n";
  for (const std::string& n : t.notes) out << "  note: " << n << "\n";
  for (const std::string& e : t.events) out << "  event: " << e << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Bench.

int bench_holes(int n, double density) { return std::max(1, static_cast<int>(std::lround(n * density))); }

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int seeds, uint64_t base_seed, double density) {
  std::vector<BenchRow> rows;
  for (int n : sizes)
    for (int k = 0; k < seeds; ++k) {
      BenchRow row;
      row.n = n;
      row.seed = base_seed + static_cast<uint64_t>(k);
      AmoebotStructure s = generate_random(n, bench_holes(n, density), row.seed);
      DistributedOutcome o = run_distributed(s, row.seed);
      row.holes = o.decomposition.holes;
      for (size_t p = 0; p < 3 && p < o.trace.phases.size(); ++p) row.phase_rounds[p] = o.trace.phases[p].rounds;
      row.total = o.trace.total_rounds;
      row.ratio = static_cast<double>(row.total) / std::log2(static_cast<double>(n));
      rows.push_back(row);
    }
  if (!rows.empty()) {
    std::vector<double> ratios;
    for (const BenchRow& r : rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    const size_t m = ratios.size();
    const double median = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
    for (BenchRow& r : rows) r.flagged = r.ratio > kBenchFlagFactor * median;
  }
  return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n\tholes\tseed\tphase1\tphase2\tphase3\ttotal\trounds_per_log2n\tflag\n";
  for (const BenchRow& r : rows) {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3f", r.ratio);
    out << r.n << "\t" << r.holes << "\t" << r.seed << "\t" << r.phase_rounds[0] << "\t" << r.phase_rounds[1] << "\t"
        << r.phase_rounds[2] << "\t" << r.total << "\t" << ratio << "\t" << (r.flagged ? "HIGH" : "-") << "\n";
  }
  return out.str();
}

}  // namespace amoebot
