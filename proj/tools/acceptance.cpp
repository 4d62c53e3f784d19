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

// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any
// criterion fails. Every tolerance is a constant below.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "amoebot/decompose.hpp"
#include "amoebot/distalgo.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/io.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/portals.hpp"
#include "amoebot/primitives.hpp"

using namespace amoebot;

namespace {

// Criterion 1.
constexpr int kCorpusSize = 200;
constexpr int kCorpusMaxNodes = 2000;
constexpr int kCorpusMinNodes = 100;
constexpr int kCorpusMaxHoles = 8;
constexpr double kCorpusSeconds = 60.0;
// Criterion 3.
constexpr double kDensities[] = {1.0 / 1024, 1.0 / 512, 1.0 / 256, 1.0 / 128, 1.0 / 64};
constexpr int kDensitySeeds = 40;
constexpr double kConstantTolerance = 0.20;
// Criterion 4.
constexpr int kIdentityStructures = 50;
constexpr int kIdentityMaxNodes = 200;
// Criterion 6.
constexpr int kEquivalencePairs = 100;
// Criterion 7.
constexpr int kScaleMinExp = 6, kScaleMaxExp = 12, kScaleFitMaxExp = 9;
constexpr int kScaleSeeds = 20;
constexpr double kScaleDensity = kBenchHoleDensity;
constexpr double kFlatTolerance = 0.05;  // mean ratio may rise by at most 5% per doubling
// Criterion 8.
constexpr int kPrimitiveInstances = 100;
constexpr int kElectionTrials = 1000;
constexpr int kElectionSizes[] = {16, 64, 256, 1024};
// Criterion 9.
constexpr int kDeterminismRuns = 5;

bool all_passed = true;

void report(int k, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", k, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  all_passed = all_passed && ok;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Sample {
  AmoebotStructure s;
  Decomposition d;
};

std::vector<Sample> corpus;

void counting_bounds() {
  std::mt19937_64 rng(20260101);
  std::vector<AmoebotStructure> structures;
  for (int i = 0; i < kCorpusSize; ++i) {
    const int n = kCorpusMinNodes + static_cast<int>(rng() % (kCorpusMaxNodes - kCorpusMinNodes + 1));
    const int holes = static_cast<int>(rng() % (kCorpusMaxHoles + 1));
    structures.push_back(generate_random(n, holes, rng()));
  }
  int violations = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const AmoebotStructure& s : structures) {
    Decomposition d = decompose(s);
    if (d.simple_regions.size() > 3 * d.holes + 1) ++violations;
    if (d.gates.size() > 6 * d.holes) ++violations;
    corpus.push_back({s, std::move(d)});
  }
  const double secs = seconds_since(t0);
  report(1, violations == 0 && secs < kCorpusSeconds,
         std::to_string(corpus.size()) + " structures, " + std::to_string(violations) + " violations, " +
             fmt("%.1f s", secs));
}

void simple_and_convex() {
  size_t regions = 0, witnesses = 0, not_simple = 0, sampled = 0;
  for (const Sample& c : corpus) {
    VerifyOptions opts;
    opts.check_distance_identity = false;
    VerificationReport v = verify_decomposition(c.s, c.d, opts);
    for (const RegionCheck& r : v.regions) {
      ++regions;
      not_simple += !r.simple_ok || !r.connected;
      witnesses += !r.convex_ok;
      sampled += !r.convex_exhaustive;
    }
    if (!v.coverage_ok) ++not_simple;
  }
  report(2, witnesses == 0 && not_simple == 0 && sampled == 0,
         std::to_string(regions) + " regions, " + std::to_string(not_simple) + " not simple, " +
             std::to_string(witnesses) + " convexity witnesses, " + std::to_string(sampled) + " sampled");
}

void region_constant() {
  // C fitted as the mean of (regions - 1) / |H| with equal weight per density;
  // the bound uses the largest ratio seen.
  std::vector<double> per_density;
  double worst = 0.0;
  int over = 0;
  std::vector<std::pair<int, int>> counts;  // (holes, regions)
  for (double density : kDensities) {
    double sum = 0.0;
    for (int k = 0; k < kDensitySeeds; ++k) {
      const int n = 500 + 40 * k;
      const int holes = bench_holes(n, density);
      Decomposition d = decompose(generate_random(n, holes, 7000 + k));
      const double ratio = (static_cast<double>(d.regions.size()) - 1) / holes;
      sum += ratio;
      worst = std::max(worst, ratio);
      counts.push_back({holes, static_cast<int>(d.regions.size())});
    }
    per_density.push_back(sum / kDensitySeeds);
  }
  for (const Sample& c : corpus)
    if (c.d.holes > 0) {
      worst = std::max(worst, (static_cast<double>(c.d.regions.size()) - 1) / c.d.holes);
      counts.push_back({static_cast<int>(c.d.holes), static_cast<int>(c.d.regions.size())});
    } else if (c.d.regions.size() != 1) {
      ++over;
    }
  const double c_fit = std::accumulate(per_density.begin(), per_density.end(), 0.0) / per_density.size();
  const double c_bound = std::ceil(worst);
  for (auto [h, r] : counts) over += r > c_bound * h + 1;
  bool stable = true;
  std::string detail = "C = " + fmt("%.2f", c_fit) + " (bound " + fmt("%.0f", c_bound) + "); per density";
  for (double c : per_density) {
    stable = stable && std::abs(c - c_fit) <= kConstantTolerance * c_fit;
    detail += " " + fmt("%.2f", c);
  }
  report(3, stable && over == 0, detail + "; " + std::to_string(over) + " over the bound");
}

void distance_identity() {
  int checked = 0, failures = 0;
  for (uint64_t seed = 0; checked < kIdentityStructures; ++seed) {
    const int n = 20 + static_cast<int>(seed * 37 % (kIdentityMaxNodes - 19));
    AmoebotStructure s = generate_random(n, 0, 500 + seed);
    if (!is_simple(s)) continue;
    ++checked;
    // Exhaustive: every structure is below the pair-sampling limit.
    if (!distance_identity_holds(whole_region(s), kIdentityMaxNodes, 0)) ++failures;
  }
  report(4, failures == 0, std::to_string(checked) + " simple structures, all pairs, " + std::to_string(failures) +
                               " failures");
}

void portal_trees() {
  size_t regions = 0, failures = 0;
  auto check = [&](const Region& r) {
    ++regions;
    for (Axis q : {Axis::X, Axis::Y, Axis::Z})
      if (!portal_graph(r, q).is_tree()) ++failures;
  };
  for (const Sample& c : corpus) {
    for (const Region& r : c.d.simple_regions) check(r);
    for (const Region& r : c.d.tunnels) check(r);
    for (const Region& r : c.d.regions) check(r);
  }
  size_t annuli = 0, acyclic = 0;
  std::vector<AmoebotStructure> rings;
  for (int outer = 2; outer <= 8; ++outer)
    for (int inner = 0; inner + 2 <= outer; ++inner) rings.push_back(annulus(outer, inner));
  for (uint64_t seed = 0; seed < 30; ++seed) rings.push_back(generate_random(200 + 20 * seed, 1, 900 + seed));
  for (const AmoebotStructure& s : rings) {
    ++annuli;
    PortalGraph g = portal_graph(whole_region(s), Axis::Y);
    if (!g.has_cycle()) ++acyclic;
  }
  report(5, failures == 0 && acyclic == 0,
         std::to_string(regions) + " simple regions x 3 axes, " + std::to_string(failures) + " non-trees; " +
             std::to_string(annuli) + " annuli, " + std::to_string(acyclic) + " without a y cycle");
}

void equivalence() {
  int mismatches = 0;
  for (int k = 0; k < kEquivalencePairs; ++k) {
    const int n = 100 + 9 * k;
    const int holes = 1 + k % kCorpusMaxHoles;
    AmoebotStructure s = generate_random(n, holes, 3000 + k);
    DistributedOutcome o = run_distributed(s, 11 * k + 1);
    if (!same_regions(o.decomposition.regions, decompose(s).regions)) ++mismatches;
  }
  report(6, mismatches == 0,
         std::to_string(kEquivalencePairs) + " (structure, seed) pairs, " + std::to_string(mismatches) +
             " mismatches");
}

// Fits C on the small sizes, then checks every size against it.
struct Scaling {
  double c = 0.0;
  std::vector<double> means;
  int over = 0;
  bool flat = true;
};

Scaling scaling(const std::map<int, std::vector<double>>& ratios) {
  Scaling out;
  for (const auto& [e, rs] : ratios)
    if (e <= kScaleFitMaxExp) out.c = std::max(out.c, *std::max_element(rs.begin(), rs.end()));
  for (const auto& [e, rs] : ratios) {
    for (double r : rs) out.over += r > out.c;
    out.means.push_back(std::accumulate(rs.begin(), rs.end(), 0.0) / rs.size());
  }
  for (size_t i = 1; i < out.means.size(); ++i)
    out.flat = out.flat && out.means[i] <= out.means[i - 1] * (1 + kFlatTolerance);
  return out;
}

std::string scaling_detail(const Scaling& s) {
  std::string d = "C = " + fmt("%.1f", s.c) + ", " + std::to_string(s.over) + " runs over; mean rounds/log2 n";
  for (double m : s.means) d += " " + fmt("%.1f", m);
  return d;
}

void round_scaling() {
  std::vector<int> sizes;
  for (int e = kScaleMinExp; e <= kScaleMaxExp; ++e) sizes.push_back(1 << e);
  std::map<int, std::vector<double>> ratios;
  for (const BenchRow& row : run_bench(sizes, kScaleSeeds, 1, kScaleDensity))
    ratios[ceil_log2(static_cast<uint64_t>(row.n))].push_back(row.ratio);
  Scaling s = scaling(ratios);
  report(7, s.over == 0 && s.flat, scaling_detail(s));
}

void primitives() {
  int pasc_bad = 0, prune_bad = 0, maxima_bad = 0, trees = 0, cycles = 0;
  std::mt19937_64 rng(77);
  // Portal trees of random simple structures.
  for (uint64_t seed = 0; trees < kPrimitiveInstances; ++seed) {
    AmoebotStructure s = generate_random(60 + static_cast<int>(seed % 200), 0, 100 + seed);
    PortalGraph g = portal_graph(whole_region(s), static_cast<Axis>(seed % 3));
    if (!g.is_tree()) continue;
    ++trees;
    const int m = static_cast<int>(g.portals.size());
    const int root = static_cast<int>(rng() % m);
    auto dist = g.distances({root});
    std::vector<int> parent(m, -1);
    for (int u = 0; u < m; ++u)
      for (int v : g.adj[u])
        if (dist[v] + 1 == dist[u]) parent[u] = v;
    PascResult p = pasc_tree(g.adj, parent, seed);
    for (int u = 0; u < m; ++u) pasc_bad += p.value[u] != static_cast<uint64_t>(dist[u]);

    std::vector<char> q(m, 0);
    q[root] = 1;
    for (int k = static_cast<int>(rng() % 5); k > 0; --k) q[rng() % m] = 1;
    RootPruneResult r = root_and_prune(g.adj, q, root, seed);
    // Oracle: union of root-to-Q paths.
    std::vector<char> keep(m, 0);
    for (int u = 0; u < m; ++u)
      if (q[u])
        for (int x = u; x >= 0 && !keep[x]; x = parent[x]) keep[x] = 1;
    prune_bad += r.parent != parent || r.survives != keep;
  }
  // Boundary sets: random candidate subsets of boundary cycles.
  for (uint64_t seed = 0; cycles < kPrimitiveInstances; ++seed) {
    AmoebotStructure s = generate_random(150 + static_cast<int>(seed * 13 % 400), static_cast<int>(seed % 4), seed);
    for (const BoundaryCycle& c : boundary_cycles(s)) {
      if (cycles == kPrimitiveInstances) break;
      ++cycles;
      auto pos = c.nodes();
      std::vector<char> cand(pos.size());
      for (auto& x : cand) x = static_cast<char>(rng() % 3 != 0);
      cand[rng() % pos.size()] = 1;
      const Heading h = static_cast<Heading>(rng() % 10);
      MaximaResult m = global_maxima_boundary(pos, cand, h, s.size(), seed);
      int64_t best = INT64_MIN;
      for (size_t i = 0; i < pos.size(); ++i)
        if (cand[i]) best = std::max(best, heading_value(pos[i], h));
      for (size_t i = 0; i < pos.size(); ++i)
        if (m.flags[i] != (cand[i] && heading_value(pos[i], h) == best)) {
          ++maxima_bad;
          break;
        }
    }
  }
  // Leader election.
  bool election_ok = true;
  std::map<int, std::vector<double>> ratios;
  std::string election;
  for (int n : kElectionSizes) {
    int unique = 0;
    for (int t = 0; t < kElectionTrials; ++t) {
      ElectionResult e = leader_election_sets({n}, static_cast<uint64_t>(n) * 100000 + t, n)[0];
      unique += std::count(e.leader.begin(), e.leader.end(), 1) == 1;
      ratios[ceil_log2(n)].push_back(e.rounds / std::log2(n));
    }
    election_ok = election_ok && unique >= kElectionTrials * (1.0 - 1.0 / n);
    election += " " + std::to_string(unique) + "/" + std::to_string(kElectionTrials);
  }
  Scaling es = scaling(ratios);
  report(8, pasc_bad == 0 && prune_bad == 0 && maxima_bad == 0 && election_ok && es.over == 0 && es.flat,
         "PASC " + std::to_string(pasc_bad) + "/" + std::to_string(trees) + " wrong, root-prune " +
             std::to_string(prune_bad) + " wrong, maxima " + std::to_string(maxima_bad) + "/" +
             std::to_string(cycles) + " wrong; unique leaders" + election + "; election " + scaling_detail(es));
}

void determinism() {
  int differing = 0;
  for (int k = 0; k < kDeterminismRuns; ++k) {
    AmoebotStructure s = generate_random(300 + 100 * k, 1 + k, 4000 + k);
    auto once = [&] {
      DistOptions opts;
      opts.log_events = true;
      DistributedOutcome o = run_distributed(s, 99 + k, opts);
      VerificationReport v = verify_decomposition(s, o.decomposition);
      return json_document(o.decomposition, &v, &o.trace) + svg_document(s, o.decomposition) +
             trace_text(o.trace);
    };
    differing += once() != once();
  }
  report(9, differing == 0,
         std::to_string(kDeterminismRuns) + " repeated runs (JSON, SVG, trace), " + std::to_string(differing) +
             " differ");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {counting_bounds, simple_and_convex, region_constant,
                                                       distance_identity, portal_trees, equivalence,
                                                       round_scaling, primitives, determinism};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("error: %s\n", e.what());
      all_passed = false;
    }
  }
  return all_passed ? 0 : 1;
}
