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

// decompose <file> [--mode central|distributed|both] [--seed N] [--nhat N]
//           [--verify] [--svg P] [--json P] [--bench n1,n2,...] [--holes k]
//           [--gen n] [--trace]
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 distributed timeout.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amoebot/decompose.hpp"
#include "amoebot/distalgo.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/io.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/primitives.hpp"

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kTimeout = 3 };

struct RunConfig {
  std::string input;
  std::string mode = "central";
  std::optional<uint64_t> seed;
  uint64_t n_hat = 0;
  bool verify = false;
  std::string svg, json;
  std::vector<int> bench;
  int bench_seeds = 20;
  int holes = 0;
  int gen = 0;
  bool trace = false;
};

int run(const RunConfig& cfg) {
  using namespace amoebot;
  if (!cfg.bench.empty()) {
    auto rows = run_bench(cfg.bench, cfg.bench_seeds, cfg.seed.value_or(1));
    std::cout << bench_table(rows);
    return kOk;
  }
  if (cfg.input.empty()) {
    std::cerr << "error: an input file is required\n";
    return kBadInput;
  }
  if (cfg.mode != "central" && !cfg.seed) {
    std::cerr << "error: --mode " << cfg.mode << " requires --seed\n";
    return kBadInput;
  }

  AmoebotStructure s;
  if (cfg.gen > 0) {
    try {
      s = generate_random(cfg.gen, cfg.holes, cfg.seed.value_or(1));
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBadInput;
    }
    save_structure(cfg.input, s);
  } else {
    try {
      s = load_structure(cfg.input);
    } catch (const InputError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBadInput;
    }
  }
  if (cfg.n_hat && cfg.n_hat < s.size()) {
    std::cerr << "error: --nhat must be at least n = " << s.size() << "\n";
    return kBadInput;
  }

  std::optional<Decomposition> central;
  std::optional<DistributedOutcome> dist;
  if (cfg.mode != "distributed") central = decompose(s);
  if (cfg.mode != "central") {
    DistOptions opts;
    opts.n_hat = cfg.n_hat;
    opts.log_events = cfg.trace;
    try {
      dist = run_distributed(s, *cfg.seed, opts);
    } catch (const ProtocolTimeout& e) {
      std::cerr << "error: " << e.what() << "\n" << trace_text(e.trace);
      return kTimeout;
    } catch (const PrimitiveFailure& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kTimeout;
    }
  }
  const Decomposition& d = dist ? dist->decomposition : *central;
  const SimulationTrace* trace = dist ? &dist->trace : nullptr;

  int code = kOk;
  std::optional<VerificationReport> report;
  if (cfg.verify) {
    report = verify_decomposition(s, d);
    if (!report->all_ok()) code = kVerifyFailed;
    if (central && dist && !same_regions(central->regions, dist->decomposition.regions)) {
      std::cerr << "distributed and centralized decompositions differ\n";
      code = kVerifyFailed;
    }
  }

  std::cout << "n " << s.size() << ", holes " << d.holes << ", simple regions " << d.simple_regions.size()
            << ", tunnels " << d.tunnels.size() << ", convex regions " << d.regions.size() << "\n";
  if (trace) std::cout << "rounds " << trace->total_rounds << "\n";
  if (report)
    std::cout << "verification " << (report->all_ok() ? "ok" : "FAILED") << " (simple " << report->simple_ok()
              << ", convex " << report->convex_ok() << ", coverage " << report->coverage_ok << ")\n";
  if (cfg.trace && trace) std::cout << trace_text(*trace);
  if (!cfg.svg.empty()) emit_svg(s, d, cfg.svg);
  if (!cfg.json.empty()) emit_json(d, report ? &*report : nullptr, trace, cfg.json);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex decomposition of amoebot structures"};
  RunConfig cfg;
  app.add_option("file", cfg.input, "structure file (\"a b\" per line); written first with --gen");
  app.add_option("--mode", cfg.mode, "engine")->check(CLI::IsMember({"central", "distributed", "both"}));
  uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--nhat", cfg.n_hat, "upper bound on n known to the amoebots");
  app.add_flag("--verify", cfg.verify, "run the oracles on the result");
  app.add_option("--svg", cfg.svg, "write an SVG rendering");
  app.add_option("--json", cfg.json, "write the decomposition as JSON");
  app.add_option("--bench", cfg.bench, "sizes for a round-count benchmark")->delimiter(',');
  app.add_option("--bench-seeds", cfg.bench_seeds, "seeds per benchmark size")->check(CLI::PositiveNumber);
  app.add_option("--holes", cfg.holes, "inner holes for --gen")->check(CLI::NonNegativeNumber);
  app.add_option("--gen", cfg.gen, "generate a random structure with this many nodes")->check(CLI::PositiveNumber);
  app.add_flag("--trace", cfg.trace, "print the simulation trace and decision events");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  if (seed_opt->count()) cfg.seed = seed;
  try {
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
