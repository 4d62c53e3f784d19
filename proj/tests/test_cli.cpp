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

// Runs the decompose binary and checks its exit codes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

const std::filesystem::path kDir = std::filesystem::temp_directory_path() / "amoebot_cli_test";

int run(const std::string& args) {
  std::filesystem::create_directories(kDir);
  const std::string cmd = std::string(DECOMPOSE_BIN) + " " + args + " > " + (kDir / "out.txt").string() + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string file(const std::string& name) { return (kDir / name).string(); }

}  // namespace

TEST_CASE("generated structure through both engines") {
  CHECK(run(file("gen.txt") + " --gen 300 --holes 3 --seed 5 --mode both --verify --json " + file("a.json") +
            " --svg " + file("a.svg")) == 0);
  CHECK(std::filesystem::file_size(file("a.json")) > 0);
  CHECK(std::filesystem::file_size(file("a.svg")) > 0);
  // Same input and seed, same bytes.
  CHECK(run(file("gen.txt") + " --seed 5 --mode distributed --json " + file("b.json")) == 0);
  CHECK(run(file("gen.txt") + " --seed 5 --mode distributed --json " + file("c.json")) == 0);
  std::ifstream b(file("b.json")), c(file("c.json"));
  std::string sb((std::istreambuf_iterator<char>(b)), {}), sc((std::istreambuf_iterator<char>(c)), {});
  CHECK(sb == sc);
}

TEST_CASE("invalid input") {
  CHECK(run(file("nope.txt")) == 2);
  CHECK(run(file("gen.txt") + " --mode distributed") == 2);  // no seed
  CHECK(run(file("gen.txt") + " --mode sideways") == 2);
  CHECK(run(file("gen.txt") + " --seed 1 --nhat 3 --mode distributed") == 2);
  {
    std::ofstream(file("dup.txt")) << "0 0\n0 0\n";
  }
  CHECK(run(file("dup.txt")) == 2);
}

TEST_CASE("central mode needs no seed") { CHECK(run(file("gen.txt") + " --verify") == 0); }
