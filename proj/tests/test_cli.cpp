// Copyright 2026 The trajeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the trajeval executable end to end.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "trajeval/io.hpp"

using namespace trajeval;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "trajeval_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(TRAJEVAL_CLI) + " " + args + " 2>" + (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

struct Setup {
  Setup() {
    fs::remove_all(kDir);
    fs::create_directories(kDir / "gt");
    fs::create_directories(kDir / "pred");
    std::mt19937_64 rng(91);
    for (int i = 0; i < 3; ++i) {
      const auto t = oracle::random_trajectory(rng, 3, 5);
      write_trajectory(kDir / "gt" / ("g" + std::to_string(i) + ".json"), t);
      write_trajectory(kDir / "pred" / ("g" + std::to_string(i) + ".json"), t);
    }
  }
};

const Setup setup_once;

}  // namespace

TEST_CASE("evaluate identical directories") {
  REQUIRE(run("evaluate " + path("gt") + " " + path("pred") + " --metrics aiou,ldtw,dtw --out " + path("e.csv")) == 0);
  const auto csv = read_file(path("e.csv"));
  CHECK(csv.rfind("name,aiou,ldtw,dtw,best_k,error\n", 0) == 0);
  CHECK(csv.find("g0,1.000000,0.000000,0.000000,0,\n") != std::string::npos);
  CHECK(csv.find("#mean,1.000000,0.000000,0.000000,,\n") != std::string::npos);
}

TEST_CASE("render then evaluate against the render") {
  REQUIRE(run("rasterize " + path("gt/g0.json") + " " + path("g0.pgm")) == 0);
  REQUIRE(run("evaluate " + path("g0.pgm") + " " + path("gt/g0.json") + " --out " + path("img.csv")) == 0);
  CHECK(read_file(path("img.csv")).find("g0,1.000000,,0,") != std::string::npos);
}

TEST_CASE("rasterize dilation is a superset") {
  REQUIRE(run("rasterize " + path("gt/g1.json") + " " + path("d0.pgm")) == 0);
  REQUIRE(run("rasterize " + path("gt/g1.json") + " " + path("d1.pgm") + " --dilate 1") == 0);
  const auto a = read_mask_pgm(path("d0.pgm"));
  const auto b = read_mask_pgm(path("d1.pgm"));
  CHECK(a.subset_of(b));
  CHECK(a.count() < b.count());
}

TEST_CASE("rasterize rejects off-canvas points and empty files") {
  write_file(path("off.json"), R"({"points":[{"x":1,"y":1,"s":[1,0,0]},{"x":70,"y":1,"s":[0,1,0]}]})");
  CHECK(run("rasterize " + path("off.json") + " " + path("off.pgm")) == 1);
  CHECK(read_file(path("stderr.txt")).find("point 1") != std::string::npos);
  write_file(path("empty.json"), R"({"points":[]})");
  CHECK(run("rasterize " + path("empty.json") + " " + path("empty.pgm")) == 1);
}

TEST_CASE("convert round trip and rejection") {
  REQUIRE(run("convert " + path("gt/g2.json") + " " + path("s.json") + " --to strokes") == 0);
  REQUIRE(run("convert " + path("s.json") + " " + path("p.json") + " --to points") == 0);
  CHECK(read_trajectory(path("p.json")) == read_trajectory(path("gt/g2.json")));
  write_file(path("bad.json"), R"({"points":[{"x":1,"y":1,"s":[1,1,0]}]})");
  CHECK(run("convert " + path("bad.json") + " " + path("bad_out.json")) == 1);
}

TEST_CASE("all pairs failing exits nonzero") {
  fs::create_directories(kDir / "broken");
  write_file(path("broken/g0.json"), "[]");
  CHECK(run("evaluate " + path("gt") + " " + path("broken") + " --out " + path("b.csv")) == 1);
}

TEST_CASE("sensitivity output is byte-stable") {
  const std::string args = "sensitivity --synthetic 50 --error stroke-delete --grid 1,2,3,4 --seed 7 --out ";
  REQUIRE(run(args + path("s1.csv")) == 0);
  REQUIRE(run(args + path("s2.csv")) == 0);
  CHECK(read_file(path("s1.csv")) == read_file(path("s2.csv")));
  REQUIRE(run("sensitivity --synthetic 5 --error point-drift --out " + path("s3.csv")) == 0);
  CHECK(read_file(path("s3.csv")).find("ldtw,8.000000,") != std::string::npos);
}

TEST_CASE("corpus with no valid files is an error") {
  fs::create_directories(kDir / "nocorpus");
  write_file(path("nocorpus/x.json"), "{}");
  CHECK(run("sensitivity --corpus " + path("nocorpus") + " --error point-drift") == 1);
}
