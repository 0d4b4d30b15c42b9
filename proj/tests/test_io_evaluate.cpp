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

#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trajeval/error.hpp"
#include "trajeval/evaluate.hpp"
#include "trajeval/io.hpp"

using namespace trajeval;
namespace fs = std::filesystem;
using PS = PenState;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("trajeval_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("points form parses") {
  const auto t = parse_trajectory_json(R"({"canvas":[32,32],"points":[
      {"x":1,"y":2,"s":[1,0,0]},{"x":3,"y":4,"s":[0,1,0]},{"x":3,"y":4,"s":[0,0,1]}]})");
  CHECK(t.canvas_side() == 32);
  REQUIRE(t.size() == 3);
  CHECK(t.points()[1] == TrajPoint{3, 4, PS::Up});
  CHECK(t.has_eos());
}

TEST_CASE("strokes form converts states and appends the end point") {
  const auto t = parse_trajectory_json(R"({"strokes":[[[0,0],[1,1]],[[5,5]],[[7,7],[8,8],[9,9]]]})");
  CHECK(t.canvas_side() == 64);
  int ups = 0, ends = 0;
  for (const auto& p : t.points()) {
    ups += p.state == PS::Up;
    ends += p.state == PS::End;
  }
  CHECK(ups == 3);
  CHECK(ends == 1);
  CHECK(t.points().back().x == 9);
}

TEST_CASE("json rejections") {
  CHECK(code_of([] { parse_trajectory_json(R"({"points":[{"x":1,"y":2,"s":[1,1,0]}]})"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_trajectory_json(R"({"points":[]})"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_trajectory_json(R"({"canvas":[64,32],"points":[{"x":1,"y":2,"s":[1,0,0]}]})"); }) ==
        Errc::parse_error);
  try {
    parse_trajectory_json("{\n  \"points\": [\n    {\"x\": 1,, }\n]}");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_trajectory_json(R"({"points":[{"x":1,"y":2,"s":[1,0,0]},{"x":1,"y":2,"s":[0,2,0]}]})");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/points/1/s") != std::string::npos);
  }
}

TEST_CASE("points and strokes forms round trip") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = oracle::random_trajectory(rng, 1 + static_cast<int>(rng() % 5), 6);
    CHECK(parse_trajectory_json(to_json(t)) == t);
    // strokes form: every stroke ends pen-up and the end point copies the last position
    const auto back = parse_trajectory_json(to_json(parse_trajectory_json(to_json(t, TrajectoryFormat::Strokes))));
    CHECK(parse_trajectory_json(to_json(t, TrajectoryFormat::Strokes)) == back);
    CHECK(back == t);
  }
}

TEST_CASE("evaluate identical directories") {
  const auto dir = scratch("same");
  std::mt19937_64 rng(82);
  for (int i = 0; i < 4; ++i)
    write_trajectory(dir / ("s" + std::to_string(i) + ".json"), oracle::random_trajectory(rng, 3, 5));
  EvalOptions o;
  o.metrics = {Metric::AIoU, Metric::LDTW, Metric::DTW};
  const auto rep = evaluate_paths(dir, dir, o);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& r : rep.rows) {
    CHECK(r.error.empty());
    CHECK(r.values.at(Metric::AIoU) == 1.0);
    CHECK(r.values.at(Metric::LDTW) == 0.0);
    CHECK(r.values.at(Metric::DTW) == 0.0);
    CHECK(*r.best_k == 0);
  }
  CHECK(rep.aggregates.at(Metric::AIoU).mean == 1.0);
  CHECK(!rep.all_failed());
}

TEST_CASE("rendered image ground truth scores its own trajectory perfectly") {
  const auto dir = scratch("image");
  std::mt19937_64 rng(83);
  const auto t = oracle::random_trajectory(rng, 3, 5);
  write_trajectory(dir / "g.json", t);
  write_pgm(dir / "g.pgm", to_gray(rasterize(t, 64)));
  const auto row = evaluate_pair("g", dir / "g.pgm", dir / "g.json", EvalOptions{});
  CHECK(row.values.at(Metric::AIoU) == 1.0);
  CHECK(*row.best_k == 0);
  CHECK(row.values.count(Metric::LDTW) == 0);
  CHECK(!row.failed);
}

TEST_CASE("missing counterparts and bad files give error rows") {
  const auto gt = scratch("gt"), pred = scratch("pred");
  std::mt19937_64 rng(84);
  const auto t = oracle::random_trajectory(rng, 2, 4);
  write_trajectory(gt / "a.json", t);
  write_trajectory(pred / "a.json", t);
  write_trajectory(gt / "b.json", t);
  write_file(pred / "c.json", "{ not json");
  write_trajectory(gt / "c.json", t);
  const auto rep = evaluate_paths(gt, pred, EvalOptions{});
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].error.empty());
  CHECK(rep.rows[1].failed);
  CHECK(rep.rows[1].error.find("missing prediction") != std::string::npos);
  CHECK(rep.rows[2].failed);
  CHECK(!rep.all_failed());
  CHECK_THROWS_AS(evaluate_paths(gt, pred / "a.json", EvalOptions{}), Error);
}

TEST_CASE("metric errors are reported per row") {
  const auto dir = scratch("rmse");
  write_trajectory(dir / "q.json", Trajectory({{0, 0, PS::Down}, {1, 1, PS::Up}}));
  write_trajectory(dir / "p.json", Trajectory({{0, 0, PS::Up}}));
  EvalOptions o;
  o.metrics = {Metric::RMSE, Metric::DTW};
  const auto row = evaluate_pair("x", dir / "q.json", dir / "p.json", o);
  CHECK(row.values.count(Metric::DTW) == 1);
  CHECK(row.values.count(Metric::RMSE) == 0);
  CHECK(row.error.find("rmse") != std::string::npos);
  o.rmse_resample = true;
  CHECK(evaluate_pair("x", dir / "q.json", dir / "p.json", o).values.count(Metric::RMSE) == 1);
}

TEST_CASE("evaluation CSV has aggregate rows recomputable from the rows") {
  EvalReport rep;
  rep.metrics = {Metric::AIoU, Metric::LDTW};
  for (int i = 0; i < 3; ++i) {
    EvalRow r;
    r.name = "s" + std::to_string(i);
    r.values[Metric::AIoU] = 0.25 * (i + 1);
    r.values[Metric::LDTW] = 1.0 * i;
    r.best_k = i;
    rep.rows.push_back(r);
  }
  rep.aggregates = aggregate(rep.rows, rep.metrics);
  CHECK(rep.aggregates.at(Metric::AIoU).mean == doctest::Approx(0.5));
  CHECK(rep.aggregates.at(Metric::LDTW).median == 1.0);
  std::ostringstream os;
  write_eval_csv(os, rep);
  CHECK(os.str() ==
        "name,aiou,ldtw,best_k,error\n"
        "s0,0.250000,0.000000,0,\n"
        "s1,0.500000,1.000000,1,\n"
        "s2,0.750000,2.000000,2,\n"
        "#mean,0.500000,1.000000,,\n"
        "#median,0.500000,1.000000,,\n");
}

TEST_CASE("ground-truth polarity") {
  std::mt19937_64 rng(85);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = oracle::random_trajectory(rng, 3, 5);
    const auto m = dilate3x3(rasterize(t, 64), static_cast<int>(rng() % 3));
    CHECK(binarize_ground_truth(to_gray(m), GtPolarity::Auto) == m);
    CHECK(binarize_ground_truth(to_gray(m), GtPolarity::InkIsDark) == m);
    CHECK(binarize_ground_truth(parse_pgm(to_pgm(m)), GtPolarity::Auto) == m);
    CHECK(binarize_ground_truth(parse_pgm(to_pgm(m)), GtPolarity::InkIsLight) == m);
  }
}
