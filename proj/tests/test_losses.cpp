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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "trajeval/error.hpp"
#include "trajeval/losses.hpp"
#include "trajeval/seq_metrics.hpp"

using namespace trajeval;
using PS = PenState;

TEST_CASE("loss defaults") {
  const LossWeights w;
  CHECK(w.lambda1 == 0.5);
  CHECK(w.lambda2 == 1.0);
  CHECK(w.lambda3 == 1.0 / 6000.0);
  CHECK(w.class_weights[PS::Down] == 1.0);
  CHECK(w.class_weights[PS::Up] == 5.0);
  CHECK(w.class_weights[PS::End] == 1.0);
  CHECK(SoftParams{}.gamma == 1.0);
}

TEST_CASE("softmin examples") {
  const std::vector<double> one{4.25};
  CHECK(softmin(one, 0.7) == doctest::Approx(4.25).epsilon(1e-15));
  const std::vector<double> three{2.0, 2.0, 2.0};
  CHECK(softmin(three, 1.5) == doctest::Approx(2.0 - 1.5 * std::log(3.0)).epsilon(1e-14));
  const std::vector<double> two{1.0, 2.0};
  CHECK(std::abs(softmin(two, 1e-6) - 1.0) <= 1e-9);
  CHECK_THROWS_AS(softmin(std::vector<double>{}, 1.0), Error);
  CHECK_THROWS_AS(softmin(two, 0.0), Error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(softmin(std::vector<double>{inf, 3.0}, 1.0) == doctest::Approx(3.0));
  CHECK(softmin(std::vector<double>{inf, inf}, 1.0) == inf);
}

TEST_CASE("softmin bounds and monotonicity") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> g(0.01, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng() % 5);
    for (auto& x : v) x = u(rng);
    const double gamma = g(rng);
    const double s = softmin(v, gamma);
    CHECK(s <= *std::min_element(v.begin(), v.end()) + 1e-12);
    auto w = v;
    w[rng() % w.size()] += std::abs(u(rng));
    CHECK(softmin(w, gamma) >= s - 1e-12);
  }
}

TEST_CASE("sdtw single points and ordering against hard DTW") {
  const std::vector<TrajPoint> a{{1, 2, PS::Down}}, b{{4, 6, PS::Down}};
  CHECK(sdtw(a, b, 0.3) == 25.0);
  CHECK(sdtw(a, b, 30.0) == 25.0);
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = oracle::random_points(rng, 1 + rng() % 8);
    const auto p = oracle::random_points(rng, 1 + rng() % 8);
    CHECK(sdtw(q, p, 1.0) <= dtw(q, p, GroundDistance::SquaredEuclidean).cost + 1e-9);
  }
}

TEST_CASE("sdtw approaches hard squared DTW as gamma vanishes") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = oracle::random_points(rng, 5);
    const auto p = oracle::random_points(rng, 5);
    CHECK(std::abs(sdtw(q, p, 1e-6) - oracle::dtw_enumerate(q, p, true)) <= 1e-6);
  }
}

TEST_CASE("sdtw gradient examples") {
  const std::vector<TrajPoint> q{{1, 2, PS::Down}, {5, 5, PS::Down}, {9, 1, PS::Down}};
  // Off-diagonal alignments keep a weight of order exp(-d^2 / gamma), so the
  // gradient at q = p is only zero up to that residue.
  for (const auto& gr : sdtw_grad(q, q, 1.0)) {
    CHECK(std::abs(gr.dx) <= 1e-8);
    CHECK(std::abs(gr.dy) <= 1e-8);
  }
  const std::vector<TrajPoint> one{{3, 3, PS::Down}};
  CHECK(sdtw_grad(one, one, 1.0)[0].dx == 0.0);
  const std::vector<TrajPoint> a{{1, 2, PS::Down}}, b{{4, 6, PS::Down}};
  const auto g = sdtw_grad(a, b, 1.0);
  REQUIRE(g.size() == 1);
  CHECK(g[0].dx == doctest::Approx(6.0));
  CHECK(g[0].dy == doctest::Approx(8.0));
}

TEST_CASE("sdtw gradient matches central differences") {
  std::mt19937_64 rng(54);
  const double h = 1e-4;
  for (int trial = 0; trial < 30; ++trial) {
    for (double gamma : {0.1, 1.0, 10.0}) {
      const auto q = oracle::random_points(rng, 1 + rng() % 10);
      auto p = oracle::random_points(rng, 1 + rng() % 10);
      const auto g = sdtw_grad(q, p, gamma);
      REQUIRE(g.size() == p.size());
      for (std::size_t j = 0; j < p.size(); ++j) {
        for (int axis = 0; axis < 2; ++axis) {
          double& c = axis == 0 ? p[j].x : p[j].y;
          const double orig = c;
          c = orig + h;
          const double up = sdtw(q, p, gamma);
          c = orig - h;
          const double dn = sdtw(q, p, gamma);
          c = orig;
          const double fd = (up - dn) / (2 * h);
          const double an = axis == 0 ? g[j].dx : g[j].dy;
          CHECK(std::abs(an - fd) / std::max({1.0, std::abs(an), std::abs(fd)}) <= 1e-3);
        }
      }
    }
  }
}

TEST_CASE("l1 loss") {
  const Trajectory gt({{0, 0, PS::Down}, {2, 2, PS::Up}});
  std::vector<PredictedPoint> same{{0, 0, {1, 0, 0}}, {2, 2, {0, 1, 0}}};
  CHECK(l1_loss(same, gt) == 0.0);
  const Trajectory one({{0, 0, PS::Up}});
  const std::vector<PredictedPoint> off{{1, 2, {0, 1, 0}}};
  CHECK(l1_loss(off, one) == 3.0);
  CHECK_THROWS_AS(l1_loss(off, gt), Error);

  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0, 63);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = oracle::random_trajectory(rng, 2, 6);
    std::vector<PredictedPoint> pred;
    double sum = 0;
    for (const auto& p : t.points()) {
      pred.push_back({u(rng), u(rng), {1, 0, 0}});
      sum += std::abs(pred.back().x - p.x) + std::abs(pred.back().y - p.y);
    }
    CHECK(l1_loss(pred, t) == doctest::Approx(sum / double(t.size())));
  }
}

TEST_CASE("weighted cross-entropy") {
  const Trajectory gt({{0, 0, PS::Down}, {1, 1, PS::Up}, {1, 1, PS::End}});
  std::vector<PredictedPoint> certain{{0, 0, {1, 0, 0}}, {1, 1, {0, 1, 0}}, {1, 1, {0, 0, 1}}};
  CHECK(wce_loss(certain, gt) == 0.0);

  const Trajectory up({{0, 0, PS::Up}});
  const std::vector<PredictedPoint> uniform{{0, 0, {1.0 / 3, 1.0 / 3, 1.0 / 3}}};
  CHECK(wce_loss(uniform, up) == doctest::Approx(5.0 * std::log(3.0)).epsilon(1e-12));

  const std::vector<PredictedPoint> wrong{{0, 0, {1, 0, 0}}};
  CHECK(wce_loss(wrong, up) == doctest::Approx(-5.0 * std::log(1e-12)));

  const std::vector<PredictedPoint> bad{{0, 0, {0.5, 0.6, 0}}};
  CHECK_THROWS_AS(wce_loss(bad, up), Error);
  CHECK_THROWS_AS(wce_loss(certain, up), Error);
}

TEST_CASE("total loss") {
  CHECK(total_loss(0, 0, 0) == 0.0);
  CHECK(total_loss(1, 1, 6000) == doctest::Approx(2.5).epsilon(1e-15));
  LossWeights zero;
  zero.lambda1 = zero.lambda2 = zero.lambda3 = 0;
  CHECK(total_loss(3, 4, 5, zero) == 0.0);
}
