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

#include "trajeval/error_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "trajeval/error.hpp"

namespace trajeval {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "Rng::below(0)");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::string_view to_string(ErrorFamily family) noexcept {
  switch (family) {
    case ErrorFamily::StrokeInsert: return "stroke-insert";
    case ErrorFamily::StrokeDelete: return "stroke-delete";
    case ErrorFamily::PointDrift: return "point-drift";
    case ErrorFamily::StrokeDrift: return "stroke-drift";
  }
  return "unknown";
}

ErrorFamily error_family_from_string(std::string_view name) {
  for (auto f : {ErrorFamily::StrokeInsert, ErrorFamily::StrokeDelete, ErrorFamily::PointDrift,
                 ErrorFamily::StrokeDrift})
    if (to_string(f) == name) return f;
  throw Error(Errc::invalid_argument, "unknown error kind '" + std::string(name) + "'");
}

namespace {

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box bbox_of(const std::vector<TrajPoint>& pts) {
  Box b{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
  for (const auto& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

// Perturbed points stay in [0, side - 1] so they round onto the canvas.
double canvas_max(const Trajectory& traj) { return traj.canvas_side() - 1.0; }

void translate(std::vector<TrajPoint>& pts, double dx, double dy) {
  for (auto& p : pts) {
    p.x += dx;
    p.y += dy;
  }
}

// First `k` entries of a partial Fisher-Yates shuffle of 0..n-1. Prefixes
// agree for every k under the same seed.
std::vector<std::size_t> choose_distinct(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

void require_positive_count(int count) {
  if (count < 1) throw Error(Errc::invalid_argument, "stroke count must be >= 1");
}

void require_positive_distance(double d) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw Error(Errc::invalid_argument, "drift distance must be > 0");
}

}  // namespace

Trajectory insert_strokes(const Trajectory& traj, int count, Seed seed) {
  require_positive_count(count);
  auto strokes = strokes_of(traj);
  if (strokes.empty()) throw Error(Errc::invalid_trajectory, "trajectory has no strokes");
  const std::size_t originals = strokes.size();
  const double hi = canvas_max(traj);
  Rng rng(seed);
  for (int c = 0; c < count; ++c) {
    Stroke copy = strokes[rng.below(originals)];
    const Box b = bbox_of(copy.points);
    const double to_x = rng.uniform(0.0, std::max(0.0, hi - (b.max_x - b.min_x)));
    const double to_y = rng.uniform(0.0, std::max(0.0, hi - (b.max_y - b.min_y)));
    translate(copy.points, to_x - b.min_x, to_y - b.min_y);
    for (auto& p : copy.points) {
      p.x = std::clamp(p.x, 0.0, hi);
      p.y = std::clamp(p.y, 0.0, hi);
    }
    copy.points.back().state = PenState::Up;
    const auto at = static_cast<std::ptrdiff_t>(rng.below(strokes.size() + 1));
    strokes.insert(strokes.begin() + at, std::move(copy));
  }
  return assemble(strokes, traj.canvas_side(), traj.eos());
}

Trajectory delete_strokes(const Trajectory& traj, int count, Seed seed) {
  require_positive_count(count);
  auto strokes = strokes_of(traj);
  if (static_cast<std::size_t>(count) >= strokes.size())
    throw Error(Errc::invalid_argument, "cannot delete " + std::to_string(count) + " of " +
                                            std::to_string(strokes.size()) + " strokes");
  Rng rng(seed);
  auto doomed = choose_distinct(strokes.size(), static_cast<std::size_t>(count), rng);
  std::vector<bool> drop(strokes.size(), false);
  for (auto i : doomed) drop[i] = true;
  std::vector<Stroke> kept;
  for (std::size_t i = 0; i < strokes.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(strokes[i]));
  return assemble(kept, traj.canvas_side(), traj.eos());
}

Trajectory drift_points(const Trajectory& traj, double distance, Seed seed, double fraction) {
  require_positive_distance(distance);
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(Errc::invalid_argument, "drift fraction must be in (0, 1]");
  std::vector<TrajPoint> pts = traj.points();
  const std::size_t n = traj.drawn().size();
  const auto moved = std::min(
      n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
  const double hi = canvas_max(traj);
  Rng rng(seed);
  for (auto i : choose_distinct(n, moved, rng)) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    pts[i].x = std::clamp(pts[i].x + distance * std::cos(angle), 0.0, hi);
    pts[i].y = std::clamp(pts[i].y + distance * std::sin(angle), 0.0, hi);
  }
  return Trajectory(std::move(pts), traj.canvas_side());
}

Trajectory drift_strokes(const Trajectory& traj, double distance, Seed seed) {
  require_positive_distance(distance);
  auto strokes = strokes_of(traj);
  const double hi = canvas_max(traj);
  Rng rng(seed);
  for (auto& stroke : strokes) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double vx = distance * std::cos(angle);
    const double vy = distance * std::sin(angle);
    const Box b = bbox_of(stroke.points);
    // Largest t in [0, 1] keeping the moved bounding box on the canvas.
    double t = 1.0;
    if (vx > 0.0) t = std::min(t, (hi - b.max_x) / vx);
    if (vx < 0.0) t = std::min(t, b.min_x / -vx);
    if (vy > 0.0) t = std::min(t, (hi - b.max_y) / vy);
    if (vy < 0.0) t = std::min(t, b.min_y / -vy);
    t = std::max(t, 0.0);
    translate(stroke.points, t * vx, t * vy);
    for (auto& p : stroke.points) {  // absorb rounding at the border
      p.x = std::clamp(p.x, 0.0, hi);
      p.y = std::clamp(p.y, 0.0, hi);
    }
  }
  return assemble(strokes, traj.canvas_side(), traj.eos());
}

GrayImage widen_strokes(const Trajectory& traj, int iterations, int side) {
  return to_gray(dilate3x3(rasterize(traj, side), iterations));
}

Trajectory change_sample_rate(const Trajectory& traj, double factor) {
  return resample(traj, factor);
}

Trajectory perturb(const Trajectory& traj, ErrorFamily family, double magnitude, Seed seed) {
  switch (family) {
    case ErrorFamily::StrokeInsert:
      return insert_strokes(traj, static_cast<int>(std::lround(magnitude)), seed);
    case ErrorFamily::StrokeDelete:
      return delete_strokes(traj, static_cast<int>(std::lround(magnitude)), seed);
    case ErrorFamily::PointDrift:
      return drift_points(traj, magnitude, seed);
    case ErrorFamily::StrokeDrift:
      return drift_strokes(traj, magnitude, seed);
  }
  throw Error(Errc::invalid_argument, "unknown error family");
}

}  // namespace trajeval
