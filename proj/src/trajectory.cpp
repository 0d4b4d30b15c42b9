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

#include "trajeval/trajectory.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "trajeval/error.hpp"

namespace trajeval {

Trajectory::Trajectory(std::vector<TrajPoint> points, int canvas_side)
    : points_(std::move(points)), canvas_side_(canvas_side) {
  if (canvas_side_ <= 0)
    throw Error(Errc::invalid_argument, "canvas side must be positive");
  if (points_.empty())
    throw Error(Errc::invalid_trajectory, "trajectory has no points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(Errc::invalid_trajectory,
                  "non-finite coordinate at point " + std::to_string(i));
    if (p.state == PenState::End && i + 1 != points_.size())
      throw Error(Errc::invalid_trajectory,
                  "end-of-sequence at point " + std::to_string(i) + " is not last");
  }
}

std::vector<Stroke> strokes_of(const Trajectory& traj) {
  std::vector<Stroke> strokes;
  Stroke current;
  for (const auto& p : traj.drawn()) {
    current.points.push_back(p);
    if (p.state == PenState::Up) {
      strokes.push_back(std::move(current));
      current = {};
    }
  }
  if (!current.points.empty()) strokes.push_back(std::move(current));
  return strokes;
}

Trajectory assemble(std::span<const Stroke> strokes, int canvas_side,
                    std::optional<TrajPoint> eos) {
  std::vector<TrajPoint> points;
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const auto& src = strokes[s].points;
    if (src.empty()) continue;
    const bool final_stroke = s + 1 == strokes.size();
    for (std::size_t i = 0; i < src.size(); ++i) {
      TrajPoint p = src[i];
      if (i + 1 < src.size()) {
        p.state = PenState::Down;
      } else if (!(final_stroke && p.state == PenState::Down)) {
        p.state = PenState::Up;
      }
      points.push_back(p);
    }
  }
  if (eos) {
    TrajPoint e = *eos;
    e.state = PenState::End;
    points.push_back(e);
  }
  return Trajectory(std::move(points), canvas_side);
}

Trajectory normalize_to_canvas(const Trajectory& traj, int side) {
  if (side <= 0) throw Error(Errc::invalid_argument, "canvas side must be positive");
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& p : traj.points()) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double longest = std::max(max_x - min_x, max_y - min_y);

  std::vector<TrajPoint> out = traj.points();
  if (longest <= 0.0) {
    const double center = (side - 1) / 2.0;
    for (auto& p : out) {
      p.x = center;
      p.y = center;
    }
  } else {
    const double scale = (side - 1) / longest;
    for (auto& p : out) {
      p.x = (p.x - min_x) * scale;
      p.y = (p.y - min_y) * scale;
    }
  }
  return Trajectory(std::move(out), side);
}

Trajectory dedupe_points(const Trajectory& traj) {
  auto strokes = strokes_of(traj);
  for (auto& stroke : strokes) {
    const PenState terminal = stroke.points.back().state;
    std::vector<TrajPoint> kept;
    for (const auto& p : stroke.points) {
      if (!kept.empty() && pixel_of(kept.back()) == pixel_of(p)) continue;
      kept.push_back(p);
    }
    kept.back().state = terminal;
    stroke.points = std::move(kept);
  }
  return assemble(strokes, traj.canvas_side(), traj.eos());
}

Trajectory downsample_half(const Trajectory& traj) {
  auto strokes = strokes_of(traj);
  for (auto& stroke : strokes) {
    const auto& src = stroke.points;
    std::vector<TrajPoint> kept;
    for (std::size_t i = 0; i < src.size(); i += 2) kept.push_back(src[i]);
    if ((src.size() - 1) % 2 != 0) kept.push_back(src.back());
    kept.back().state = src.back().state;
    stroke.points = std::move(kept);
  }
  return assemble(strokes, traj.canvas_side(), traj.eos());
}

namespace {

std::vector<TrajPoint> densify(const std::vector<TrajPoint>& src, std::size_t target) {
  const std::size_t segments = src.size() - 1;
  const std::size_t total = target - 1;
  std::vector<TrajPoint> out;
  out.reserve(target);
  for (std::size_t s = 0; s < segments; ++s) {
    // Spread the subdivisions evenly; every segment gets at least one.
    const std::size_t pieces = (s + 1) * total / segments - s * total / segments;
    const auto& a = src[s];
    const auto& b = src[s + 1];
    for (std::size_t k = 0; k < pieces; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(pieces);
      out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, PenState::Down});
    }
  }
  out.push_back(src.back());
  return out;
}

std::vector<TrajPoint> decimate(const std::vector<TrajPoint>& src, std::size_t target) {
  const std::size_t last = src.size() - 1;
  std::vector<TrajPoint> out;
  out.reserve(target);
  for (std::size_t k = 0; k < target; ++k) {
    const std::size_t idx = (2 * k * last + (target - 1)) / (2 * (target - 1));
    out.push_back(src[idx]);
  }
  return out;
}

}  // namespace

Trajectory resample(const Trajectory& traj, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw Error(Errc::invalid_argument, "resample factor must be positive");
  auto strokes = strokes_of(traj);
  for (auto& stroke : strokes) {
    const auto& src = stroke.points;
    if (src.size() < 2) continue;
    const PenState terminal = src.back().state;
    const double scaled = factor * static_cast<double>(src.size() - 1);
    auto target = static_cast<std::size_t>(std::max(1, round_half_up(scaled))) + 1;
    std::vector<TrajPoint> out;
    if (target == src.size()) {
      continue;
    } else if (target > src.size()) {
      out = densify(src, target);
    } else {
      out = decimate(src, target);
    }
    out.back().state = terminal;
    stroke.points = std::move(out);
  }
  return assemble(strokes, traj.canvas_side(), traj.eos());
}

}  // namespace trajeval
