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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace trajeval {

inline constexpr int kDefaultCanvas = 64;

/// One-hot pen state carried by every trajectory point.
///
/// A `Down` point is joined by a drawn segment to its successor, an `Up`
/// point ends its stroke, and `End` marks end-of-sequence (position carries
/// no meaning and is never drawn or aligned).
enum class PenState : std::uint8_t { Down = 0, Up = 1, End = 2 };

struct TrajPoint {
  double x = 0.0;
  double y = 0.0;
  PenState state = PenState::Down;

  friend bool operator==(const TrajPoint&, const TrajPoint&) = default;
};

struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Quantization used everywhere a continuous coordinate meets the pixel
/// grid: round half up.
inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

inline Pixel pixel_of(const TrajPoint& p) {
  return {round_half_up(p.x), round_half_up(p.y)};
}

/// Ordered pen-tip samples on a square canvas.
///
/// Construction validates: at least one point, finite coordinates, at most
/// one `End` point and only in last position, canvas side > 0. Coordinates
/// are not required to lie on the canvas until they are rasterized.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TrajPoint> points, int canvas_side = kDefaultCanvas);

  const std::vector<TrajPoint>& points() const noexcept { return points_; }
  int canvas_side() const noexcept { return canvas_side_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool has_eos() const noexcept { return points_.back().state == PenState::End; }

  /// Points that carry position: everything except a trailing `End`.
  std::span<const TrajPoint> drawn() const noexcept {
    return {points_.data(), points_.size() - (has_eos() ? 1 : 0)};
  }

  std::optional<TrajPoint> eos() const {
    if (!has_eos()) return std::nullopt;
    return points_.back();
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<TrajPoint> points_;
  int canvas_side_;
};

/// Maximal pen-down run; the last point is `Up` (or `Down` for a trailing
/// stroke that never lifts).
struct Stroke {
  std::vector<TrajPoint> points;

  friend bool operator==(const Stroke&, const Stroke&) = default;
};

std::vector<Stroke> strokes_of(const Trajectory& traj);

/// Rebuilds a trajectory from strokes. Interior points become `Down`, each
/// stroke's last point becomes `Up`; the final stroke keeps a `Down`
/// terminal if it had one. `eos`, when given, is appended as the `End` point.
Trajectory assemble(std::span<const Stroke> strokes, int canvas_side,
                    std::optional<TrajPoint> eos);

/// Uniform scale plus translation mapping the bounding box min corner to the
/// origin and the longest side to `side - 1`. A single distinct position is
/// placed at the canvas center with scale 1.
Trajectory normalize_to_canvas(const Trajectory& traj, int side);

/// Collapses consecutive within-stroke points that round to the same pixel.
Trajectory dedupe_points(const Trajectory& traj);

/// Keeps every second point of each stroke plus the stroke's last point.
Trajectory downsample_half(const Trajectory& traj);

/// Changes point density per stroke. For `factor >= 1` each stroke of n
/// points gets round(factor * (n - 1)) + 1 points, all original vertices are
/// kept and new points are linear interpolants on the original segments.
/// For `factor < 1` points are decimated uniformly by index, keeping both
/// stroke endpoints.
Trajectory resample(const Trajectory& traj, double factor);

}  // namespace trajeval
