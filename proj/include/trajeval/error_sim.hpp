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

#include <cstdint>
#include <random>
#include <string_view>

#include "trajeval/raster.hpp"
#include "trajeval/trajectory.hpp"

namespace trajeval {

struct Seed {
  std::uint64_t value = 0;

  /// Per-sample stream: seed xor sample index.
  Seed derive(std::uint64_t index) const { return {value ^ index}; }
};

/// Deterministic random source. Draws are built from raw 64-bit engine
/// output so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

enum class ErrorFamily { StrokeInsert, StrokeDelete, PointDrift, StrokeDrift };

std::string_view to_string(ErrorFamily family) noexcept;
ErrorFamily error_family_from_string(std::string_view name);

/// Appends `count` strokes, each a copy of a random existing stroke moved to
/// a random in-canvas position, at random stroke positions.
Trajectory insert_strokes(const Trajectory& traj, int count, Seed seed);

/// Removes `count` distinct random strokes; at least one stroke must remain.
Trajectory delete_strokes(const Trajectory& traj, int count, Seed seed);

/// Moves ceil(fraction * N) random drawn points by exactly `distance` in
/// independent random directions, then clamps them to the canvas.
Trajectory drift_points(const Trajectory& traj, double distance, Seed seed,
                        double fraction = 1.0);

/// Translates every stroke by `distance` in an independent random direction;
/// the translation is shortened when the stroke would leave the canvas.
Trajectory drift_strokes(const Trajectory& traj, double distance, Seed seed);

/// Rasterizes at `side`, dilates `iterations` times and renders ink-is-dark.
GrayImage widen_strokes(const Trajectory& traj, int iterations, int side);

Trajectory change_sample_rate(const Trajectory& traj, double factor);

/// Applies one error family at magnitude `magnitude` (a count for the stroke
/// insert/delete families, a pixel distance for the drift families).
Trajectory perturb(const Trajectory& traj, ErrorFamily family, double magnitude, Seed seed);

}  // namespace trajeval
