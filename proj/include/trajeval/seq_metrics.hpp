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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "trajeval/trajectory.hpp"

namespace trajeval {

/// Monotone alignment between q (first index) and p (second index), 1-based.
struct AlignmentPath {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t length() const noexcept { return pairs.size(); }
  /// Checks the endpoint, unit-step and length invariants for sizes (m, n).
  bool valid_for(std::size_t m, std::size_t n) const;
};

struct DtwResult {
  double cost = 0.0;
  AlignmentPath path;
};

enum class GroundDistance { Euclidean, SquaredEuclidean };

double point_distance(const TrajPoint& a, const TrajPoint& b,
                      GroundDistance kind = GroundDistance::Euclidean);

/// Unconstrained DTW over the drawn points (the end-of-sequence point is
/// stripped). Backtracking prefers the diagonal step, then the step that
/// advances q, then the one that advances p.
DtwResult dtw(std::span<const TrajPoint> q, std::span<const TrajPoint> p,
              GroundDistance kind = GroundDistance::Euclidean);
DtwResult dtw(const Trajectory& q, const Trajectory& p,
              GroundDistance kind = GroundDistance::Euclidean);

/// DTW cost divided by the length of the returned optimal path.
double ldtw(const Trajectory& q, const Trajectory& p);

enum class RmseMode {
  Strict,             // point counts must match
  ResamplePrediction  // p is linearly re-indexed to q's point count first
};

double rmse(const Trajectory& q, const Trajectory& p, RmseMode mode = RmseMode::Strict);

/// Index-uniform linear interpolation of a point sequence to `count` points.
std::vector<TrajPoint> resample_to_count(std::span<const TrajPoint> pts, std::size_t count);

}  // namespace trajeval
