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

#include <array>
#include <span>
#include <vector>

#include "trajeval/trajectory.hpp"

namespace trajeval {

struct SoftParams {
  double gamma = 1.0;
};

/// Per-state cross-entropy weights, indexed by PenState.
struct ClassWeights {
  double pen_down = 1.0;
  double pen_up = 5.0;
  double end_of_sequence = 1.0;

  double operator[](PenState s) const {
    switch (s) {
      case PenState::Down: return pen_down;
      case PenState::Up: return pen_up;
      case PenState::End: return end_of_sequence;
    }
    return pen_down;
  }
};

/// Weights of the training objective
///   L = lambda1 * L1 + lambda2 * L_wce + lambda3 * L_sdtw.
struct LossWeights {
  double lambda1 = 0.5;
  double lambda2 = 1.0;
  double lambda3 = 1.0 / 6000.0;
  ClassWeights class_weights;
};

struct PredictedPoint {
  double x = 0.0;
  double y = 0.0;
  std::array<double, 3> state_probs{1.0, 0.0, 0.0};  // Down, Up, End
};

struct Gradient2D {
  double dx = 0.0;
  double dy = 0.0;
};

/// -gamma * log(sum(exp(-a_i / gamma))), max-shifted. Infinite entries are
/// ignored unless all entries are infinite.
double softmin(std::span<const double> values, double gamma);

/// Soft-DTW with squared Euclidean ground cost over the drawn points.
double sdtw(const Trajectory& q, const Trajectory& p, double gamma = 1.0);
double sdtw(std::span<const TrajPoint> q, std::span<const TrajPoint> p, double gamma);

/// Gradient of `sdtw` with respect to every drawn point of `p`.
std::vector<Gradient2D> sdtw_grad(const Trajectory& q, const Trajectory& p, double gamma = 1.0);
std::vector<Gradient2D> sdtw_grad(std::span<const TrajPoint> q, std::span<const TrajPoint> p,
                                  double gamma);

double l1_loss(std::span<const PredictedPoint> pred, const Trajectory& gt);

/// Mean weighted negative log-likelihood of the true pen state; probabilities
/// are clamped below at 1e-12.
double wce_loss(std::span<const PredictedPoint> pred, const Trajectory& gt,
                const ClassWeights& weights = {});

double total_loss(double l1, double wce, double sdtw_value, const LossWeights& w = {});

}  // namespace trajeval
