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

#include "trajeval/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trajeval/error.hpp"

namespace trajeval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbFloor = 1e-12;

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error(Errc::invalid_argument, "gamma must be a positive finite number");
}

double softmin3(double a, double b, double c, double gamma) {
  const double m = std::min({a, b, c});
  if (m == kInf) return kInf;
  const double s = std::exp(-(a - m) / gamma) + std::exp(-(b - m) / gamma) +
                   std::exp(-(c - m) / gamma);
  return m - gamma * std::log(s);
}

// Row-major (m + 2) x (n + 2) table with a one-cell border on every side.
struct Table {
  std::size_t cols;
  std::vector<double> cells;

  Table(std::size_t rows, std::size_t cols_, double fill)
      : cols(cols_), cells(rows * cols_, fill) {}
  double& operator()(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
};

Table forward(std::span<const TrajPoint> q, std::span<const TrajPoint> p, double gamma) {
  const std::size_t m = q.size();
  const std::size_t n = p.size();
  Table r(m + 2, n + 2, kInf);
  r(0, 0) = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double dx = q[i - 1].x - p[j - 1].x;
      const double dy = q[i - 1].y - p[j - 1].y;
      r(i, j) = dx * dx + dy * dy + softmin3(r(i - 1, j), r(i, j - 1), r(i - 1, j - 1), gamma);
    }
  }
  return r;
}

void check_sequences(std::span<const TrajPoint> q, std::span<const TrajPoint> p) {
  if (q.empty() || p.empty())
    throw Error(Errc::empty_sequence, "soft-DTW needs two nonempty point sequences");
}

}  // namespace

double softmin(std::span<const double> values, double gamma) {
  check_gamma(gamma);
  if (values.empty()) throw Error(Errc::invalid_argument, "softmin of an empty list");
  const double m = *std::min_element(values.begin(), values.end());
  if (m == kInf) return kInf;
  double s = 0.0;
  for (double v : values) s += std::exp(-(v - m) / gamma);
  return m - gamma * std::log(s);
}

double sdtw(std::span<const TrajPoint> q, std::span<const TrajPoint> p, double gamma) {
  check_gamma(gamma);
  check_sequences(q, p);
  auto r = forward(q, p, gamma);
  return r(q.size(), p.size());
}

double sdtw(const Trajectory& q, const Trajectory& p, double gamma) {
  return sdtw(q.drawn(), p.drawn(), gamma);
}

// Backward recursion over the soft-DP table: e(i, j) is the derivative of
// the final value with respect to r(i, j), accumulated from the three
// successors weighted by their soft-min responsibilities.
std::vector<Gradient2D> sdtw_grad(std::span<const TrajPoint> q, std::span<const TrajPoint> p,
                                  double gamma) {
  check_gamma(gamma);
  check_sequences(q, p);
  const std::size_t m = q.size();
  const std::size_t n = p.size();
  Table r = forward(q, p, gamma);

  Table d(m + 2, n + 2, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double dx = q[i - 1].x - p[j - 1].x;
      const double dy = q[i - 1].y - p[j - 1].y;
      d(i, j) = dx * dx + dy * dy;
    }
  }
  for (std::size_t i = 1; i <= m; ++i) r(i, n + 1) = -kInf;
  for (std::size_t j = 1; j <= n; ++j) r(m + 1, j) = -kInf;
  r(m + 1, n + 1) = r(m, n);

  Table e(m + 2, n + 2, 0.0);
  e(m + 1, n + 1) = 1.0;
  for (std::size_t i = m; i >= 1; --i) {
    for (std::size_t j = n; j >= 1; --j) {
      const double a = std::exp((r(i + 1, j) - r(i, j) - d(i + 1, j)) / gamma);
      const double b = std::exp((r(i, j + 1) - r(i, j) - d(i, j + 1)) / gamma);
      const double c = std::exp((r(i + 1, j + 1) - r(i, j) - d(i + 1, j + 1)) / gamma);
      e(i, j) = e(i + 1, j) * a + e(i, j + 1) * b + e(i + 1, j + 1) * c;
    }
  }

  std::vector<Gradient2D> grad(n);
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 1; i <= m; ++i) {
      const double w = e(i, j);
      grad[j - 1].dx += w * 2.0 * (p[j - 1].x - q[i - 1].x);
      grad[j - 1].dy += w * 2.0 * (p[j - 1].y - q[i - 1].y);
    }
  }
  return grad;
}

std::vector<Gradient2D> sdtw_grad(const Trajectory& q, const Trajectory& p, double gamma) {
  return sdtw_grad(q.drawn(), p.drawn(), gamma);
}

namespace {

void check_lengths(std::size_t pred, std::size_t gt) {
  if (pred != gt)
    throw Error(Errc::length_mismatch, "prediction has " + std::to_string(pred) +
                                           " points, ground truth has " + std::to_string(gt));
}

}  // namespace

double l1_loss(std::span<const PredictedPoint> pred, const Trajectory& gt) {
  const auto& pts = gt.points();
  check_lengths(pred.size(), pts.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    sum += std::abs(pred[i].x - pts[i].x) + std::abs(pred[i].y - pts[i].y);
  return sum / static_cast<double>(pts.size());
}

double wce_loss(std::span<const PredictedPoint> pred, const Trajectory& gt,
                const ClassWeights& weights) {
  const auto& pts = gt.points();
  check_lengths(pred.size(), pts.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& probs = pred[i].state_probs;
    if (std::any_of(probs.begin(), probs.end(), [](double v) { return !(v >= 0.0); }) ||
        std::abs(probs[0] + probs[1] + probs[2] - 1.0) > 1e-6)
      throw Error(Errc::invalid_argument,
                  "state probabilities of point " + std::to_string(i) + " are not a distribution");
    const auto cls = pts[i].state;
    const double prob = std::max(pred[i].state_probs[static_cast<std::size_t>(cls)], kProbFloor);
    sum += -weights[cls] * std::log(prob);
  }
  return sum / static_cast<double>(pts.size());
}

double total_loss(double l1, double wce, double sdtw_value, const LossWeights& w) {
  return w.lambda1 * l1 + w.lambda2 * wce + w.lambda3 * sdtw_value;
}

}  // namespace trajeval
