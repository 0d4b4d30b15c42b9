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

#include "trajeval/seq_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trajeval/error.hpp"

namespace trajeval {

bool AlignmentPath::valid_for(std::size_t m, std::size_t n) const {
  if (pairs.empty() || m == 0 || n == 0) return false;
  if (pairs.front() != std::pair<std::size_t, std::size_t>{1, 1}) return false;
  if (pairs.back() != std::pair<std::size_t, std::size_t>{m, n}) return false;
  for (std::size_t t = 1; t < pairs.size(); ++t) {
    const auto di = pairs[t].first - pairs[t - 1].first;
    const auto dj = pairs[t].second - pairs[t - 1].second;
    if (pairs[t].first < pairs[t - 1].first || pairs[t].second < pairs[t - 1].second)
      return false;
    if (di > 1 || dj > 1 || (di == 0 && dj == 0)) return false;
  }
  return pairs.size() >= std::max(m, n) && pairs.size() <= m + n;
}

double point_distance(const TrajPoint& a, const TrajPoint& b, GroundDistance kind) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double sq = dx * dx + dy * dy;
  return kind == GroundDistance::Euclidean ? std::sqrt(sq) : sq;
}

DtwResult dtw(std::span<const TrajPoint> q, std::span<const TrajPoint> p, GroundDistance kind) {
  if (q.empty() || p.empty())
    throw Error(Errc::empty_sequence, "DTW needs two nonempty point sequences");
  const std::size_t m = q.size();
  const std::size_t n = p.size();
  const double inf = std::numeric_limits<double>::infinity();

  // acc[(i + 1) * (n + 1) + (j + 1)] holds the best cost aligning q[0..i], p[0..j].
  std::vector<double> acc((m + 1) * (n + 1), inf);
  auto at = [n, &acc](std::size_t i, std::size_t j) -> double& { return acc[i * (n + 1) + j]; };
  at(0, 0) = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double best = std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
      at(i, j) = point_distance(q[i - 1], p[j - 1], kind) + best;
    }
  }

  DtwResult result;
  result.cost = at(m, n);
  auto& pairs = result.path.pairs;
  std::size_t i = m;
  std::size_t j = n;
  pairs.emplace_back(i, j);
  while (i > 1 || j > 1) {
    const double diag = at(i - 1, j - 1);
    const double up = at(i - 1, j);
    const double left = at(i, j - 1);
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
    pairs.emplace_back(i, j);
  }
  std::reverse(pairs.begin(), pairs.end());
  return result;
}

DtwResult dtw(const Trajectory& q, const Trajectory& p, GroundDistance kind) {
  return dtw(q.drawn(), p.drawn(), kind);
}

double ldtw(const Trajectory& q, const Trajectory& p) {
  const auto r = dtw(q, p);
  return r.cost / static_cast<double>(r.path.length());
}

std::vector<TrajPoint> resample_to_count(std::span<const TrajPoint> pts, std::size_t count) {
  if (pts.empty() || count == 0)
    throw Error(Errc::empty_sequence, "cannot resample an empty point sequence");
  std::vector<TrajPoint> out;
  out.reserve(count);
  if (count == 1 || pts.size() == 1) {
    out.assign(count, pts.front());
    return out;
  }
  const double span_len = static_cast<double>(pts.size() - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = span_len * static_cast<double>(k) / static_cast<double>(count - 1);
    const auto lo = std::min(static_cast<std::size_t>(u), pts.size() - 2);
    const double t = u - static_cast<double>(lo);
    const auto& a = pts[lo];
    const auto& b = pts[lo + 1];
    out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, t < 0.5 ? a.state : b.state});
  }
  return out;
}

double rmse(const Trajectory& q, const Trajectory& p, RmseMode mode) {
  const auto qs = q.drawn();
  std::vector<TrajPoint> resampled;
  std::span<const TrajPoint> ps = p.drawn();
  if (qs.empty() || ps.empty())
    throw Error(Errc::empty_sequence, "RMSE needs two nonempty point sequences");
  if (qs.size() != ps.size()) {
    if (mode == RmseMode::Strict)
      throw Error(Errc::length_mismatch, "RMSE needs equal point counts (" +
                                             std::to_string(qs.size()) + " vs " +
                                             std::to_string(ps.size()) + ")");
    resampled = resample_to_count(ps, qs.size());
    ps = resampled;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i)
    sum += point_distance(qs[i], ps[i], GroundDistance::SquaredEuclidean);
  return std::sqrt(sum / static_cast<double>(qs.size()));
}

}  // namespace trajeval
