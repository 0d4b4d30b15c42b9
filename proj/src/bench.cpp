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

#include "trajeval/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "trajeval/error.hpp"
#include "trajeval/losses.hpp"
#include "trajeval/parallel.hpp"
#include "trajeval/raster.hpp"
#include "trajeval/seq_metrics.hpp"

namespace trajeval {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::AIoU: return "aiou";
    case Metric::IoU: return "iou";
    case Metric::LDTW: return "ldtw";
    case Metric::DTW: return "dtw";
    case Metric::RMSE: return "rmse";
    case Metric::SDTW: return "sdtw";
  }
  return "unknown";
}

Metric metric_from_string(std::string_view name) {
  for (auto m : {Metric::AIoU, Metric::IoU, Metric::LDTW, Metric::DTW, Metric::RMSE,
                 Metric::SDTW})
    if (to_string(m) == name) return m;
  throw Error(Errc::invalid_argument, "unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> parse_metrics(std::string_view list) {
  std::vector<Metric> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = trim(list.substr(0, comma));
    if (!item.empty()) {
      const Metric m = metric_from_string(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "empty metric list");
  return out;
}

std::string_view to_string(InvarianceTransform t) noexcept {
  return t == InvarianceTransform::StrokeWidth ? "stroke-width" : "sample-rate";
}

InvarianceTransform invariance_transform_from_string(std::string_view name) {
  if (name == "stroke-width") return InvarianceTransform::StrokeWidth;
  if (name == "sample-rate") return InvarianceTransform::SampleRate;
  throw Error(Errc::invalid_argument, "unknown transform '" + std::string(name) + "'");
}

bool is_glyph_metric(Metric m) noexcept { return m == Metric::AIoU || m == Metric::IoU; }

double sequence_value(Metric m, const Trajectory& gt, const Trajectory& pred, double gamma) {
  switch (m) {
    case Metric::LDTW: return ldtw(gt, pred);
    case Metric::DTW: return dtw(gt, pred).cost;
    case Metric::RMSE: return rmse(gt, pred);
    case Metric::SDTW: return sdtw(gt, pred, gamma);
    default: break;
  }
  throw Error(Errc::invalid_argument, "not a sequence metric");
}

std::vector<double> default_grid(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::StrokeInsert:
    case ErrorFamily::StrokeDelete:
      return {1, 2, 3, 4, 5};
    case ErrorFamily::PointDrift:
    case ErrorFamily::StrokeDrift:
      return {1, 2, 3, 4, 5, 6, 7, 8};
  }
  return {};
}

std::vector<double> default_grid(InvarianceTransform transform) {
  if (transform == InvarianceTransform::StrokeWidth) return {0, 1, 2, 3, 4};
  return {0.5, 1, 2, 4};
}

std::vector<double> normalize_curve(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::invalid_argument, "cannot normalize an empty curve");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      out[i] = kNaN;
    } else if (hi > lo) {
      out[i] = (values[i] - lo) / (hi - lo);
    }
  }
  return out;
}

std::vector<Trajectory> synthetic_corpus(std::size_t count, Seed seed, int canvas_side) {
  constexpr double kSpacing = 0.025;  // sample spacing in unit-square coordinates
  std::vector<Trajectory> corpus;
  corpus.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    Rng rng(seed.derive(g));
    const auto n_strokes = 6 + rng.below(5);
    std::vector<Stroke> strokes;
    for (std::uint64_t s = 0; s < n_strokes; ++s) {
      const auto n_vertices = 2 + rng.below(4);
      double x = rng.uniform();
      double y = rng.uniform();
      double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
      Stroke stroke;
      stroke.points.push_back({x, y, PenState::Down});
      for (std::uint64_t v = 1; v < n_vertices; ++v) {
        const double len = rng.uniform(0.15, 0.4);
        const double nx = std::clamp(x + len * std::cos(heading), 0.0, 1.0);
        const double ny = std::clamp(y + len * std::sin(heading), 0.0, 1.0);
        const auto steps = std::max<long>(1, std::lround(std::hypot(nx - x, ny - y) / kSpacing));
        for (long k = 1; k <= steps; ++k) {
          const double t = static_cast<double>(k) / static_cast<double>(steps);
          stroke.points.push_back({x + (nx - x) * t, y + (ny - y) * t, PenState::Down});
        }
        x = nx;
        y = ny;
        // Zigzag: alternate turning direction by a sharp angle.
        const double turn = rng.uniform(std::numbers::pi / 3.0, 5.0 * std::numbers::pi / 6.0);
        heading += (v % 2 == 0 ? turn : -turn);
      }
      strokes.push_back(std::move(stroke));
    }
    const TrajPoint last = strokes.back().points.back();
    auto traj = assemble(strokes, canvas_side, last);
    corpus.push_back(normalize_to_canvas(traj, canvas_side));
  }
  return corpus;
}

namespace {

double glyph_value(Metric m, const BinaryMask& g, const BinaryMask& p, int k_max) {
  return m == Metric::AIoU ? aiou(g, p, k_max).score : iou(g, p);
}

SampleTable empty_table(std::span<const double> grid, std::span<const Metric> metrics,
                        std::size_t samples) {
  if (grid.empty()) throw Error(Errc::invalid_argument, "magnitude grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error(Errc::invalid_argument, "magnitude grid must be ascending");
  if (metrics.empty()) throw Error(Errc::invalid_argument, "no metrics selected");
  if (samples == 0) throw Error(Errc::invalid_argument, "corpus is empty");
  SampleTable t;
  t.metrics.assign(metrics.begin(), metrics.end());
  t.grid.assign(grid.begin(), grid.end());
  t.values.assign(metrics.size(),
                  std::vector<std::vector<double>>(grid.size(), std::vector<double>(samples, kNaN)));
  return t;
}

template <typename Fn>
double value_or_nan(Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return kNaN;
  }
}

// Evaluates all selected metrics of one (ground truth, prediction) pair.
// `gt_mask` may be overridden (stroke-width mode); the prediction mask is
// built lazily.
void score_pair(SampleTable& table, std::size_t mag, std::size_t sample, const Trajectory& gt,
                const Trajectory& pred, const std::optional<BinaryMask>& gt_mask,
                const BenchOptions& options) {
  std::optional<BinaryMask> pred_mask;
  bool pred_mask_failed = false;
  for (std::size_t mi = 0; mi < table.metrics.size(); ++mi) {
    const Metric m = table.metrics[mi];
    double v = kNaN;
    if (is_glyph_metric(m)) {
      if (!pred_mask && !pred_mask_failed) {
        try {
          pred_mask = rasterize(pred, options.canvas_side);
        } catch (const Error&) {
          pred_mask_failed = true;
        }
      }
      if (gt_mask && pred_mask)
        v = value_or_nan([&] { return glyph_value(m, *gt_mask, *pred_mask, options.k_max); });
    } else {
      v = value_or_nan([&] { return sequence_value(m, gt, pred, options.gamma); });
    }
    table.values[mi][mag][sample] = v;
  }
}

std::optional<BinaryMask> try_rasterize(const Trajectory& t, int side) {
  try {
    return rasterize(t, side);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

SampleTable sensitivity_samples(std::span<const Trajectory> corpus, ErrorFamily family,
                                std::span<const double> grid, std::span<const Metric> metrics,
                                Seed seed, const BenchOptions& options) {
  SampleTable table = empty_table(grid, metrics, corpus.size());
  parallel_for(corpus.size(), resolve_threads(options.threads), [&](std::size_t s) {
    const Trajectory& gt = corpus[s];
    const Seed sample_seed = seed.derive(s);
    const auto gt_mask = try_rasterize(gt, options.canvas_side);
    for (std::size_t g = 0; g < table.grid.size(); ++g) {
      std::optional<Trajectory> pred;
      try {
        if (family == ErrorFamily::PointDrift)
          pred = drift_points(gt, table.grid[g], sample_seed, options.drift_fraction);
        else
          pred = perturb(gt, family, table.grid[g], sample_seed);
      } catch (const Error&) {
        continue;  // stays NaN: counted as skipped
      }
      score_pair(table, g, s, gt, *pred, gt_mask, options);
    }
  });
  return table;
}

SampleTable invariance_samples(std::span<const Trajectory> corpus, InvarianceTransform transform,
                               std::span<const double> grid, std::span<const Metric> metrics,
                               Seed seed, const BenchOptions& options) {
  SampleTable table = empty_table(grid, metrics, corpus.size());
  parallel_for(corpus.size(), resolve_threads(options.threads), [&](std::size_t s) {
    const Trajectory& gt = corpus[s];
    std::optional<Trajectory> base;
    try {
      base = drift_points(gt, options.base_drift, seed.derive(s), options.drift_fraction);
    } catch (const Error&) {
      return;
    }
    const auto plain_mask = try_rasterize(gt, options.canvas_side);
    for (std::size_t g = 0; g < table.grid.size(); ++g) {
      if (transform == InvarianceTransform::StrokeWidth) {
        const int width = static_cast<int>(std::lround(table.grid[g]));
        std::optional<BinaryMask> wide;
        try {
          wide = binarize(widen_strokes(gt, width, options.canvas_side));
        } catch (const Error&) {
        }
        score_pair(table, g, s, gt, *base, wide, options);
      } else {
        std::optional<Trajectory> pred;
        try {
          pred = change_sample_rate(*base, table.grid[g]);
        } catch (const Error&) {
          continue;
        }
        score_pair(table, g, s, gt, *pred, plain_mask, options);
      }
    }
  });
  return table;
}

std::vector<CurveReport> summarize(const SampleTable& table, Seed seed) {
  std::vector<CurveReport> reports;
  for (std::size_t mi = 0; mi < table.metrics.size(); ++mi) {
    CurveReport r;
    r.metric = std::string(to_string(table.metrics[mi]));
    r.grid = table.grid;
    r.seed = seed.value;
    for (std::size_t g = 0; g < table.grid.size(); ++g) {
      const auto& column = table.values[mi][g];
      r.sample_count = column.size();
      std::vector<double> used;
      for (double v : column)
        if (!std::isnan(v)) used.push_back(v);
      r.samples_used.push_back(used.size());
      r.samples_skipped.push_back(column.size() - used.size());
      r.raw.push_back(used.empty() ? kNaN : stable_sum(used) / static_cast<double>(used.size()));
    }
    r.normalized = normalize_curve(r.raw);
    reports.push_back(std::move(r));
  }
  std::sort(reports.begin(), reports.end(),
            [](const CurveReport& a, const CurveReport& b) { return a.metric < b.metric; });
  return reports;
}

std::vector<CurveReport> sensitivity_run(std::span<const Trajectory> corpus, ErrorFamily family,
                                         std::span<const double> grid,
                                         std::span<const Metric> metrics, Seed seed,
                                         const BenchOptions& options) {
  return summarize(sensitivity_samples(corpus, family, grid, metrics, seed, options), seed);
}

std::vector<CurveReport> invariance_run(std::span<const Trajectory> corpus,
                                        InvarianceTransform transform,
                                        std::span<const double> grid,
                                        std::span<const Metric> metrics, Seed seed,
                                        const BenchOptions& options) {
  return summarize(invariance_samples(corpus, transform, grid, metrics, seed, options), seed);
}

std::string format_fixed(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_curves_csv(std::ostream& os, std::span<const CurveReport> reports) {
  os << "metric,magnitude,raw_mean,normalized,samples_used,samples_skipped\n";
  for (const auto& r : reports) {
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
      os << r.metric << ',' << format_fixed(r.grid[g]) << ',' << format_fixed(r.raw[g]) << ','
         << format_fixed(r.normalized[g]) << ',' << r.samples_used[g] << ','
         << r.samples_skipped[g] << '\n';
    }
  }
}

void write_curves_json(std::ostream& os, std::span<const CurveReport> reports) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
      rows.push_back({{"magnitude", r.grid[g]},
                      {"raw_mean", num(r.raw[g])},
                      {"normalized", num(r.normalized[g])},
                      {"samples_used", r.samples_used[g]},
                      {"samples_skipped", r.samples_skipped[g]}});
    }
    out.push_back({{"metric", r.metric},
                   {"seed", r.seed},
                   {"sample_count", r.sample_count},
                   {"rows", std::move(rows)}});
  }
  os << out.dump(2) << '\n';
}

}  // namespace trajeval
