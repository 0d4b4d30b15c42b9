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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trajeval/error_sim.hpp"
#include "trajeval/glyph_metrics.hpp"
#include "trajeval/trajectory.hpp"

namespace trajeval {

enum class Metric { AIoU, IoU, LDTW, DTW, RMSE, SDTW };

std::string_view to_string(Metric metric) noexcept;
Metric metric_from_string(std::string_view name);
/// Parses a comma-separated list such as "aiou,ldtw".
std::vector<Metric> parse_metrics(std::string_view list);

bool is_glyph_metric(Metric m) noexcept;

/// Sequence metric of a prediction against ground truth (LDTW, DTW, strict
/// RMSE or soft-DTW with smoothing `gamma`).
double sequence_value(Metric m, const Trajectory& gt, const Trajectory& pred, double gamma);

/// Averaged metric values over a magnitude grid.
struct CurveReport {
  std::string metric;
  std::vector<double> grid;
  std::vector<double> raw;         // per-magnitude mean (NaN if every sample skipped)
  std::vector<double> normalized;  // min-max of `raw`
  std::vector<std::size_t> samples_used;
  std::vector<std::size_t> samples_skipped;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const CurveReport&, const CurveReport&) = default;
};

struct BenchOptions {
  int canvas_side = kDefaultCanvas;
  int k_max = kDefaultKMax;
  double gamma = 1.0;  // soft-DTW smoothing
  double drift_fraction = 1.0;
  double base_drift = 2.0;  // invariance runs only
  unsigned threads = 0;     // 0: TRAJEVAL_THREADS or hardware concurrency
};

enum class InvarianceTransform { StrokeWidth, SampleRate };

std::string_view to_string(InvarianceTransform t) noexcept;
InvarianceTransform invariance_transform_from_string(std::string_view name);

/// Default magnitude grids: counts 1..5, drifts 1..8 px, widths 0..4,
/// sample-rate factors {0.5, 1, 2, 4}.
std::vector<double> default_grid(ErrorFamily family);
std::vector<double> default_grid(InvarianceTransform transform);

/// Min-max normalization to [0, 1]; a constant curve maps to zeros. NaN
/// entries are ignored for the range and stay NaN.
std::vector<double> normalize_curve(std::span<const double> values);

/// Seeded zigzag glyphs with 6..10 strokes, normalized to the canvas.
std::vector<Trajectory> synthetic_corpus(std::size_t count, Seed seed,
                                         int canvas_side = kDefaultCanvas);

/// Per-sample metric values; skipped entries hold NaN. Indexed
/// [metric][magnitude][sample]. Exposed so aggregates can be recomputed.
struct SampleTable {
  std::vector<Metric> metrics;
  std::vector<double> grid;
  std::vector<std::vector<std::vector<double>>> values;
};

SampleTable sensitivity_samples(std::span<const Trajectory> corpus, ErrorFamily family,
                                std::span<const double> grid, std::span<const Metric> metrics,
                                Seed seed, const BenchOptions& options = {});

SampleTable invariance_samples(std::span<const Trajectory> corpus, InvarianceTransform transform,
                               std::span<const double> grid, std::span<const Metric> metrics,
                               Seed seed, const BenchOptions& options = {});

/// Aggregates a sample table into one report per metric, sorted by name.
std::vector<CurveReport> summarize(const SampleTable& table, Seed seed);

std::vector<CurveReport> sensitivity_run(std::span<const Trajectory> corpus, ErrorFamily family,
                                         std::span<const double> grid,
                                         std::span<const Metric> metrics, Seed seed,
                                         const BenchOptions& options = {});

std::vector<CurveReport> invariance_run(std::span<const Trajectory> corpus,
                                        InvarianceTransform transform,
                                        std::span<const double> grid,
                                        std::span<const Metric> metrics, Seed seed,
                                        const BenchOptions& options = {});

/// `metric,magnitude,raw_mean,normalized,samples_used,samples_skipped`, six
/// decimals, rows ordered by metric then magnitude.
void write_curves_csv(std::ostream& os, std::span<const CurveReport> reports);
void write_curves_json(std::ostream& os, std::span<const CurveReport> reports);

/// Fixed six-decimal rendering used by every CSV writer ("nan" for NaN).
std::string format_fixed(double v);

}  // namespace trajeval
