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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajeval/bench.hpp"

namespace trajeval {

/// Which side of the Otsu split is ink in a ground-truth image. `Auto`
/// takes the less populated class, which is the stroke side for glyph
/// images in either polarity (scans and mask PGMs alike).
enum class GtPolarity { Auto, InkIsDark, InkIsLight };

struct EvalOptions {
  std::vector<Metric> metrics{Metric::AIoU, Metric::LDTW};
  int canvas_side = kDefaultCanvas;
  int k_max = kDefaultKMax;
  double gamma = 1.0;
  bool normalize = false;
  bool dedupe = false;
  bool downsample_half = false;
  bool rmse_resample = false;
  GtPolarity gt_polarity = GtPolarity::Auto;
  unsigned threads = 0;
};

BinaryMask binarize_ground_truth(const GrayImage& img, GtPolarity polarity);

struct EvalRow {
  std::string name;
  std::map<Metric, double> values;  // metrics that produced a value
  std::optional<int> best_k;        // set when AIoU was computed
  std::string error;                // empty when every selected metric succeeded
  bool failed = false;              // no metric could be computed
};

struct MetricSummary {
  double mean = 0.0;
  double median = 0.0;
  std::size_t count = 0;
};

struct EvalReport {
  std::vector<Metric> metrics;
  std::vector<EvalRow> rows;  // sorted by name
  std::map<Metric, MetricSummary> aggregates;

  bool all_failed() const;
};

/// Scores one prediction file against a ground-truth file. Ground truth may
/// be a trajectory JSON or a grayscale PGM; in the image case only glyph
/// metrics apply. Errors are captured in the row, never thrown.
EvalRow evaluate_pair(const std::string& name, const std::filesystem::path& gt,
                      const std::filesystem::path& pred, const EvalOptions& options);

/// Files or directories. Directories are paired by basename (stem); a
/// missing counterpart yields an error row.
EvalReport evaluate_paths(const std::filesystem::path& gt, const std::filesystem::path& pred,
                          const EvalOptions& options);

/// Recomputes mean and median per metric from the rows.
std::map<Metric, MetricSummary> aggregate(const std::vector<EvalRow>& rows,
                                          const std::vector<Metric>& metrics);

void write_eval_csv(std::ostream& os, const EvalReport& report);
void write_eval_json(std::ostream& os, const EvalReport& report);

}  // namespace trajeval
