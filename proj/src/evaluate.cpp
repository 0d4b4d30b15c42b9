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

#include "trajeval/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include <json.hpp>

#include "trajeval/error.hpp"
#include "trajeval/io.hpp"
#include "trajeval/parallel.hpp"
#include "trajeval/seq_metrics.hpp"

namespace trajeval {

namespace fs = std::filesystem;

namespace {

bool is_image(const fs::path& p) { return p.extension() == ".pgm"; }

Trajectory preprocess(Trajectory t, const EvalOptions& o) {
  if (o.normalize) t = normalize_to_canvas(t, o.canvas_side);
  if (o.dedupe) t = dedupe_points(t);
  if (o.downsample_half) t = downsample_half(t);
  return t;
}

void note(EvalRow& row, Metric m, const std::string& what) {
  if (!row.error.empty()) row.error += "; ";
  row.error += std::string(to_string(m)) + ": " + what;
}

}  // namespace

BinaryMask binarize_ground_truth(const GrayImage& img, GtPolarity polarity) {
  switch (polarity) {
    case GtPolarity::InkIsDark: return binarize(img, Polarity::InkIsDark);
    case GtPolarity::InkIsLight: return binarize(img, Polarity::InkIsLight);
    case GtPolarity::Auto: break;
  }
  const BinaryMask dark = binarize(img, Polarity::InkIsDark);
  const std::size_t total = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height());
  // Ties keep the dark-ink reading.
  if (dark.count() * 2 <= total) return dark;
  return binarize(img, Polarity::InkIsLight);
}

bool EvalReport::all_failed() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const EvalRow& r) { return r.failed; });
}

EvalRow evaluate_pair(const std::string& name, const fs::path& gt_path, const fs::path& pred_path,
                      const EvalOptions& options) {
  EvalRow row;
  row.name = name;
  try {
    const Trajectory pred = preprocess(read_trajectory(pred_path), options);
    std::optional<Trajectory> gt;
    BinaryMask gt_mask(1, 1);
    int side = options.canvas_side;
    bool have_gt_mask = false;
    std::string gt_mask_error;

    if (is_image(gt_path)) {
      const GrayImage img = read_pgm(gt_path);
      if (img.width() != img.height())
        throw Error(Errc::dimension_mismatch, "ground-truth image is not square");
      side = img.width();
      gt_mask = binarize_ground_truth(img, options.gt_polarity);
      have_gt_mask = true;
    } else {
      gt = preprocess(read_trajectory(gt_path), options);
      try {
        gt_mask = rasterize(*gt, side);
        have_gt_mask = true;
      } catch (const Error& e) {
        gt_mask_error = std::string("ground truth: ") + e.what();
      }
    }

    std::optional<BinaryMask> pred_mask;
    std::string pred_mask_error;
    for (Metric m : options.metrics) {
      try {
        if (is_glyph_metric(m)) {
          if (!have_gt_mask) throw Error(Errc::out_of_bounds, gt_mask_error);
          if (!pred_mask) {
            try {
              pred_mask = rasterize(pred, side);
            } catch (const Error& e) {
              throw Error(e.code(), std::string("prediction: ") + e.what());
            }
          }
          if (m == Metric::AIoU) {
            const auto r = aiou(gt_mask, *pred_mask, options.k_max);
            row.values[m] = r.score;
            row.best_k = r.best_k;
          } else {
            row.values[m] = iou(gt_mask, *pred_mask);
          }
        } else {
          if (!gt) continue;  // image ground truth: sequence metrics do not apply
          if (m == Metric::RMSE && options.rmse_resample)
            row.values[m] = rmse(*gt, pred, RmseMode::ResamplePrediction);
          else
            row.values[m] = sequence_value(m, *gt, pred, options.gamma);
        }
      } catch (const Error& e) {
        note(row, m, e.what());
      }
    }
    row.failed = row.values.empty();
    if (row.failed && row.error.empty()) row.error = "no selected metric applies";
  } catch (const Error& e) {
    row.error = e.what();
    row.failed = true;
  }
  return row;
}

namespace {

std::map<std::string, fs::path> index_dir(const fs::path& dir, bool allow_images) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() == ".json" || (allow_images && p.extension() == ".pgm")) {
      const std::string stem = p.stem().string();
      // Prefer the trajectory when both forms of the same sample exist.
      auto it = out.find(stem);
      if (it == out.end() || p.extension() == ".json") out[stem] = p;
    }
  }
  return out;
}

}  // namespace

EvalReport evaluate_paths(const fs::path& gt, const fs::path& pred, const EvalOptions& options) {
  EvalReport report;
  report.metrics = options.metrics;

  struct Job {
    std::string name;
    fs::path gt, pred;
    std::string missing;
  };
  std::vector<Job> jobs;
  if (fs::is_directory(gt) && fs::is_directory(pred)) {
    const auto gts = index_dir(gt, true);
    const auto preds = index_dir(pred, false);
    std::set<std::string> names;
    for (const auto& [k, v] : gts) names.insert(k);
    for (const auto& [k, v] : preds) names.insert(k);
    for (const auto& n : names) {
      Job j{n, {}, {}, {}};
      const auto g = gts.find(n);
      const auto p = preds.find(n);
      if (g == gts.end()) j.missing = "missing ground truth for '" + n + "'";
      else j.gt = g->second;
      if (p == preds.end()) j.missing = "missing prediction for '" + n + "'";
      else j.pred = p->second;
      jobs.push_back(std::move(j));
    }
  } else if (fs::is_directory(gt) || fs::is_directory(pred)) {
    throw Error(Errc::invalid_argument, "ground truth and prediction must both be files or both be directories");
  } else {
    jobs.push_back({pred.stem().string(), gt, pred, {}});
  }

  report.rows.resize(jobs.size());
  parallel_for(jobs.size(), resolve_threads(options.threads), [&](std::size_t i) {
    const Job& j = jobs[i];
    if (!j.missing.empty()) {
      report.rows[i].name = j.name;
      report.rows[i].error = j.missing;
      report.rows[i].failed = true;
      return;
    }
    report.rows[i] = evaluate_pair(j.name, j.gt, j.pred, options);
  });
  std::sort(report.rows.begin(), report.rows.end(),
            [](const EvalRow& a, const EvalRow& b) { return a.name < b.name; });
  report.aggregates = aggregate(report.rows, report.metrics);
  return report;
}

std::map<Metric, MetricSummary> aggregate(const std::vector<EvalRow>& rows,
                                          const std::vector<Metric>& metrics) {
  std::map<Metric, MetricSummary> out;
  for (Metric m : metrics) {
    std::vector<double> vals;
    for (const auto& r : rows) {
      const auto it = r.values.find(m);
      if (it != r.values.end()) vals.push_back(it->second);
    }
    MetricSummary s;
    s.count = vals.size();
    if (!vals.empty()) {
      s.mean = stable_sum(vals) / static_cast<double>(vals.size());
      std::sort(vals.begin(), vals.end());
      const std::size_t mid = vals.size() / 2;
      s.median = vals.size() % 2 ? vals[mid] : (vals[mid - 1] + vals[mid]) / 2.0;
    } else {
      s.mean = s.median = std::numeric_limits<double>::quiet_NaN();
    }
    out[m] = s;
  }
  return out;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

bool has_aiou(const EvalReport& r) {
  return std::find(r.metrics.begin(), r.metrics.end(), Metric::AIoU) != r.metrics.end();
}

}  // namespace

void write_eval_csv(std::ostream& os, const EvalReport& report) {
  os << "name";
  for (Metric m : report.metrics) os << ',' << to_string(m);
  if (has_aiou(report)) os << ",best_k";
  os << ",error\n";
  for (const auto& row : report.rows) {
    os << csv_quote(row.name);
    for (Metric m : report.metrics) {
      os << ',';
      const auto it = row.values.find(m);
      if (it != row.values.end()) os << format_fixed(it->second);
    }
    if (has_aiou(report)) {
      os << ',';
      if (row.best_k) os << *row.best_k;
    }
    os << ',' << csv_quote(row.error) << '\n';
  }
  for (const char* which : {"mean", "median"}) {
    os << '#' << which;
    for (Metric m : report.metrics) {
      const auto& s = report.aggregates.at(m);
      os << ',' << format_fixed(std::string_view(which) == "mean" ? s.mean : s.median);
    }
    if (has_aiou(report)) os << ',';
    os << ",\n";
  }
}

void write_eval_json(std::ostream& os, const EvalReport& report) {
  using nlohmann::json;
  auto num = [](double v) -> json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  json rows = json::array();
  for (const auto& row : report.rows) {
    json values = json::object();
    for (const auto& [m, v] : row.values) values[std::string(to_string(m))] = num(v);
    json r = {{"name", row.name}, {"values", values}, {"error", row.error}, {"failed", row.failed}};
    if (row.best_k) r["best_k"] = *row.best_k;
    rows.push_back(std::move(r));
  }
  json aggregates = json::object();
  for (const auto& [m, s] : report.aggregates)
    aggregates[std::string(to_string(m))] = {
        {"mean", num(s.mean)}, {"median", num(s.median)}, {"count", s.count}};
  json metrics = json::array();
  for (Metric m : report.metrics) metrics.push_back(std::string(to_string(m)));
  os << json{{"metrics", metrics}, {"rows", rows}, {"aggregates", aggregates}}.dump(2) << '\n';
}

}  // namespace trajeval
