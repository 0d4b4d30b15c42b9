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

// trajeval: evaluate recovered handwriting trajectories, run sensitivity and
// invariance benches, rasterize and convert trajectory files.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trajeval/bench.hpp"
#include "trajeval/error.hpp"
#include "trajeval/evaluate.hpp"
#include "trajeval/io.hpp"
#include "trajeval/raster.hpp"

namespace fs = std::filesystem;
using namespace trajeval;

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(Errc::invalid_argument, "bad grid value '" + item + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw Error(Errc::invalid_argument, "empty grid");
  return grid;
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
  } else {
    write_file(out_path, contents);
  }
}

struct CorpusArgs {
  std::string dir;
  std::size_t synthetic = 0;
  std::uint64_t seed = 0;
  int canvas = kDefaultCanvas;
};

// Corpus files are normalized onto the canvas so perturbations and rendering
// operate in the same coordinate frame.
std::vector<Trajectory> load_corpus(const CorpusArgs& a) {
  if (a.synthetic > 0) return synthetic_corpus(a.synthetic, Seed{a.seed}, a.canvas);
  if (a.dir.empty()) throw Error(Errc::invalid_argument, "pass --corpus DIR or --synthetic N");
  if (!fs::is_directory(a.dir))
    throw Error(Errc::io_error, "corpus '" + a.dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Trajectory> corpus;
  for (const auto& f : files) {
    try {
      corpus.push_back(normalize_to_canvas(read_trajectory(f), a.canvas));
    } catch (const Error& e) {
      std::cerr << "trajeval: skipping " << e.what() << '\n';
    }
  }
  if (corpus.empty()) throw Error(Errc::invalid_argument, "corpus '" + a.dir + "' has no valid trajectory files");
  return corpus;
}

std::string render_curves(const std::vector<CurveReport>& reports, const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    write_curves_json(os, reports);
  else
    write_curves_csv(os, reports);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glyph and writing-order scores for recovered handwriting trajectories"};
  app.require_subcommand(1);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against ground truth");
  std::string gt_path, pred_path, eval_metrics = "aiou,ldtw", eval_out, eval_format = "csv";
  EvalOptions eval_opts;
  eval_cmd->add_option("gt", gt_path, "Ground-truth file or directory (.json or .pgm)")->required();
  eval_cmd->add_option("pred", pred_path, "Prediction file or directory (.json)")->required();
  eval_cmd->add_option("--metrics", eval_metrics, "aiou,iou,ldtw,dtw,rmse,sdtw")->capture_default_str();
  eval_cmd->add_option("--canvas", eval_opts.canvas_side, "Canvas side in pixels")->capture_default_str();
  eval_cmd->add_option("--kmax", eval_opts.k_max, "Largest AIoU dilation count")->capture_default_str();
  eval_cmd->add_option("--gamma", eval_opts.gamma, "Soft-DTW smoothing")->capture_default_str();
  eval_cmd->add_flag("--normalize", eval_opts.normalize, "Normalize trajectories onto the canvas");
  eval_cmd->add_flag("--dedupe", eval_opts.dedupe, "Drop consecutive points on the same pixel");
  eval_cmd->add_flag("--downsample-half", eval_opts.downsample_half, "Keep every second point");
  eval_cmd->add_flag("--rmse-resample", eval_opts.rmse_resample,
                     "Resample the prediction to the ground-truth length for RMSE");
  std::string gt_polarity = "auto";
  eval_cmd->add_option("--gt-polarity", gt_polarity, "Ink side of ground-truth images: auto, dark or light")
      ->check(CLI::IsMember({"auto", "dark", "light"}))->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Output file (default stdout)");
  eval_cmd->add_option("--format", eval_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  // sensitivity / invariance share corpus and output options
  CorpusArgs corpus_args;
  std::string bench_out, bench_format = "csv", bench_grid, bench_metrics;
  BenchOptions bench_opts;
  auto add_bench_options = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", corpus_args.dir, "Directory of trajectory JSON files");
    cmd->add_option("--synthetic", corpus_args.synthetic, "Use N built-in synthetic glyphs");
    cmd->add_option("--seed", corpus_args.seed, "Random seed")->capture_default_str();
    cmd->add_option("--grid", bench_grid, "Comma-separated magnitudes");
    cmd->add_option("--metrics", bench_metrics, "aiou,iou,ldtw,dtw,rmse,sdtw");
    cmd->add_option("--canvas", bench_opts.canvas_side, "Canvas side in pixels")->capture_default_str();
    cmd->add_option("--kmax", bench_opts.k_max, "Largest AIoU dilation count")->capture_default_str();
    cmd->add_option("--gamma", bench_opts.gamma, "Soft-DTW smoothing")->capture_default_str();
    cmd->add_option("--fraction", bench_opts.drift_fraction, "Fraction of points moved by point drift")
        ->capture_default_str();
    cmd->add_option("--out", bench_out, "Output file (default stdout)");
    cmd->add_option("--format", bench_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto* sens_cmd = app.add_subcommand("sensitivity", "Metric response to increasing error magnitude");
  std::string error_kind;
  sens_cmd->add_option("--error", error_kind, "stroke-insert, stroke-delete, point-drift, stroke-drift")
      ->required();
  add_bench_options(sens_cmd);

  auto* inv_cmd = app.add_subcommand("invariance", "Metric stability under stroke width or sample rate");
  std::string transform_name;
  inv_cmd->add_option("--transform", transform_name, "stroke-width or sample-rate")->required();
  inv_cmd->add_option("--base-drift", bench_opts.base_drift, "Base point drift in pixels")
      ->capture_default_str();
  add_bench_options(inv_cmd);

  // rasterize
  auto* rast_cmd = app.add_subcommand("rasterize", "Render a trajectory to a PGM mask");
  std::string rast_in, rast_out;
  int rast_side = kDefaultCanvas;
  int rast_dilate = 0;
  rast_cmd->add_option("in", rast_in, "Trajectory JSON")->required();
  rast_cmd->add_option("out", rast_out, "Output PGM")->required();
  rast_cmd->add_option("--side", rast_side, "Canvas side in pixels")->capture_default_str();
  rast_cmd->add_option("--dilate", rast_dilate, "3x3 dilation rounds")->capture_default_str();

  // convert
  auto* conv_cmd = app.add_subcommand("convert", "Convert between points and strokes JSON forms");
  std::string conv_in, conv_out, conv_to = "points";
  conv_cmd->add_option("in", conv_in, "Input trajectory JSON")->required();
  conv_cmd->add_option("out", conv_out, "Output trajectory JSON")->required();
  conv_cmd->add_option("--to", conv_to, "points or strokes")
      ->check(CLI::IsMember({"points", "strokes"}))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) {
      eval_opts.metrics = parse_metrics(eval_metrics);
      eval_opts.gt_polarity = gt_polarity == "dark"    ? GtPolarity::InkIsDark
                              : gt_polarity == "light" ? GtPolarity::InkIsLight
                                                       : GtPolarity::Auto;
      const EvalReport report = evaluate_paths(gt_path, pred_path, eval_opts);
      std::ostringstream os;
      if (eval_format == "json")
        write_eval_json(os, report);
      else
        write_eval_csv(os, report);
      emit(eval_out, os.str());
      for (const auto& row : report.rows)
        if (!row.error.empty()) std::cerr << "trajeval: " << row.name << ": " << row.error << '\n';
      return report.all_failed() ? 1 : 0;
    }
    if (*sens_cmd) {
      corpus_args.canvas = bench_opts.canvas_side;
      const ErrorFamily family = error_family_from_string(error_kind);
      const auto corpus = load_corpus(corpus_args);
      const auto grid = bench_grid.empty() ? default_grid(family) : parse_grid(bench_grid);
      const auto metrics = parse_metrics(bench_metrics.empty() ? "aiou,ldtw" : bench_metrics);
      const auto reports =
          sensitivity_run(corpus, family, grid, metrics, Seed{corpus_args.seed}, bench_opts);
      emit(bench_out, render_curves(reports, bench_format));
      return 0;
    }
    if (*inv_cmd) {
      corpus_args.canvas = bench_opts.canvas_side;
      const auto transform = invariance_transform_from_string(transform_name);
      const auto corpus = load_corpus(corpus_args);
      const auto grid = bench_grid.empty() ? default_grid(transform) : parse_grid(bench_grid);
      const std::string fallback =
          transform == InvarianceTransform::StrokeWidth ? "aiou,iou" : "dtw,ldtw";
      const auto metrics = parse_metrics(bench_metrics.empty() ? fallback : bench_metrics);
      const auto reports =
          invariance_run(corpus, transform, grid, metrics, Seed{corpus_args.seed}, bench_opts);
      emit(bench_out, render_curves(reports, bench_format));
      return 0;
    }
    if (*rast_cmd) {
      const Trajectory traj = read_trajectory(rast_in);
      write_pgm(rast_out, dilate3x3(rasterize(traj, rast_side), rast_dilate));
      return 0;
    }
    if (*conv_cmd) {
      const Trajectory traj = read_trajectory(conv_in);
      write_trajectory(conv_out, traj,
                       conv_to == "strokes" ? TrajectoryFormat::Strokes : TrajectoryFormat::Points);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "trajeval: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
