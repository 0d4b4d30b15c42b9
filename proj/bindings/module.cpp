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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trajeval/bench.hpp"
#include "trajeval/error.hpp"
#include "trajeval/error_sim.hpp"
#include "trajeval/glyph_metrics.hpp"
#include "trajeval/io.hpp"
#include "trajeval/losses.hpp"
#include "trajeval/raster.hpp"
#include "trajeval/seq_metrics.hpp"
#include "trajeval/trajectory.hpp"

namespace py = pybind11;
using namespace trajeval;

namespace {

using MaskArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;
using GrayArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

BinaryMask to_mask(const MaskArray& a) {
  if (a.ndim() != 2) throw py::value_error("mask must be a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  BinaryMask m(w, h);
  auto r = a.unchecked<2>();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, r(y, x));
  return m;
}

MaskArray from_mask(const BinaryMask& m) {
  MaskArray a({m.height(), m.width()});
  auto w = a.mutable_unchecked<2>();
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) w(y, x) = m.at(x, y);
  return a;
}

GrayImage to_gray_image(const GrayArray& a) {
  if (a.ndim() != 2) throw py::value_error("image must be a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  std::vector<std::uint8_t> v(a.data(), a.data() + a.size());
  return GrayImage(w, h, std::move(v));
}

GrayArray from_gray(const GrayImage& img) {
  GrayArray a({img.height(), img.width()});
  std::copy(img.values().begin(), img.values().end(), a.mutable_data());
  return a;
}

Trajectory trajectory_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& a, int canvas) {
  if (a.ndim() != 2 || a.shape(1) != 3)
    throw py::value_error("expected an (N, 3) array of x, y, state");
  auto r = a.unchecked<2>();
  std::vector<TrajPoint> pts;
  for (py::ssize_t i = 0; i < r.shape(0); ++i) {
    const double s = r(i, 2);
    if (s != 0.0 && s != 1.0 && s != 2.0) throw py::value_error("state must be 0, 1 or 2");
    pts.push_back({r(i, 0), r(i, 1), static_cast<PenState>(static_cast<int>(s))});
  }
  return Trajectory(std::move(pts), canvas);
}

py::array_t<double> trajectory_to_array(const Trajectory& t) {
  py::array_t<double> a({static_cast<py::ssize_t>(t.size()), py::ssize_t{3}});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.points()[i];
    w(i, 0) = p.x;
    w(i, 1) = p.y;
    w(i, 2) = static_cast<double>(static_cast<int>(p.state));
  }
  return a;
}

std::vector<PredictedPoint> predicted_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(1) != 5)
    throw py::value_error("expected an (N, 5) array of x, y, p_down, p_up, p_end");
  auto r = a.unchecked<2>();
  std::vector<PredictedPoint> out;
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    out.push_back({r(i, 0), r(i, 1), {r(i, 2), r(i, 3), r(i, 4)}});
  return out;
}

std::vector<Metric> metrics_arg(const std::string& list) { return parse_metrics(list); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Glyph-fidelity and writing-order metrics for recovered handwriting trajectories";

  py::register_exception<Error>(m, "TrajevalError", PyExc_ValueError);

  py::enum_<PenState>(m, "PenState")
      .value("Down", PenState::Down)
      .value("Up", PenState::Up)
      .value("End", PenState::End);

  py::class_<TrajPoint>(m, "TrajPoint")
      .def(py::init<double, double, PenState>(), py::arg("x"), py::arg("y"),
           py::arg("state") = PenState::Down)
      .def_readwrite("x", &TrajPoint::x)
      .def_readwrite("y", &TrajPoint::y)
      .def_readwrite("state", &TrajPoint::state)
      .def("__eq__", [](const TrajPoint& a, const TrajPoint& b) { return a == b; })
      .def("__repr__", [](const TrajPoint& p) {
        std::ostringstream os;
        os << "TrajPoint(" << p.x << ", " << p.y << ", " << static_cast<int>(p.state) << ")";
        return os.str();
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<std::vector<TrajPoint>, int>(), py::arg("points"),
           py::arg("canvas_side") = kDefaultCanvas)
      .def_static("from_array", &trajectory_from_array, py::arg("array"),
                  py::arg("canvas_side") = kDefaultCanvas,
                  "Build from an (N, 3) array of x, y, state (0 down, 1 up, 2 end).")
      .def("to_array", &trajectory_to_array)
      .def_property_readonly("points", &Trajectory::points)
      .def_property_readonly("canvas_side", &Trajectory::canvas_side)
      .def_property_readonly("has_eos", &Trajectory::has_eos)
      .def("strokes", [](const Trajectory& t) {
        std::vector<std::vector<TrajPoint>> out;
        for (auto& s : strokes_of(t)) out.push_back(std::move(s.points));
        return out;
      })
      .def("__len__", &Trajectory::size)
      .def("__eq__", [](const Trajectory& a, const Trajectory& b) { return a == b; })
      .def("to_json", [](const Trajectory& t, bool strokes) {
        return to_json(t, strokes ? TrajectoryFormat::Strokes : TrajectoryFormat::Points);
      }, py::arg("strokes") = false);

  m.def("parse_trajectory_json", &parse_trajectory_json, py::arg("text"));
  m.def("read_trajectory", [](const std::string& p) { return read_trajectory(p); });

  // preprocessing
  m.def("normalize_to_canvas", &normalize_to_canvas, py::arg("traj"),
        py::arg("side") = kDefaultCanvas);
  m.def("dedupe_points", &dedupe_points);
  m.def("downsample_half", &downsample_half);
  m.def("resample", &resample, py::arg("traj"), py::arg("factor"));

  // raster
  m.def("rasterize", [](const Trajectory& t, int side) { return from_mask(rasterize(t, side)); },
        py::arg("traj"), py::arg("side") = kDefaultCanvas);
  m.def("dilate3x3", [](const MaskArray& a, int k) { return from_mask(dilate3x3(to_mask(a), k)); },
        py::arg("mask"), py::arg("iterations"));
  m.def("otsu_threshold", [](const GrayArray& a) { return otsu_threshold(to_gray_image(a)); });
  m.def("binarize", [](const GrayArray& a, bool ink_is_dark) {
    return from_mask(binarize(to_gray_image(a),
                              ink_is_dark ? Polarity::InkIsDark : Polarity::InkIsLight));
  }, py::arg("image"), py::arg("ink_is_dark") = true);
  m.def("read_pgm", [](const std::string& p) { return from_gray(read_pgm(p)); });
  m.def("write_pgm", [](const std::string& p, const GrayArray& a) {
    write_pgm(p, to_gray_image(a));
  });

  // glyph metrics
  py::class_<AiouResult>(m, "AiouResult")
      .def_readonly("score", &AiouResult::score)
      .def_readonly("best_k", &AiouResult::best_k)
      .def_readonly("curve", &AiouResult::curve);
  m.def("iou", [](const MaskArray& g, const MaskArray& p) { return iou(to_mask(g), to_mask(p)); });
  m.def("aiou", [](const MaskArray& g, const MaskArray& p, int k_max) {
    return aiou(to_mask(g), to_mask(p), k_max);
  }, py::arg("g"), py::arg("p"), py::arg("k_max") = kDefaultKMax);

  // sequence metrics
  py::enum_<GroundDistance>(m, "GroundDistance")
      .value("Euclidean", GroundDistance::Euclidean)
      .value("SquaredEuclidean", GroundDistance::SquaredEuclidean);
  py::class_<DtwResult>(m, "DtwResult")
      .def_readonly("cost", &DtwResult::cost)
      .def_property_readonly("path", [](const DtwResult& r) { return r.path.pairs; });
  m.def("dtw", py::overload_cast<const Trajectory&, const Trajectory&, GroundDistance>(&dtw),
        py::arg("q"), py::arg("p"), py::arg("distance") = GroundDistance::Euclidean);
  m.def("ldtw", &ldtw);
  m.def("rmse", [](const Trajectory& q, const Trajectory& p, bool resample_prediction) {
    return rmse(q, p, resample_prediction ? RmseMode::ResamplePrediction : RmseMode::Strict);
  }, py::arg("q"), py::arg("p"), py::arg("resample_prediction") = false);

  // losses
  py::class_<LossWeights>(m, "LossWeights")
      .def(py::init<>())
      .def_readwrite("lambda1", &LossWeights::lambda1)
      .def_readwrite("lambda2", &LossWeights::lambda2)
      .def_readwrite("lambda3", &LossWeights::lambda3)
      .def_property_readonly("class_weights", [](const LossWeights& w) {
        return std::array<double, 3>{w.class_weights.pen_down, w.class_weights.pen_up,
                                     w.class_weights.end_of_sequence};
      });
  m.def("softmin", [](const std::vector<double>& v, double gamma) { return softmin(v, gamma); },
        py::arg("values"), py::arg("gamma") = 1.0);
  m.def("sdtw", py::overload_cast<const Trajectory&, const Trajectory&, double>(&sdtw),
        py::arg("q"), py::arg("p"), py::arg("gamma") = 1.0);
  m.def("sdtw_grad", [](const Trajectory& q, const Trajectory& p, double gamma) {
    const auto g = sdtw_grad(q, p, gamma);
    py::array_t<double> a({static_cast<py::ssize_t>(g.size()), py::ssize_t{2}});
    auto w = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < g.size(); ++i) {
      w(i, 0) = g[i].dx;
      w(i, 1) = g[i].dy;
    }
    return a;
  }, py::arg("q"), py::arg("p"), py::arg("gamma") = 1.0);
  m.def("l1_loss", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pred,
                      const Trajectory& gt) { return l1_loss(predicted_from_array(pred), gt); });
  m.def("wce_loss", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pred,
                       const Trajectory& gt) { return wce_loss(predicted_from_array(pred), gt); });
  m.def("total_loss", [](double l1, double wce, double s, const LossWeights& w) {
    return total_loss(l1, wce, s, w);
  }, py::arg("l1"), py::arg("wce"), py::arg("sdtw"), py::arg("weights") = LossWeights{});

  // error simulation
  m.def("insert_strokes", [](const Trajectory& t, int k, std::uint64_t seed) {
    return insert_strokes(t, k, Seed{seed});
  });
  m.def("delete_strokes", [](const Trajectory& t, int k, std::uint64_t seed) {
    return delete_strokes(t, k, Seed{seed});
  });
  m.def("drift_points", [](const Trajectory& t, double d, std::uint64_t seed, double fraction) {
    return drift_points(t, d, Seed{seed}, fraction);
  }, py::arg("traj"), py::arg("distance"), py::arg("seed"), py::arg("fraction") = 1.0);
  m.def("drift_strokes", [](const Trajectory& t, double d, std::uint64_t seed) {
    return drift_strokes(t, d, Seed{seed});
  });
  m.def("widen_strokes", [](const Trajectory& t, int k, int side) {
    return from_gray(widen_strokes(t, k, side));
  }, py::arg("traj"), py::arg("iterations"), py::arg("side") = kDefaultCanvas);
  m.def("change_sample_rate", &change_sample_rate);

  // bench
  py::class_<CurveReport>(m, "CurveReport")
      .def_readonly("metric", &CurveReport::metric)
      .def_readonly("grid", &CurveReport::grid)
      .def_readonly("raw", &CurveReport::raw)
      .def_readonly("normalized", &CurveReport::normalized)
      .def_readonly("samples_used", &CurveReport::samples_used)
      .def_readonly("samples_skipped", &CurveReport::samples_skipped)
      .def_readonly("sample_count", &CurveReport::sample_count)
      .def_readonly("seed", &CurveReport::seed);
  m.def("normalize_curve", [](const std::vector<double>& v) { return normalize_curve(v); });
  m.def("synthetic_corpus", [](std::size_t n, std::uint64_t seed, int side) {
    return synthetic_corpus(n, Seed{seed}, side);
  }, py::arg("count"), py::arg("seed"), py::arg("side") = kDefaultCanvas);
  m.def("sensitivity_run", [](const std::vector<Trajectory>& corpus, const std::string& kind,
                              const std::vector<double>& grid, const std::string& metrics,
                              std::uint64_t seed, unsigned threads) {
    BenchOptions o;
    o.threads = threads;
    const auto ms = metrics_arg(metrics);
    py::gil_scoped_release release;
    return sensitivity_run(corpus, error_family_from_string(kind), grid, ms, Seed{seed}, o);
  }, py::arg("corpus"), py::arg("kind"), py::arg("grid"), py::arg("metrics") = "aiou,ldtw",
     py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("invariance_run", [](const std::vector<Trajectory>& corpus, const std::string& transform,
                             const std::vector<double>& grid, const std::string& metrics,
                             std::uint64_t seed, unsigned threads) {
    BenchOptions o;
    o.threads = threads;
    const auto ms = metrics_arg(metrics);
    py::gil_scoped_release release;
    return invariance_run(corpus, invariance_transform_from_string(transform), grid, ms,
                          Seed{seed}, o);
  }, py::arg("corpus"), py::arg("transform"), py::arg("grid"), py::arg("metrics"),
     py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("curves_to_csv", [](const std::vector<CurveReport>& r) {
    std::ostringstream os;
    write_curves_csv(os, r);
    return os.str();
  });
}
