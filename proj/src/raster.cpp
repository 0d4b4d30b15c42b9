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

#include "trajeval/raster.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "trajeval/error.hpp"

namespace trajeval {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0)
    throw Error(Errc::invalid_argument, "image dimensions must be positive");
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error(Errc::dimension_mismatch, "pixel count does not match width * height");
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  if (width_ != other.width_ || height_ != other.height_)
    throw Error(Errc::dimension_mismatch, "mask dimensions differ");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

// Integer Bresenham walk along the major axis, always from the endpoint with
// the smaller major coordinate so the pixel set does not depend on direction.
// The minor offset at step c is round_half_up(c * dminor / dmajor).
void draw_line(BinaryMask& mask, Pixel a, Pixel b) {
  const bool x_major = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
  auto major = [x_major](Pixel p) { return x_major ? p.x : p.y; };
  auto minor = [x_major](Pixel p) { return x_major ? p.y : p.x; };
  if (major(a) > major(b)) std::swap(a, b);

  const long d_major = major(b) - major(a);
  const long d_minor = minor(b) - minor(a);
  auto plot = [&](long c, long k) {
    const int u = static_cast<int>(major(a) + c);
    const int v = static_cast<int>(minor(a) + k);
    const int x = x_major ? u : v;
    const int y = x_major ? v : u;
    if (mask.contains(x, y)) mask.set(x, y);
  };

  if (d_major == 0) {
    plot(0, 0);
    return;
  }
  long err = d_major;  // 2 * c * d_minor + d_major - 2 * d_major * k
  long k = 0;
  for (long c = 0; c <= d_major; ++c) {
    plot(c, k);
    err += 2 * d_minor;
    if (err >= 2 * d_major) {
      err -= 2 * d_major;
      ++k;
    } else if (err < 0) {
      err += 2 * d_major;
      --k;
    }
  }
}

BinaryMask rasterize(const Trajectory& traj, int side) {
  BinaryMask mask(side, side);
  const auto drawn = traj.drawn();
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    const auto& p = drawn[i];
    if (p.x < 0.0 || p.y < 0.0 || p.x >= side || p.y >= side) {
      std::ostringstream os;
      os << "point " << i << " (" << p.x << ", " << p.y << ") lies outside the "
         << side << "x" << side << " canvas";
      throw Error(Errc::out_of_bounds, os.str());
    }
  }
  // Coordinates in [side - 0.5, side) round onto the border pixel.
  auto px = [side](const TrajPoint& p) {
    Pixel q = pixel_of(p);
    return Pixel{std::min(q.x, side - 1), std::min(q.y, side - 1)};
  };
  for (const auto& stroke : strokes_of(traj)) {
    const auto& pts = stroke.points;
    if (pts.size() == 1) {
      const Pixel q = px(pts.front());
      mask.set(q.x, q.y);
      continue;
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) draw_line(mask, px(pts[i]), px(pts[i + 1]));
  }
  return mask;
}

Histogram histogram_of(const GrayImage& img) {
  Histogram hist{};
  for (auto v : img.values()) ++hist[v];
  return hist;
}

int otsu_threshold(const Histogram& hist) {
  double total = 0.0;
  double total_moment = 0.0;
  int populated = 0;
  for (int level = 0; level < 256; ++level) {
    total += static_cast<double>(hist[level]);
    total_moment += static_cast<double>(level) * static_cast<double>(hist[level]);
    if (hist[level] != 0) ++populated;
  }
  if (populated < 2)
    throw Error(Errc::degenerate_histogram,
                "degenerate histogram: fewer than two intensity levels");

  int best = -1;
  double best_var = -1.0;
  double below = 0.0;
  double below_moment = 0.0;
  for (int t = 0; t < 255; ++t) {
    below += static_cast<double>(hist[t]);
    below_moment += static_cast<double>(t) * static_cast<double>(hist[t]);
    const double above = total - below;
    if (below == 0.0 || above == 0.0) continue;
    const double mean_gap = below_moment / below - (total_moment - below_moment) / above;
    const double var = below * above * mean_gap * mean_gap;
    if (var > best_var) {
      best_var = var;
      best = t;
    }
  }
  return best;
}

int otsu_threshold(const GrayImage& img) { return otsu_threshold(histogram_of(img)); }

BinaryMask binarize(const GrayImage& img, Polarity polarity) {
  const int t = otsu_threshold(img);
  BinaryMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const bool dark = img.at(x, y) <= t;
      mask.set(x, y, polarity == Polarity::InkIsDark ? dark : !dark);
    }
  }
  return mask;
}

BinaryMask dilate3x3(const BinaryMask& mask, int iterations) {
  if (iterations < 0)
    throw Error(Errc::invalid_argument, "dilation iteration count must be >= 0");
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask cur = mask;
  BinaryMask rows(w, h);
  for (int it = 0; it < iterations; ++it) {
    // The 3x3 element is separable: a 1x3 pass followed by a 3x1 pass.
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool on = cur.at(x, y) || (x > 0 && cur.at(x - 1, y)) ||
                        (x + 1 < w && cur.at(x + 1, y));
        rows.set(x, y, on);
      }
    }
    BinaryMask next(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool on = rows.at(x, y) || (y > 0 && rows.at(x, y - 1)) ||
                        (y + 1 < h && rows.at(x, y + 1));
        next.set(x, y, on);
      }
    }
    if (next == cur) break;  // fixpoint: further rounds change nothing
    cur = std::move(next);
  }
  return cur;
}

GrayImage to_gray(const BinaryMask& mask) {
  GrayImage img(mask.width(), mask.height(), 255);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.at(x, y)) img.set(x, y, 0);
  return img;
}

}  // namespace trajeval
