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
#include <cstddef>
#include <cstdint>
#include <vector>

#include "trajeval/trajectory.hpp"

namespace trajeval {

/// Row-major 8-bit image; 0 is black.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::uint8_t at(int x, int y) const { return values_[index(x, y)]; }
  void set(int x, int y, std::uint8_t v) { values_[index(x, y)] = v; }
  const std::vector<std::uint8_t>& values() const noexcept { return values_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> values_;
};

/// Row-major foreground mask; each cell holds 0 or 1.
class BinaryMask {
 public:
  BinaryMask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool on = true) { bits_[index(x, y)] = on ? 1 : 0; }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  /// True when every foreground pixel of `*this` is foreground in `other`.
  bool subset_of(const BinaryMask& other) const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

enum class Polarity { InkIsDark, InkIsLight };

/// Sets the integer line between two pixels, endpoints included. Pixels
/// outside the mask are ignored.
void draw_line(BinaryMask& mask, Pixel a, Pixel b);

/// Renders a trajectory as a width-1 mask of `side` x `side`: one line per
/// consecutive pair inside a stroke, a single pixel for one-point strokes.
/// Throws `Errc::out_of_bounds` naming the first drawn point outside
/// [0, side).
BinaryMask rasterize(const Trajectory& traj, int side);

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram_of(const GrayImage& img);

/// Level t maximizing between-class variance for the split {<= t} / {> t};
/// ties resolve to the smallest t. Throws `Errc::degenerate_histogram` when
/// fewer than two levels are populated.
int otsu_threshold(const Histogram& hist);
int otsu_threshold(const GrayImage& img);

BinaryMask binarize(const GrayImage& img, Polarity polarity = Polarity::InkIsDark);

/// `iterations` rounds of dilation with the full 3x3 element; clipped at the
/// border.
BinaryMask dilate3x3(const BinaryMask& mask, int iterations);

/// Ink-is-dark rendering: foreground 0, background 255.
GrayImage to_gray(const BinaryMask& mask);

}  // namespace trajeval
