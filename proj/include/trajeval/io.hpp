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
#include <string>
#include <string_view>

#include "trajeval/raster.hpp"
#include "trajeval/trajectory.hpp"

namespace trajeval {

// Trajectory files are UTF-8 JSON in one of two forms:
//
//   points:  {"canvas": [w, h], "points": [{"x": f, "y": f, "s": [1, 0, 0]}, ...]}
//   strokes: {"canvas": [w, h], "strokes": [[[x, y], ...], ...]}
//
// "s" is the one-hot (pen-down, pen-up, end-of-sequence) triple. Strokes are
// converted on ingestion: each stroke's last point becomes pen-up and an
// end-of-sequence point (a copy of the final position) is appended. The
// canvas must be square; it defaults to 64 when omitted.

enum class TrajectoryFormat { Points, Strokes };

Trajectory parse_trajectory_json(std::string_view text);
std::string to_json(const Trajectory& traj, TrajectoryFormat format = TrajectoryFormat::Points);

Trajectory read_trajectory(const std::filesystem::path& path);
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      TrajectoryFormat format = TrajectoryFormat::Points);

// Binary PGM (P5, maxval 255). Masks store foreground as 255 and background
// as 0; reading a mask rejects any other value.

GrayImage parse_pgm(std::string_view bytes);
std::string to_pgm(const GrayImage& img);
std::string to_pgm(const BinaryMask& mask);
BinaryMask mask_from_pgm(std::string_view bytes);

GrayImage read_pgm(const std::filesystem::path& path);
BinaryMask read_mask_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const BinaryMask& mask);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace trajeval
