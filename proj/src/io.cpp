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

#include "trajeval/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "trajeval/error.hpp"

namespace trajeval {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(Errc::parse_error, where + ": " + what);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

int canvas_of(const json& doc) {
  if (!doc.contains("canvas")) return kDefaultCanvas;
  const json& c = doc["canvas"];
  if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
    schema_error("/canvas", "expected [width, height] integers");
  const int w = c[0].get<int>();
  const int h = c[1].get<int>();
  if (w <= 0 || w != h) schema_error("/canvas", "canvas must be square with positive side");
  return w;
}

PenState state_of(const json& s, const std::string& where) {
  if (!s.is_array() || s.size() != 3) schema_error(where, "expected a one-hot triple");
  int ones = 0;
  int hot = -1;
  for (int k = 0; k < 3; ++k) {
    if (!s[k].is_number_integer()) schema_error(where, "state entries must be 0 or 1");
    const int v = s[k].get<int>();
    if (v != 0 && v != 1) schema_error(where, "state entries must be 0 or 1");
    if (v == 1) {
      ++ones;
      hot = k;
    }
  }
  if (ones != 1) schema_error(where, "state vector is not one-hot");
  return static_cast<PenState>(hot);
}

Trajectory from_points(const json& doc, int canvas) {
  const json& pts = doc["points"];
  if (!pts.is_array() || pts.empty()) schema_error("/points", "expected a nonempty array");
  std::vector<TrajPoint> points;
  points.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i);
    const json& p = pts[i];
    if (!p.is_object() || !p.contains("x") || !p.contains("y") || !p.contains("s"))
      schema_error(where, "expected {\"x\", \"y\", \"s\"}");
    points.push_back({number_at(p["x"], where + "/x"), number_at(p["y"], where + "/y"),
                      state_of(p["s"], where + "/s")});
  }
  try {
    return Trajectory(std::move(points), canvas);
  } catch (const Error& e) {
    schema_error("/points", e.what());
  }
}

Trajectory from_strokes(const json& doc, int canvas) {
  const json& arr = doc["strokes"];
  if (!arr.is_array() || arr.empty()) schema_error("/strokes", "expected a nonempty array");
  std::vector<Stroke> strokes;
  for (std::size_t s = 0; s < arr.size(); ++s) {
    const std::string where = "/strokes/" + std::to_string(s);
    if (!arr[s].is_array() || arr[s].empty()) schema_error(where, "expected a nonempty array");
    Stroke stroke;
    for (std::size_t i = 0; i < arr[s].size(); ++i) {
      const std::string pw = where + "/" + std::to_string(i);
      const json& xy = arr[s][i];
      if (!xy.is_array() || xy.size() != 2) schema_error(pw, "expected [x, y]");
      stroke.points.push_back({number_at(xy[0], pw), number_at(xy[1], pw), PenState::Down});
    }
    stroke.points.back().state = PenState::Up;
    strokes.push_back(std::move(stroke));
  }
  const TrajPoint last = strokes.back().points.back();
  try {
    return assemble(strokes, canvas, last);
  } catch (const Error& e) {
    schema_error("/strokes", e.what());
  }
}

}  // namespace

Trajectory parse_trajectory_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column for the message.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::parse_error, "malformed JSON at line " + std::to_string(line) +
                                       ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("/", "expected a JSON object");
  const int canvas = canvas_of(doc);
  const bool has_points = doc.contains("points");
  const bool has_strokes = doc.contains("strokes");
  if (has_points == has_strokes) schema_error("/", "expected exactly one of \"points\" or \"strokes\"");
  return has_points ? from_points(doc, canvas) : from_strokes(doc, canvas);
}

std::string to_json(const Trajectory& traj, TrajectoryFormat format) {
  json doc;
  doc["canvas"] = {traj.canvas_side(), traj.canvas_side()};
  if (format == TrajectoryFormat::Points) {
    json pts = json::array();
    for (const auto& p : traj.points()) {
      const auto k = static_cast<int>(p.state);
      pts.push_back({{"x", p.x}, {"y", p.y}, {"s", {k == 0 ? 1 : 0, k == 1 ? 1 : 0, k == 2 ? 1 : 0}}});
    }
    doc["points"] = std::move(pts);
  } else {
    json strokes = json::array();
    for (const auto& stroke : strokes_of(traj)) {
      json s = json::array();
      for (const auto& p : stroke.points) s.push_back({p.x, p.y});
      strokes.push_back(std::move(s));
    }
    doc["strokes"] = std::move(strokes);
  }
  return doc.dump(1) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  try {
    return parse_trajectory_json(read_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::io_error) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      TrajectoryFormat format) {
  write_file(path, to_json(traj, format));
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string pgm_token(std::string_view bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw Error(Errc::parse_error, "truncated PGM header");
  return std::string(bytes.substr(start, pos - start));
}

int pgm_int(std::string_view bytes, std::size_t& pos) {
  const std::string tok = pgm_token(bytes, pos);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(Errc::parse_error, "bad PGM header value '" + tok + "'");
  if (tok.size() > 9) throw Error(Errc::parse_error, "PGM header value too large");
  return std::stoi(tok);
}

}  // namespace

GrayImage parse_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  if (pgm_token(bytes, pos) != "P5") throw Error(Errc::parse_error, "not a binary PGM (P5)");
  const int width = pgm_int(bytes, pos);
  const int height = pgm_int(bytes, pos);
  const int maxval = pgm_int(bytes, pos);
  if (maxval != 255) throw Error(Errc::parse_error, "only maxval 255 is supported");
  if (width <= 0 || height <= 0) throw Error(Errc::parse_error, "PGM dimensions must be positive");
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw Error(Errc::parse_error, "truncated PGM header");
  ++pos;
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - pos != n)
    throw Error(Errc::parse_error, "PGM raster has " + std::to_string(bytes.size() - pos) +
                                       " bytes, expected " + std::to_string(n));
  std::vector<std::uint8_t> values(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return GrayImage(width, height, std::move(values));
}

std::string to_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                    "\n255\n";
  out.append(img.values().begin(), img.values().end());
  return out;
}

std::string to_pgm(const BinaryMask& mask) {
  std::vector<std::uint8_t> values(mask.bits().size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = mask.bits()[i] ? 255 : 0;
  return to_pgm(GrayImage(mask.width(), mask.height(), std::move(values)));
}

BinaryMask mask_from_pgm(std::string_view bytes) {
  const GrayImage img = parse_pgm(bytes);
  BinaryMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const auto v = img.at(x, y);
      if (v != 0 && v != 255)
        throw Error(Errc::parse_error, "mask PGM holds value " + std::to_string(v) +
                                           " (expected 0 or 255)");
      mask.set(x, y, v == 255);
    }
  }
  return mask;
}

GrayImage read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

BinaryMask read_mask_pgm(const std::filesystem::path& path) {
  return mask_from_pgm(read_file(path));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, to_pgm(img));
}

void write_pgm(const std::filesystem::path& path, const BinaryMask& mask) {
  write_file(path, to_pgm(mask));
}

}  // namespace trajeval
