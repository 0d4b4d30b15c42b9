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

#include "trajeval/error.hpp"

namespace trajeval {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_trajectory: return "invalid trajectory";
    case Errc::out_of_bounds: return "out of bounds";
    case Errc::degenerate_histogram: return "degenerate histogram";
    case Errc::undefined_iou: return "undefined IoU";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::length_mismatch: return "length mismatch";
    case Errc::empty_sequence: return "empty sequence";
    case Errc::parse_error: return "parse error";
    case Errc::io_error: return "I/O error";
  }
  return "unknown error";
}

}  // namespace trajeval
