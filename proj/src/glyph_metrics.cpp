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

#include "trajeval/glyph_metrics.hpp"

#include "trajeval/error.hpp"

namespace trajeval {

double iou(const BinaryMask& g, const BinaryMask& p) {
  if (g.width() != p.width() || g.height() != p.height())
    throw Error(Errc::dimension_mismatch, "IoU of masks with different dimensions");
  const auto& gb = g.bits();
  const auto& pb = p.bits();
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    inter += gb[i] & pb[i];
    uni += gb[i] | pb[i];
  }
  if (uni == 0) throw Error(Errc::undefined_iou, "undefined IoU: both masks are empty");
  return static_cast<double>(inter) / static_cast<double>(uni);
}

AiouResult aiou(const BinaryMask& g, const BinaryMask& p, int k_max) {
  if (k_max < 0) throw Error(Errc::invalid_argument, "k_max must be >= 0");
  AiouResult result;
  result.curve.reserve(static_cast<std::size_t>(k_max) + 1);
  BinaryMask widened = p;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) widened = dilate3x3(widened, 1);
    const double v = iou(g, widened);
    result.curve.push_back(v);
    if (k == 0 || v > result.score) {
      result.score = v;
      result.best_k = k;
    }
  }
  return result;
}

}  // namespace trajeval
