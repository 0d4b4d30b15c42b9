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

#include <vector>

#include "trajeval/raster.hpp"

namespace trajeval {

inline constexpr int kDefaultKMax = 10;

struct AiouResult {
  double score = 0.0;
  int best_k = 0;
  std::vector<double> curve;  // curve[k] = iou(g, dilate3x3(p, k))
};

/// |G and P| / |G or P|. Throws on dimension mismatch and when both masks
/// are empty.
double iou(const BinaryMask& g, const BinaryMask& p);

/// Adaptive IoU: the width-1 prediction `p` is dilated k = 0..k_max times
/// and the best IoU against `g` is kept (smallest k on ties). Only the
/// image-side mask is needed, so `g` may come from a binarized scan.
AiouResult aiou(const BinaryMask& g, const BinaryMask& p, int k_max = kDefaultKMax);

}  // namespace trajeval
