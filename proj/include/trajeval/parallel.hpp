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

#include <cstddef>
#include <functional>
#include <span>

namespace trajeval {

/// Thread count from TRAJEVAL_THREADS, else the hardware concurrency.
/// `requested > 0` wins over both.
unsigned resolve_threads(unsigned requested = 0);

/// Calls `fn(i)` for every i in [0, n) on up to `threads` workers. Work is
/// handed out by index, so writes to slot i of a preallocated buffer give
/// schedule-independent results. The first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Compensated (Neumaier) sum in index order.
double stable_sum(std::span<const double> values);

}  // namespace trajeval
