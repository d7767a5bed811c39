// Copyright 2026 The AdaSR Authors. All Rights Reserved.
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

namespace adasr {

/// Number of workers used by data-parallel loops. Defaults to the OpenMP
/// runtime's choice, or 1 when built without OpenMP.
int worker_count();
/// Pins the worker count; n <= 0 restores the default.
void set_worker_count(int n);

/// Splits [0, count) into chunks of `grain` items and calls fn(begin, end) for
/// each chunk, possibly concurrently. Chunk boundaries do not depend on the
/// worker count.
void parallel_chunks(std::size_t count, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace adasr
