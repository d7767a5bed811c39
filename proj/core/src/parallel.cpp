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

#include "adasr/parallel.hpp"

#include <algorithm>
#include <atomic>

#ifdef ADASR_HAVE_OPENMP
#include <omp.h>
#endif

namespace adasr {

namespace {
std::atomic<int> g_workers{0};
}

int worker_count() {
  const int pinned = g_workers.load();
  if (pinned > 0) return pinned;
#ifdef ADASR_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : 0); }

void parallel_chunks(std::size_t count, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  const auto chunks = static_cast<long long>((count + grain - 1) / grain);
#ifdef ADASR_HAVE_OPENMP
  const int workers = worker_count();
  if (workers > 1 && chunks > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long k = 0; k < chunks; ++k) {
      const std::size_t begin = static_cast<std::size_t>(k) * grain;
      fn(begin, std::min(count, begin + grain));
    }
    return;
  }
#endif
  for (long long k = 0; k < chunks; ++k) {
    const std::size_t begin = static_cast<std::size_t>(k) * grain;
    fn(begin, std::min(count, begin + grain));
  }
}

}  // namespace adasr
