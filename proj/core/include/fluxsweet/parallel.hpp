// Copyright 2026 The fluxsweet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace fluxsweet {

/// Thread count from FLUXSWEET_THREADS, else the hardware concurrency (>= 1).
int default_thread_count();

/// Resolves a requested count: values <= 0 select default_thread_count().
int resolve_thread_count(int requested);

/// Calls body(i) for i in [0, n) on up to `threads` workers. Each index runs
/// exactly once; callers write to per-index slots so results do not depend on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace fluxsweet
