// Copyright 2026 The xtqm Authors
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

#ifndef XTQM_PARALLEL_HPP
#define XTQM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace xtqm {

/// Thread cap for internal parallelism. Defaults to XTQM_THREADS, else hardware concurrency.
std::size_t thread_limit();
void set_thread_limit(std::size_t n);

/// Runs body(i) for i in [0, count). Each index is handled exactly once; callers write
/// results into index-addressed slots, so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace xtqm

#endif
