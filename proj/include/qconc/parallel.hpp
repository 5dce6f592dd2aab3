// Copyright 2026 The qconc Authors
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

#ifndef QCONC_PARALLEL_HPP
#define QCONC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qconc {

/// Worker count: QCONC_THREADS when set and positive, otherwise hardware
/// concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, n). Indices are split into contiguous chunks, so
/// results written by index are independent of the thread count. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qconc

#endif  // QCONC_PARALLEL_HPP
