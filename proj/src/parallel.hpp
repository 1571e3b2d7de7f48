/*
   Copyright 2026 fmv developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <functional>

namespace fmv {

/// Resolve a requested worker count: 0 means hardware concurrency.
int resolve_threads(int requested);

/// Run fn(begin, end) over a static partition of [0, n) on `threads`
/// workers. Exceptions from workers are rethrown on the caller. Partitions
/// write disjoint state only; result values must not depend on the
/// partition, so any reductions belong to the (sequential) caller.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fmv
