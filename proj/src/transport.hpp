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

#include <cstdint>
#include <span>
#include <vector>

namespace fmv {

class EmpiricalSegmentMeasure;

namespace detail {

struct FlowEntry {
    int from = 0;
    int to = 0;
    double mass = 0.0;
};

struct TransportSolution {
    double total_cost = 0.0;
    std::vector<FlowEntry> flows;
};

/// Balanced transportation problem on a dense cost matrix (row-major,
/// n_supply x n_demand), solved to optimality by successive shortest
/// augmenting paths with Johnson potentials. Deterministic: ties in the
/// Dijkstra selection and in the target-sink choice break by node index.
TransportSolution solve_transport(std::span<const double> supply,
                                  std::span<const double> demand,
                                  std::span<const double> cost, int n_demand);

double sliced_wasserstein(const EmpiricalSegmentMeasure& mu,
                          const EmpiricalSegmentMeasure& nu, double p,
                          int n_projections, std::uint64_t seed);

}  // namespace detail
}  // namespace fmv
