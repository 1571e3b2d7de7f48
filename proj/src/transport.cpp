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

#include "transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"
#include "measures.hpp"
#include "rng.hpp"

namespace fmv::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-15;   // remaining supply/demand treated as zero
constexpr double kFlowEps = 1e-18;   // flow entries clamped to zero below this

}  // namespace

TransportSolution solve_transport(std::span<const double> supply,
                                  std::span<const double> demand,
                                  std::span<const double> cost, int n_demand) {
    const int n1 = static_cast<int>(supply.size());
    const int n2 = n_demand;
    require(n1 >= 1 && n2 >= 1, ErrorCode::invalid_argument,
            "solve_transport: empty marginal");
    require(cost.size() == static_cast<std::size_t>(n1) * n2,
            ErrorCode::shape_mismatch, "solve_transport: cost matrix shape");

    std::vector<double> rem_s(supply.begin(), supply.end());
    std::vector<double> rem_d(demand.begin(), demand.end());
    std::vector<double> flow(static_cast<std::size_t>(n1) * n2, 0.0);
    std::vector<double> pot_s(n1, 0.0), pot_d(n2, 0.0);

    std::vector<double> dist_s(n1), dist_d(n2);
    std::vector<int> par_d(n2);          // sink j reached from source par_d[j]
    std::vector<int> par_s(n1);          // source i reached from sink par_s[i]; -1 = root
    std::vector<char> vis_s(n1), vis_d(n2);

    const int max_rounds = 4 * (n1 + n2) + 16;
    for (int round = 0; round < max_rounds; ++round) {
        bool any_supply = false;
        for (int i = 0; i < n1; ++i)
            if (rem_s[i] > kMassEps) { any_supply = true; break; }
        bool any_demand = false;
        for (int j = 0; j < n2; ++j)
            if (rem_d[j] > kMassEps) { any_demand = true; break; }
        if (!any_supply || !any_demand) break;

        // Multi-source Dijkstra in the reduced-cost graph. Unsaturated
        // sources start at their super-source arc's reduced cost, -pot_s.
        for (int i = 0; i < n1; ++i) {
            dist_s[i] = rem_s[i] > kMassEps ? -pot_s[i] : kInf;
            par_s[i] = -1;
            vis_s[i] = 0;
        }
        for (int j = 0; j < n2; ++j) {
            dist_d[j] = kInf;
            par_d[j] = -1;
            vis_d[j] = 0;
        }

        for (int iter = 0; iter < n1 + n2; ++iter) {
            int best_s = -1, best_d = -1;
            double best = kInf;
            for (int i = 0; i < n1; ++i)
                if (!vis_s[i] && dist_s[i] < best) { best = dist_s[i]; best_s = i; best_d = -1; }
            for (int j = 0; j < n2; ++j)
                if (!vis_d[j] && dist_d[j] < best) { best = dist_d[j]; best_d = j; best_s = -1; }
            if (best_s < 0 && best_d < 0) break;

            if (best_s >= 0) {
                const int i = best_s;
                vis_s[i] = 1;
                const double* row = cost.data() + static_cast<std::size_t>(i) * n2;
                const double base = dist_s[i] + pot_s[i];
                for (int j = 0; j < n2; ++j) {
                    if (vis_d[j]) continue;
                    const double nd = base + row[j] - pot_d[j];
                    if (nd < dist_d[j]) { dist_d[j] = nd; par_d[j] = i; }
                }
            } else {
                const int j = best_d;
                vis_d[j] = 1;
                for (int i = 0; i < n1; ++i) {
                    if (vis_s[i]) continue;
                    if (flow[static_cast<std::size_t>(i) * n2 + j] <= kFlowEps) continue;
                    const double nd = dist_d[j] + pot_d[j] - pot_s[i] -
                                      cost[static_cast<std::size_t>(i) * n2 + j];
                    if (nd < dist_s[i]) { dist_s[i] = nd; par_s[i] = j; }
                }
            }
        }

        int target = -1;
        for (int j = 0; j < n2; ++j)
            if (rem_d[j] > kMassEps && dist_d[j] < kInf &&
                (target < 0 || dist_d[j] < dist_d[target]))
                target = j;
        require(target >= 0, ErrorCode::internal,
                "solve_transport: no augmenting path (unbalanced marginals?)");
        const double dt = dist_d[target];

        for (int i = 0; i < n1; ++i)
            pot_s[i] += std::min(dist_s[i], dt);
        for (int j = 0; j < n2; ++j)
            pot_d[j] += std::min(dist_d[j], dt);

        // Walk the alternating path back to its root source and find the
        // bottleneck.
        double delta = rem_d[target];
        int root = -1;
        for (int j = target;;) {
            const int i = par_d[j];
            if (par_s[i] < 0) {
                delta = std::min(delta, rem_s[i]);
                root = i;
                break;
            }
            const int jprev = par_s[i];
            delta = std::min(delta, flow[static_cast<std::size_t>(i) * n2 + jprev]);
            j = jprev;
        }
        for (int j = target;;) {
            const int i = par_d[j];
            flow[static_cast<std::size_t>(i) * n2 + j] += delta;
            if (par_s[i] < 0) break;
            const int jprev = par_s[i];
            double& f = flow[static_cast<std::size_t>(i) * n2 + jprev];
            f -= delta;
            if (f <= kFlowEps) f = 0.0;
            j = jprev;
        }
        rem_s[root] -= delta;
        if (rem_s[root] <= kMassEps) rem_s[root] = 0.0;
        rem_d[target] -= delta;
        if (rem_d[target] <= kMassEps) rem_d[target] = 0.0;
    }

    TransportSolution sol;
    for (int i = 0; i < n1; ++i) {
        const double* row = cost.data() + static_cast<std::size_t>(i) * n2;
        for (int j = 0; j < n2; ++j) {
            const double f = flow[static_cast<std::size_t>(i) * n2 + j];
            if (f > 0.0) {
                sol.total_cost += f * row[j];
                sol.flows.push_back({i, j, f});
            }
        }
    }
    return sol;
}

double sliced_wasserstein(const EmpiricalSegmentMeasure& mu,
                          const EmpiricalSegmentMeasure& nu, double p,
                          int n_projections, std::uint64_t seed) {
    require(n_projections >= 1, ErrorCode::invalid_argument,
            "sliced_wasserstein: need at least one projection");
    const int ambient = mu.points() * mu.dim();
    rng::NormalStream stream(rng::derive_stream(seed, 0x51cedULL));

    std::vector<double> direction(ambient);
    std::vector<std::pair<double, double>> px(mu.n_atoms()), py(nu.n_atoms());
    double mean_cost = 0.0;
    for (int proj = 0; proj < n_projections; ++proj) {
        double norm2 = 0.0;
        for (double& c : direction) {
            c = stream.normal();
            norm2 += c * c;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        auto project = [&](const EmpiricalSegmentMeasure& m,
                           std::vector<std::pair<double, double>>& out) {
            for (int i = 0; i < m.n_atoms(); ++i) {
                const auto a = m.atom(i).flat();
                double dot = 0.0;
                for (int k = 0; k < ambient; ++k) dot += direction[k] * a[k];
                out[i] = {dot * inv, m.weight(i)};
            }
        };
        project(mu, px);
        project(nu, py);
        mean_cost += std::pow(wasserstein_1d(px, py, p), p);
    }
    return std::pow(mean_cost / n_projections, 1.0 / p);
}

}  // namespace fmv::detail
