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
#include <optional>
#include <span>
#include <vector>

#include "segments.hpp"

namespace fmv {

/// Weighted finite set of segments approximating an element of P_p(C).
/// Immutable after construction; weights are normalized to sum to 1.
/// Endpoint mean and per-atom sup-norms are precomputed, so moment queries
/// and mean-field drift evaluations are O(1) or O(n).
class EmpiricalSegmentMeasure {
public:
    EmpiricalSegmentMeasure(TimeGrid grid, int dim, std::vector<double> atoms,
                            std::vector<double> weights = {});

    static EmpiricalSegmentMeasure delta0(TimeGrid grid, int dim);
    static EmpiricalSegmentMeasure single(const SegmentPath& atom);
    static EmpiricalSegmentMeasure from_segments(const std::vector<SegmentPath>& atoms,
                                                 std::vector<double> weights = {});

    const TimeGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    int n_atoms() const { return n_atoms_; }
    int points() const { return grid_.points(); }

    SegmentView atom(int i) const {
        return {atoms_.data() + static_cast<std::size_t>(i) * atom_len_,
                grid_.points(), dim_};
    }
    double weight(int i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> flat_atoms() const { return atoms_; }
    double atom_sup_norm(int i) const { return sup_norms_[i]; }

    /// mu(||.||_inf^p) = sum_i w_i sup_norm(atom_i)^p.
    double moment(double p) const;

    /// W_p(mu, delta_0) = moment(p)^(1/p); exact, every coupling with a point
    /// mass transports each atom to 0.
    double wp_to_delta0(double p) const;

    /// Mean of the time-0 states (the paper's xi(0)) under the measure.
    std::span<const double> endpoint_mean() const { return endpoint_mean_; }

    /// Weighted sample set of endpoint values for one coordinate.
    std::vector<std::pair<double, double>> endpoint_marginal(int coord) const;

    /// Seeded uniform subsample without replacement (atom indices are taken
    /// from the deterministic Fisher-Yates prefix). Used to keep exact
    /// transport solves affordable on large pools.
    EmpiricalSegmentMeasure subsample(int max_atoms, std::uint64_t seed) const;

private:
    TimeGrid grid_;
    int dim_ = 0;
    int n_atoms_ = 0;
    std::size_t atom_len_ = 0;
    std::vector<double> atoms_;    // n_atoms x points x dim
    std::vector<double> weights_;  // normalized
    std::vector<double> sup_norms_;
    std::vector<double> endpoint_mean_;
};

/// Transport plan between two empirical measures: (i, j, mass) triples whose
/// row/column sums reproduce the marginals.
struct CouplingPlan {
    struct Entry {
        int from = 0;
        int to = 0;
        double mass = 0.0;
    };
    std::vector<Entry> entries;
};

enum class WassersteinMethod { exact, sliced };

struct WassersteinResult {
    double distance = 0.0;
    double cost_p = 0.0;  // sum pi_ij c_ij with c = sup_distance^p
    CouplingPlan plan;    // populated for the exact method only
};

inline constexpr long long kDefaultCostEntryCap = 4'000'000;

/// W_p between empirical segment measures with the sup-norm ground metric.
/// The exact method solves the discrete optimal transport problem to
/// optimality; the sliced method is a labeled approximation via random
/// one-dimensional projections.
WassersteinResult wasserstein_p(const EmpiricalSegmentMeasure& mu,
                                const EmpiricalSegmentMeasure& nu, double p,
                                WassersteinMethod method = WassersteinMethod::exact,
                                long long max_cost_entries = kDefaultCostEntryCap,
                                int n_projections = 64,
                                std::uint64_t seed = 0);

/// Exact W_p on the real line via the quantile (CDF-inverse) coupling.
double wasserstein_1d(std::span<const std::pair<double, double>> xs,
                      std::span<const std::pair<double, double>> ys, double p);

}  // namespace fmv
