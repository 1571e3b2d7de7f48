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

#include "measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rng.hpp"
#include "transport.hpp"

namespace fmv {

EmpiricalSegmentMeasure::EmpiricalSegmentMeasure(TimeGrid grid, int dim,
                                                 std::vector<double> atoms,
                                                 std::vector<double> weights)
    : grid_(grid), dim_(dim), atoms_(std::move(atoms)), weights_(std::move(weights)) {
    require(dim_ >= 1, ErrorCode::invalid_argument,
            "EmpiricalSegmentMeasure: dimension must be >= 1");
    atom_len_ = static_cast<std::size_t>(grid_.points()) * dim_;
    require(!atoms_.empty() && atoms_.size() % atom_len_ == 0,
            ErrorCode::shape_mismatch,
            "EmpiricalSegmentMeasure: atom payload is not a multiple of the "
            "segment length");
    n_atoms_ = static_cast<int>(atoms_.size() / atom_len_);

    if (weights_.empty()) {
        weights_.assign(n_atoms_, 1.0 / n_atoms_);
    }
    require(static_cast<int>(weights_.size()) == n_atoms_, ErrorCode::shape_mismatch,
            "EmpiricalSegmentMeasure: |weights| must equal |atoms|");
    double total = 0.0;
    for (double w : weights_) {
        require(std::isfinite(w) && w >= 0.0, ErrorCode::invalid_argument,
                "EmpiricalSegmentMeasure: weights must be finite and >= 0");
        total += w;
    }
    require(total > 0.0, ErrorCode::invalid_argument,
            "EmpiricalSegmentMeasure: weights must not all vanish");
    // Normalize so downstream code may assume total mass 1 (up to rounding).
    if (total != 1.0) {
        for (double& w : weights_) w /= total;
    }
    for (double v : atoms_)
        require(std::isfinite(v), ErrorCode::invalid_argument,
                "EmpiricalSegmentMeasure: atom values must be finite");

    sup_norms_.resize(n_atoms_);
    endpoint_mean_.assign(dim_, 0.0);
    for (int i = 0; i < n_atoms_; ++i) {
        const SegmentView a = atom(i);
        sup_norms_[i] = sup_norm(a);
        const auto end = a.endpoint();
        for (int k = 0; k < dim_; ++k) endpoint_mean_[k] += weights_[i] * end[k];
    }
}

EmpiricalSegmentMeasure EmpiricalSegmentMeasure::delta0(TimeGrid grid, int dim) {
    return single(SegmentPath::zero(grid, dim));
}

EmpiricalSegmentMeasure EmpiricalSegmentMeasure::single(const SegmentPath& atom) {
    return EmpiricalSegmentMeasure(
        atom.grid(), atom.dim(),
        std::vector<double>(atom.flat().begin(), atom.flat().end()), {1.0});
}

EmpiricalSegmentMeasure EmpiricalSegmentMeasure::from_segments(
    const std::vector<SegmentPath>& atoms, std::vector<double> weights) {
    require(!atoms.empty(), ErrorCode::invalid_argument,
            "EmpiricalSegmentMeasure: need at least one atom");
    std::vector<double> flat;
    flat.reserve(atoms.size() * atoms.front().flat().size());
    for (const auto& a : atoms) {
        require(same_grid(a.grid(), atoms.front().grid()) &&
                    a.dim() == atoms.front().dim(),
                ErrorCode::shape_mismatch,
                "EmpiricalSegmentMeasure: atoms must share grid and dimension");
        flat.insert(flat.end(), a.flat().begin(), a.flat().end());
    }
    return EmpiricalSegmentMeasure(atoms.front().grid(), atoms.front().dim(),
                                   std::move(flat), std::move(weights));
}

double EmpiricalSegmentMeasure::moment(double p) const {
    require(std::isfinite(p) && p >= 1.0, ErrorCode::invalid_argument,
            "moment: p must be >= 1");
    double acc = 0.0;
    for (int i = 0; i < n_atoms_; ++i)
        acc += weights_[i] * std::pow(sup_norms_[i], p);
    return acc;
}

double EmpiricalSegmentMeasure::wp_to_delta0(double p) const {
    return std::pow(moment(p), 1.0 / p);
}

std::vector<std::pair<double, double>> EmpiricalSegmentMeasure::endpoint_marginal(
    int coord) const {
    require(coord >= 0 && coord < dim_, ErrorCode::out_of_range,
            "endpoint_marginal: coordinate out of range");
    std::vector<std::pair<double, double>> out;
    out.reserve(n_atoms_);
    for (int i = 0; i < n_atoms_; ++i)
        out.emplace_back(atom(i).endpoint()[coord], weights_[i]);
    return out;
}

EmpiricalSegmentMeasure EmpiricalSegmentMeasure::subsample(
    int max_atoms, std::uint64_t seed) const {
    require(max_atoms >= 1, ErrorCode::invalid_argument,
            "subsample: max_atoms must be >= 1");
    if (n_atoms_ <= max_atoms) return *this;

    std::vector<int> idx(n_atoms_);
    std::iota(idx.begin(), idx.end(), 0);
    rng::Xoshiro256pp gen(seed);
    for (int i = 0; i < max_atoms; ++i) {
        const int j = i + static_cast<int>(gen.next() %
                                           static_cast<std::uint64_t>(n_atoms_ - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<double> atoms;
    atoms.reserve(static_cast<std::size_t>(max_atoms) * atom_len_);
    for (int i = 0; i < max_atoms; ++i) {
        const auto a = atom(idx[i]).flat();
        atoms.insert(atoms.end(), a.begin(), a.end());
    }
    // Uniform weights on the subsample: draws are index-uniform.
    return EmpiricalSegmentMeasure(grid_, dim_, std::move(atoms));
}

WassersteinResult wasserstein_p(const EmpiricalSegmentMeasure& mu,
                                const EmpiricalSegmentMeasure& nu, double p,
                                WassersteinMethod method,
                                long long max_cost_entries, int n_projections,
                                std::uint64_t seed) {
    require(same_grid(mu.grid(), nu.grid()) && mu.dim() == nu.dim(),
            ErrorCode::shape_mismatch,
            "wasserstein_p: measures must share grid and dimension");
    require(std::isfinite(p) && p >= 1.0, ErrorCode::invalid_argument,
            "wasserstein_p: p must be >= 1");

    if (method == WassersteinMethod::sliced) {
        WassersteinResult res;
        res.distance = detail::sliced_wasserstein(mu, nu, p, n_projections, seed);
        res.cost_p = std::pow(res.distance, p);
        return res;
    }

    if (max_cost_entries <= 0) max_cost_entries = kDefaultCostEntryCap;
    const long long entries =
        static_cast<long long>(mu.n_atoms()) * static_cast<long long>(nu.n_atoms());
    require(entries <= max_cost_entries, ErrorCode::cap_exceeded,
            "wasserstein_p: cost matrix would need " + std::to_string(entries) +
                " entries (cap " + std::to_string(max_cost_entries) +
                "); subsample or use the sliced method");

    std::vector<double> cost(static_cast<std::size_t>(entries));
    for (int i = 0; i < mu.n_atoms(); ++i) {
        const SegmentView a = mu.atom(i);
        double* row = cost.data() + static_cast<std::size_t>(i) * nu.n_atoms();
        for (int j = 0; j < nu.n_atoms(); ++j)
            row[j] = std::pow(sup_distance(a, nu.atom(j)), p);
    }

    detail::TransportSolution sol = detail::solve_transport(
        std::span<const double>(mu.weights()), std::span<const double>(nu.weights()),
        cost, nu.n_atoms());

    WassersteinResult res;
    res.cost_p = sol.total_cost;
    res.distance = std::pow(std::max(sol.total_cost, 0.0), 1.0 / p);
    res.plan.entries.reserve(sol.flows.size());
    for (const auto& f : sol.flows)
        res.plan.entries.push_back({f.from, f.to, f.mass});
    return res;
}

double wasserstein_1d(std::span<const std::pair<double, double>> xs,
                      std::span<const std::pair<double, double>> ys, double p) {
    require(!xs.empty() && !ys.empty(), ErrorCode::invalid_argument,
            "wasserstein_1d: inputs must be nonempty");
    require(std::isfinite(p) && p >= 1.0, ErrorCode::invalid_argument,
            "wasserstein_1d: p must be >= 1");

    auto prepare = [](std::span<const std::pair<double, double>> in) {
        std::vector<std::pair<double, double>> v(in.begin(), in.end());
        std::sort(v.begin(), v.end());
        double total = 0.0;
        for (auto& [x, w] : v) {
            require(std::isfinite(x), ErrorCode::invalid_argument,
                    "wasserstein_1d: values must be finite");
            require(w >= 0.0, ErrorCode::invalid_argument,
                    "wasserstein_1d: weights must be >= 0");
            total += w;
        }
        require(total > 0.0, ErrorCode::invalid_argument,
                "wasserstein_1d: total weight must be positive");
        for (auto& [x, w] : v) w /= total;
        return v;
    };
    const auto a = prepare(xs);
    const auto b = prepare(ys);
    const std::size_t na = a.size(), nb = b.size();

    // Integrate |F^{-1}(u) - G^{-1}(u)|^p du piecewise over the merged
    // breakpoints of both CDFs. The last cumulative weight is pinned to 1 so
    // no tail mass is lost to rounding.
    std::size_t i = 0, j = 0;
    double ca = (na == 1) ? 1.0 : a[0].second;
    double cb = (nb == 1) ? 1.0 : b[0].second;
    double u = 0.0, cost = 0.0;
    while (true) {
        const double next = std::min(ca, cb);
        if (next > u)
            cost += (next - u) * std::pow(std::abs(a[i].first - b[j].first), p);
        u = next;
        if (u >= 1.0) break;
        if (ca <= u) {
            ++i;
            ca = (i == na - 1) ? 1.0 : ca + a[i].second;
        }
        if (cb <= u) {
            ++j;
            cb = (j == nb - 1) ? 1.0 : cb + b[j].second;
        }
    }
    return std::pow(cost, 1.0 / p);
}

}  // namespace fmv
