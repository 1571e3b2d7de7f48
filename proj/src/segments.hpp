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

#include "errors.hpp"

namespace fmv {

/// Uniform discretization of the delay window [-r0, 0]. n_lag * dt must
/// reproduce r0 up to rounding; n_lag = 0 encodes the delay-free case.
struct TimeGrid {
    double r0 = 0.0;
    double dt = 1.0;
    int n_lag = 0;

    static TimeGrid create(double r0, double dt);

    int points() const { return n_lag + 1; }
};

bool same_grid(const TimeGrid& a, const TimeGrid& b);

/// Non-owning view of one segment: `points` states of dimension `dim`,
/// contiguous, oldest first (index 0 is theta = -r0, index points-1 is
/// theta = 0, the current state).
struct SegmentView {
    const double* data = nullptr;
    int points = 0;
    int dim = 0;

    std::span<const double> value(int i) const {
        return {data + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }
    std::span<const double> endpoint() const { return value(points - 1); }
    std::span<const double> oldest() const { return value(0); }
    std::span<const double> flat() const {
        return {data, static_cast<std::size_t>(points) * dim};
    }
};

double sup_norm(const SegmentView& s);
double sup_distance(const SegmentView& a, const SegmentView& b);

/// Owning discretized element of C([-r0,0]; R^d).
class SegmentPath {
public:
    SegmentPath(TimeGrid grid, int dim, std::vector<double> values);

    static SegmentPath constant(TimeGrid grid, std::span<const double> value);
    static SegmentPath zero(TimeGrid grid, int dim);

    const TimeGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    int points() const { return grid_.points(); }
    std::span<const double> value(int i) const { return view().value(i); }
    std::span<const double> flat() const { return values_; }

    SegmentView view() const {
        return {values_.data(), grid_.points(), dim_};
    }

    bool operator==(const SegmentPath& other) const = default;

private:
    TimeGrid grid_;
    int dim_ = 0;
    std::vector<double> values_;
};

inline double sup_norm(const SegmentPath& s) { return sup_norm(s.view()); }
inline double sup_distance(const SegmentPath& a, const SegmentPath& b) {
    require(same_grid(a.grid(), b.grid()) && a.dim() == b.dim(),
            ErrorCode::shape_mismatch,
            "sup_distance: segments must share grid and dimension");
    return sup_distance(a.view(), b.view());
}

/// Single-writer path history on [-r0, inf). Appends advance the current
/// step; the latest window is always available as a contiguous view. With a
/// bounded history the oldest entries are dropped and extraction of windows
/// that reach below the retained range fails with out_of_range.
class TrajectoryBuffer {
public:
    /// max_history_steps = 0 keeps the full trajectory; otherwise at least
    /// the last max(max_history_steps, n_lag + 1) states are retained.
    TrajectoryBuffer(const SegmentPath& initial, std::size_t max_history_steps = 0);

    const TimeGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    std::int64_t current_step() const { return current_step_; }
    std::int64_t oldest_step() const { return oldest_step_; }

    void append(std::span<const double> x);

    /// Window [at_step - n_lag, at_step]; the paper's segment X_t.
    SegmentPath segment_at(std::int64_t at_step) const;
    SegmentView latest_view() const;
    std::span<const double> state_at(std::int64_t step) const;
    std::span<const double> latest_state() const { return state_at(current_step_); }

    double max_state_norm() const;

private:
    void trim();

    TimeGrid grid_;
    int dim_ = 0;
    std::vector<double> values_;       // states from oldest_step_ upward
    std::int64_t current_step_ = 0;
    std::int64_t oldest_step_ = 0;     // step index of values_[0]
    std::size_t retain_steps_ = 0;     // 0 = unbounded
};

}  // namespace fmv
