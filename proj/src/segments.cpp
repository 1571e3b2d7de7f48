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

#include "segments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fmv {

namespace {

bool all_finite(std::span<const double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

TimeGrid TimeGrid::create(double r0, double dt) {
    require(std::isfinite(r0) && r0 >= 0.0, ErrorCode::invalid_argument,
            "TimeGrid: r0 must be finite and >= 0");
    require(std::isfinite(dt) && dt > 0.0, ErrorCode::invalid_argument,
            "TimeGrid: dt must be finite and > 0");
    const int n_lag = static_cast<int>(std::llround(r0 / dt));
    // dt must divide r0; reject instead of silently adjusting.
    const double tol =
        8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r0);
    require(std::abs(static_cast<double>(n_lag) * dt - r0) <= tol,
            ErrorCode::invalid_argument,
            "TimeGrid: dt must divide r0 (r0 = " + std::to_string(r0) +
                ", dt = " + std::to_string(dt) + ")");
    return TimeGrid{r0, dt, n_lag};
}

bool same_grid(const TimeGrid& a, const TimeGrid& b) {
    return a.n_lag == b.n_lag && a.dt == b.dt;
}

double sup_norm(const SegmentView& s) {
    double best = 0.0;
    const double* p = s.data;
    for (int i = 0; i < s.points; ++i) {
        double sq = 0.0;
        for (int k = 0; k < s.dim; ++k) {
            const double v = p[k];
            sq += v * v;
        }
        best = std::max(best, sq);
        p += s.dim;
    }
    return std::sqrt(best);
}

double sup_distance(const SegmentView& a, const SegmentView& b) {
    double best = 0.0;
    const double* pa = a.data;
    const double* pb = b.data;
    for (int i = 0; i < a.points; ++i) {
        double sq = 0.0;
        for (int k = 0; k < a.dim; ++k) {
            const double v = pa[k] - pb[k];
            sq += v * v;
        }
        best = std::max(best, sq);
        pa += a.dim;
        pb += a.dim;
    }
    return std::sqrt(best);
}

SegmentPath::SegmentPath(TimeGrid grid, int dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
    require(dim_ >= 1, ErrorCode::invalid_argument,
            "SegmentPath: dimension must be >= 1");
    require(values_.size() ==
                static_cast<std::size_t>(grid_.points()) * static_cast<std::size_t>(dim_),
            ErrorCode::shape_mismatch,
            "SegmentPath: expected " + std::to_string(grid_.points()) + " x " +
                std::to_string(dim_) + " values, got " +
                std::to_string(values_.size()));
    require(all_finite(values_), ErrorCode::invalid_argument,
            "SegmentPath: values must be finite");
}

SegmentPath SegmentPath::constant(TimeGrid grid, std::span<const double> value) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid.points()) * value.size());
    for (int i = 0; i < grid.points(); ++i)
        values.insert(values.end(), value.begin(), value.end());
    return SegmentPath(grid, static_cast<int>(value.size()), std::move(values));
}

SegmentPath SegmentPath::zero(TimeGrid grid, int dim) {
    return SegmentPath(
        grid, dim,
        std::vector<double>(static_cast<std::size_t>(grid.points()) * dim, 0.0));
}

TrajectoryBuffer::TrajectoryBuffer(const SegmentPath& initial,
                                   std::size_t max_history_steps)
    : grid_(initial.grid()),
      dim_(initial.dim()),
      values_(initial.flat().begin(), initial.flat().end()),
      current_step_(0),
      oldest_step_(-grid_.n_lag),
      retain_steps_(max_history_steps == 0
                        ? 0
                        : std::max<std::size_t>(max_history_steps,
                                                static_cast<std::size_t>(grid_.points()))) {}

void TrajectoryBuffer::append(std::span<const double> x) {
    require(static_cast<int>(x.size()) == dim_, ErrorCode::shape_mismatch,
            "TrajectoryBuffer::append: wrong state dimension");
    require(all_finite(x), ErrorCode::invalid_argument,
            "TrajectoryBuffer::append: state must be finite");
    values_.insert(values_.end(), x.begin(), x.end());
    ++current_step_;
    trim();
}

void TrajectoryBuffer::trim() {
    if (retain_steps_ == 0) return;
    const std::size_t stored =
        values_.size() / static_cast<std::size_t>(dim_);
    // Amortized: drop the excess only once it doubles the retained window.
    if (stored > 2 * retain_steps_ + 64) {
        const std::size_t drop = stored - retain_steps_;
        values_.erase(values_.begin(),
                      values_.begin() + static_cast<std::ptrdiff_t>(drop * dim_));
        oldest_step_ += static_cast<std::int64_t>(drop);
    }
}

std::span<const double> TrajectoryBuffer::state_at(std::int64_t step) const {
    require(step >= oldest_step_ && step <= current_step_, ErrorCode::out_of_range,
            "TrajectoryBuffer: step " + std::to_string(step) +
                " outside retained range [" + std::to_string(oldest_step_) + ", " +
                std::to_string(current_step_) + "]");
    const std::size_t offset =
        static_cast<std::size_t>(step - oldest_step_) * dim_;
    return {values_.data() + offset, static_cast<std::size_t>(dim_)};
}

SegmentPath TrajectoryBuffer::segment_at(std::int64_t at_step) const {
    require(at_step >= 0, ErrorCode::out_of_range,
            "TrajectoryBuffer: segment extraction requires at_step >= 0");
    require(at_step <= current_step_, ErrorCode::out_of_range,
            "TrajectoryBuffer: step " + std::to_string(at_step) +
                " not reached yet");
    const std::int64_t lo = at_step - grid_.n_lag;
    require(lo >= oldest_step_, ErrorCode::out_of_range,
            "TrajectoryBuffer: insufficient history for segment at step " +
                std::to_string(at_step));
    const std::size_t offset =
        static_cast<std::size_t>(lo - oldest_step_) * dim_;
    const std::size_t len = static_cast<std::size_t>(grid_.points()) * dim_;
    return SegmentPath(grid_, dim_,
                       std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                                           values_.begin() + static_cast<std::ptrdiff_t>(offset + len)));
}

SegmentView TrajectoryBuffer::latest_view() const {
    const std::size_t offset =
        static_cast<std::size_t>(current_step_ - grid_.n_lag - oldest_step_) * dim_;
    return {values_.data() + offset, grid_.points(), dim_};
}

double TrajectoryBuffer::max_state_norm() const {
    SegmentView all{values_.data(),
                    static_cast<int>(values_.size() / static_cast<std::size_t>(dim_)),
                    dim_};
    return sup_norm(all);
}

}  // namespace fmv
