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

#include "speed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "quadrature.hpp"

namespace fmv {

namespace {
constexpr double kHalfPi = 1.57079632679489661923132169163975;
constexpr int kPanels = 4096;
}  // namespace

SpeedMeasureOracle::SpeedMeasureOracle(double lambda1, double sigma)
    : lambda1_(lambda1), sigma_(sigma) {
    require(std::isfinite(lambda1) && lambda1 > 0.0, ErrorCode::invalid_argument,
            "SpeedMeasureOracle: lambda1 must be > 0");
    require(std::isfinite(sigma) && sigma > 0.0, ErrorCode::invalid_argument,
            "SpeedMeasureOracle: sigma must be > 0");
    eta_ = lambda1_ / (sigma_ * sigma_) + 1.0;

    const double power = 2.0 * eta_ - 2.0;
    auto g = [power](double t) { return std::pow(std::cos(t), power); };
    z_ = integrate_adaptive(g, -kHalfPi, kHalfPi, 1e-10).value;

    t_lo_ = -kHalfPi;
    t_hi_ = kHalfPi;
    panel_width_ = (t_hi_ - t_lo_) / kPanels;
    cum_.resize(kPanels + 1);
    cum_[0] = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double a = t_lo_ + i * panel_width_;
        cum_[i + 1] = cum_[i] + panel_integral(a, a + panel_width_);
    }
}

double SpeedMeasureOracle::panel_integral(double t0, double t1) const {
    const double power = 2.0 * eta_ - 2.0;
    return integrate_adaptive(
               [power](double t) { return std::pow(std::cos(t), power); }, t0,
               t1, 1e-12, 0.0, 16)
        .value;
}

double SpeedMeasureOracle::unnormalized_density(double x) const {
    require(std::isfinite(x), ErrorCode::invalid_argument,
            "SpeedMeasureOracle::density: x must be finite");
    return std::pow(x * x + 1.0, -eta_);
}

double SpeedMeasureOracle::density(double x) const {
    return unnormalized_density(x) / z_;
}

bool SpeedMeasureOracle::moment_finite(double p) const {
    require(std::isfinite(p) && p >= 0.0, ErrorCode::invalid_argument,
            "SpeedMeasureOracle::moment_finite: p must be >= 0");
    return lambda1_ > 0.5 * (p - 1.0) * sigma_ * sigma_;
}

double SpeedMeasureOracle::moment(int k) const {
    require(k >= 0, ErrorCode::invalid_argument,
            "SpeedMeasureOracle::moment: order must be >= 0");
    if (k == 0) return 1.0;
    if (k % 2 == 1) return 0.0;  // even density
    require(moment_finite(static_cast<double>(k)), ErrorCode::domain,
            "SpeedMeasureOracle::moment: E|X|^" + std::to_string(k) +
                " is infinite (needs lambda1 > (k-1) sigma^2 / 2)");
    // x^k f(x) dx -> sin^k(t) cos^(2 eta - 2 - k)(t) dt.
    const double cos_power = 2.0 * eta_ - 2.0 - k;
    auto integrand = [k, cos_power](double t) {
        return std::pow(std::sin(t), k) * std::pow(std::cos(t), cos_power);
    };
    const auto q =
        integrate_adaptive(integrand, -kHalfPi, kHalfPi, 1e-8, 0.0, 8192);
    return q.value / z_;
}

double SpeedMeasureOracle::cdf(double x) const {
    require(std::isfinite(x), ErrorCode::invalid_argument,
            "SpeedMeasureOracle::cdf: x must be finite");
    const double t = std::atan(x);
    const double pos = (t - t_lo_) / panel_width_;
    const int idx = std::clamp(static_cast<int>(pos), 0, kPanels - 1);
    const double partial = panel_integral(t_lo_ + idx * panel_width_, t);
    return std::clamp((cum_[idx] + partial) / cum_.back(), 0.0, 1.0);
}

double SpeedMeasureOracle::quantile(double u) const {
    require(std::isfinite(u) && u > 0.0 && u < 1.0, ErrorCode::invalid_argument,
            "SpeedMeasureOracle::quantile: u must lie in (0, 1)");
    const double target = u * cum_.back();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    const int idx =
        std::clamp(static_cast<int>(it - cum_.begin()) - 1, 0, kPanels - 1);

    double lo = t_lo_ + idx * panel_width_;
    double hi = lo + panel_width_;
    const double base = cum_[idx];
    const double panel_lo = lo;
    // Bisection inside the located panel.
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (base + panel_integral(panel_lo, mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15) break;
    }
    return std::tan(0.5 * (lo + hi));
}

std::vector<double> SpeedMeasureOracle::stratified_samples(int n) const {
    require(n >= 1, ErrorCode::invalid_argument,
            "SpeedMeasureOracle::stratified_samples: n must be >= 1");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = quantile((i + 0.5) / static_cast<double>(n));
    return out;
}

}  // namespace fmv
