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

#include <vector>

namespace fmv {

/// Stationary law of dX = -lambda1 X dt + sigma sqrt(X^2 + 1) dW on the real
/// line: density proportional to (x^2 + 1)^(-lambda1/sigma^2 - 1). This is
/// the toolkit's closed-form reference distribution.
///
/// All integrals run in the compactified variable t = atan(x), where the
/// unnormalized density becomes cos(t)^(2 eta - 2) with
/// eta = lambda1/sigma^2 + 1 > 1.
class SpeedMeasureOracle {
public:
    SpeedMeasureOracle(double lambda1, double sigma);

    double lambda1() const { return lambda1_; }
    double sigma() const { return sigma_; }
    double exponent() const { return eta_; }

    /// Normalization constant of (x^2+1)^(-eta), adaptive quadrature to
    /// relative accuracy 1e-10.
    double normalization() const { return z_; }

    double unnormalized_density(double x) const;
    double density(double x) const;

    /// The p-th absolute moment is finite iff lambda1 > (p-1) sigma^2 / 2
    /// (strict inequality).
    bool moment_finite(double p) const;

    /// Integer moment; odd orders vanish by symmetry, even orders are
    /// integrated adaptively to relative accuracy 1e-8. Requesting an
    /// infinite moment is a domain error.
    double moment(int k) const;

    double cdf(double x) const;
    double quantile(double u) const;

    /// Deterministic inverse-CDF sample set at the stratified quantile
    /// levels (i + 1/2)/n, ascending.
    std::vector<double> stratified_samples(int n) const;

private:
    double panel_integral(double t0, double t1) const;

    double lambda1_ = 0.0;
    double sigma_ = 0.0;
    double eta_ = 0.0;
    double z_ = 0.0;
    std::vector<double> cum_;  // prefix integrals of cos^(2 eta - 2) over the t-grid
    double t_lo_ = 0.0, t_hi_ = 0.0, panel_width_ = 0.0;
};

}  // namespace fmv
