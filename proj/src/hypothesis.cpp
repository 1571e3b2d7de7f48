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

#include "hypothesis.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace fmv {

namespace {

/// ((p-2)/(p*gamma))^((p-2)/2) with the 0^0 = 1 convention at p = 2.
double power_factor(double p, double gamma) {
    if (p == 2.0) return 1.0;
    return std::pow((p - 2.0) / (p * gamma), 0.5 * (p - 2.0));
}

}  // namespace

void FeasibilityPoint::validate() const {
    require(std::isfinite(eps) && eps > 0.0 && eps < 1.0,
            ErrorCode::invalid_argument,
            "FeasibilityPoint: eps must lie in (0, 1)");
    require(std::isfinite(alpha) && alpha > 0.0, ErrorCode::invalid_argument,
            "FeasibilityPoint: alpha must be > 0");
    require(std::isfinite(gamma1) && gamma1 > 0.0, ErrorCode::invalid_argument,
            "FeasibilityPoint: gamma1 must be > 0");
    require(std::isfinite(gamma2) && gamma2 > 0.0, ErrorCode::invalid_argument,
            "FeasibilityPoint: gamma2 must be > 0");
    if (gamma3)
        require(std::isfinite(*gamma3) && *gamma3 > 0.0,
                ErrorCode::invalid_argument,
                "FeasibilityPoint: gamma3 must be > 0 when present");
}

double eval_psi(const StructuralConstants& c, const FeasibilityPoint& pt) {
    pt.validate();
    const double p = c.p;
    const auto& l = c.lambda;
    const double braces = pt.alpha - p * l[1] / 2.0 +
                          (p * pt.gamma1 / 2.0) * (l[2] + l[4] * (p - 1.0)) +
                          (p * pt.gamma2 / 2.0) * (l[3] + l[5] * (p - 1.0));
    return (1.0 - pt.eps) / pt.eps * braces +
           kChi * kChi * p * p / (2.0 * pt.eps * pt.eps) *
               (l[4] * pt.gamma1 + l[5] * pt.gamma2);
}

double eval_kappa1(const StructuralConstants& c, double eps, double gamma1) {
    require(eps > 0.0 && eps < 1.0 && gamma1 > 0.0, ErrorCode::invalid_argument,
            "eval_kappa1: need eps in (0,1) and gamma1 > 0");
    const double p = c.p;
    return (c.lambda[2] +
            c.lambda[4] * ((1.0 + kChi * kChi / eps) * p - 1.0)) /
           eps * power_factor(p, gamma1);
}

double eval_kappa2(const StructuralConstants& c, double eps, double gamma2) {
    require(eps > 0.0 && eps < 1.0 && gamma2 > 0.0, ErrorCode::invalid_argument,
            "eval_kappa2: need eps in (0,1) and gamma2 > 0");
    const double p = c.p;
    return (c.lambda[3] +
            c.lambda[5] * ((1.0 + kChi * kChi / eps) * p - 1.0)) /
           eps * power_factor(p, gamma2);
}

double eval_kappa3(const StructuralConstants& c, double eps, double gamma3) {
    require(eps > 0.0 && eps < 1.0 && gamma3 > 0.0, ErrorCode::invalid_argument,
            "eval_kappa3: need eps in (0,1) and gamma3 > 0");
    const double p = c.p;
    return p * c.lambda[0] / eps * (1.0 + kChi * kChi / eps) *
           power_factor(p, gamma3);
}

double eval_phi(const StructuralConstants& c, const FeasibilityPoint& pt) {
    require(pt.gamma3.has_value(), ErrorCode::invalid_argument,
            "eval_phi: gamma3 is required");
    const double p = c.p;
    return eval_psi(c, pt) +
           0.5 * ((1.0 - pt.eps) / pt.eps + kChi * kChi / (pt.eps * pt.eps)) *
               p * p * (*pt.gamma3) * c.lambda[0];
}

double eval_theta(const StructuralConstants& c, const FeasibilityPoint& pt) {
    require(pt.gamma3.has_value(), ErrorCode::invalid_argument,
            "eval_theta: gamma3 is required");
    pt.validate();
    const double p = c.p;
    const auto& l = c.lambda;
    return pt.alpha - p * l[1] / 2.0 + p * p * l[0] * (*pt.gamma3) / 2.0 +
           (p * pt.gamma1 / 2.0) * (l[2] + l[4] * (p - 1.0)) +
           (p * pt.gamma2 / 2.0) * (l[3] + l[5] * (p - 1.0));
}

FeasibilityReport check_membership(const StructuralConstants& c,
                                   const FeasibilityPoint& pt) {
    c.validate();
    pt.validate();
    FeasibilityReport report;
    report.point = pt;
    report.psi = eval_psi(c, pt);
    report.kappa1 = eval_kappa1(c, pt.eps, pt.gamma1);
    report.kappa2 = eval_kappa2(c, pt.eps, pt.gamma2);
    const double growth = 2.0 * std::exp(pt.alpha * c.r0);
    report.gap_A = pt.alpha - growth * (report.kappa1 + report.kappa2);
    report.gap_U = pt.alpha - growth * report.kappa1;
    report.in_A = report.gap_A > 0.0 && report.psi < 0.0;
    report.in_U = report.gap_U > 0.0 && report.psi < 0.0;
    if (pt.gamma3) {
        report.kappa3 = eval_kappa3(c, pt.eps, *pt.gamma3);
        report.phi = eval_phi(c, pt);
        report.theta = eval_theta(c, pt);
    } else {
        report.kappa3 = std::numeric_limits<double>::quiet_NaN();
        report.phi = std::numeric_limits<double>::quiet_NaN();
        report.theta = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

double pick_gamma3(const StructuralConstants& c, const FeasibilityPoint& pt) {
    const double psi = eval_psi(c, pt);
    require(psi < 0.0, ErrorCode::precondition,
            "pick_gamma3: psi must be negative at the point");
    const double slope =
        0.5 * ((1.0 - pt.eps) / pt.eps + kChi * kChi / (pt.eps * pt.eps)) *
        c.p * c.p * c.lambda[0];
    if (slope <= 0.0) return 1.0;  // lambda0 = 0: phi = psi for any gamma3
    return -psi / (2.0 * slope);   // phi = psi/2 < 0
}

std::optional<FeasibilityPoint> find_feasible(const StructuralConstants& c,
                                              std::uint64_t budget) {
    c.validate();
    require(budget >= 1, ErrorCode::invalid_argument,
            "find_feasible: budget must be >= 1");

    std::vector<double> eps_grid;
    for (int i = 1; i <= 9; ++i) eps_grid.push_back(0.1 * i);
    std::vector<double> log_grid;
    for (int i = 0; i <= 12; ++i) log_grid.push_back(std::pow(10.0, -3.0 + 0.5 * i));

    std::uint64_t used = 0;
    std::optional<FeasibilityPoint> best;
    double best_gap = 0.0;
    for (double eps : eps_grid) {
        for (double alpha : log_grid) {
            for (double g1 : log_grid) {
                for (double g2 : log_grid) {
                    if (used >= budget) goto done;
                    ++used;
                    FeasibilityPoint pt{eps, alpha, g1, g2, std::nullopt};
                    const auto report = check_membership(c, pt);
                    if (report.in_A && (!best || report.gap_A > best_gap)) {
                        best = pt;
                        best_gap = report.gap_A;
                    }
                }
            }
        }
    }
done:
    if (best) best->gamma3 = pick_gamma3(c, *best);
    return best;
}

MomentBound make_moment_bound(const StructuralConstants& c,
                              const FeasibilityPoint& pt, double nu_moment_p) {
    require(pt.gamma3.has_value(), ErrorCode::precondition,
            "moment_bound: gamma3 is required");
    require(nu_moment_p >= 0.0, ErrorCode::invalid_argument,
            "moment_bound: W_p(nu, delta0)^p must be >= 0");
    const auto report = check_membership(c, pt);
    require(report.gap_U > 0.0, ErrorCode::precondition,
            "moment_bound: point not in U (alpha - 2 kappa1 e^{alpha r0} <= 0)");
    require(report.phi < 0.0, ErrorCode::precondition,
            "moment_bound: phi(eps, alpha, gamma1, gamma2, gamma3) >= 0");

    const double e_ar0 = std::exp(pt.alpha * c.r0);
    MomentBound bound;
    bound.decay_rate = pt.alpha - 2.0 * report.kappa1 * e_ar0;
    bound.steady_term = 2.0 * e_ar0 / bound.decay_rate *
                        (report.kappa3 + report.kappa2 * nu_moment_p);
    bound.transient_coeff =
        e_ar0 * (1.0 + 4.0 / pt.eps + 4.0 * report.kappa1 * c.r0 * e_ar0);
    return bound;
}

double MomentBound::at(double t, double mu_moment_p) const {
    return steady_term +
           transient_coeff * mu_moment_p * std::exp(-decay_rate * t);
}

double moment_bound(const StructuralConstants& c, const FeasibilityPoint& pt,
                    double nu_moment_p, double mu_moment_p, double t) {
    require(t >= 0.0 && mu_moment_p >= 0.0, ErrorCode::invalid_argument,
            "moment_bound: t and mu(||.||^p) must be >= 0");
    return make_moment_bound(c, pt, nu_moment_p).at(t, mu_moment_p);
}

double m0_bound(const StructuralConstants& c_at_q, const FeasibilityPoint& pt,
                double x_r0_moment_q) {
    const auto report = check_membership(c_at_q, pt);
    require(pt.gamma3.has_value(), ErrorCode::precondition,
            "m0_bound: gamma3 is required");
    require(report.gap_A > 0.0, ErrorCode::precondition,
            "m0_bound: point not in A at order q");
    require(x_r0_moment_q >= 0.0, ErrorCode::invalid_argument,
            "m0_bound: simulated moment must be >= 0");
    const double e_ar0 = std::exp(pt.alpha * c_at_q.r0);
    const double steady = 2.0 * report.kappa3 * e_ar0 / report.gap_A;
    return std::max(steady, x_r0_moment_q);
}

}  // namespace fmv
