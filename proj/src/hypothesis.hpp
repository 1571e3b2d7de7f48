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

#include "coefficients.hpp"

namespace fmv {

/// One-sided Burkholder-Davis-Gundy constant: smallest positive root of the
/// confluent hypergeometric function with parameter 1. Pinned to the printed
/// five-decimal value for reproducibility; every bound is monotone in chi.
constexpr double kChi = 1.30693;

inline double chi() { return kChi; }

/// Candidate parameter tuple (eps, alpha, gamma1, gamma2[, gamma3]) for the
/// feasibility regions.
struct FeasibilityPoint {
    double eps = 0.5;
    double alpha = 1.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    std::optional<double> gamma3;

    void validate() const;
};

/// Full evaluation of the feasibility functions at one point. in_A iff
/// gap_A > 0 and psi < 0; in_U iff gap_U > 0 and psi < 0 (so in_A implies
/// in_U). kappa3/phi/theta require gamma3 and are NaN without it.
struct FeasibilityReport {
    FeasibilityPoint point;
    double psi = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    double gap_A = 0.0;  // alpha - 2 e^{alpha r0} (kappa1 + kappa2)
    double gap_U = 0.0;  // alpha - 2 e^{alpha r0} kappa1
    bool in_A = false;
    bool in_U = false;
};

double eval_psi(const StructuralConstants& c, const FeasibilityPoint& pt);
double eval_kappa1(const StructuralConstants& c, double eps, double gamma1);
double eval_kappa2(const StructuralConstants& c, double eps, double gamma2);
double eval_kappa3(const StructuralConstants& c, double eps, double gamma3);
double eval_phi(const StructuralConstants& c, const FeasibilityPoint& pt);
double eval_theta(const StructuralConstants& c, const FeasibilityPoint& pt);

FeasibilityReport check_membership(const StructuralConstants& c,
                                   const FeasibilityPoint& pt);

/// Deterministic log-grid search over (eps, alpha, gamma1, gamma2), at most
/// `budget` evaluations in a fixed traversal order. Among the evaluated
/// points that land in the region, the one with the largest gap_A wins
/// (earliest on ties); a found point gets gamma3 attached so the moment
/// bound is usable. An empty result means the budget found nothing, not
/// that the region is empty.
std::optional<FeasibilityPoint> find_feasible(const StructuralConstants& c,
                                              std::uint64_t budget = 20000);

/// Explicit gamma3 with phi < 0 for a point with psi < 0 (half the slack of
/// the linear-in-gamma3 term); identity 1.0 when lambda0 = 0.
double pick_gamma3(const StructuralConstants& c, const FeasibilityPoint& pt);

/// Constants of the explicit moment bound: E||X_t||_inf^p <=
/// steady_term + transient_coeff * mu(||.||^p) * exp(-decay_rate * t).
/// Constructible only at points in U with phi < 0.
struct MomentBound {
    double steady_term = 0.0;
    double transient_coeff = 0.0;
    double decay_rate = 0.0;

    double at(double t, double mu_moment_p) const;
};

MomentBound make_moment_bound(const StructuralConstants& c,
                              const FeasibilityPoint& pt, double nu_moment_p);

double moment_bound(const StructuralConstants& c, const FeasibilityPoint& pt,
                    double nu_moment_p, double mu_moment_p, double t);

/// Lower admissibility level for the invariant moment gate: the larger of
/// the steady-state bound evaluated at order q and the simulated
/// E||X_{r0}^{d0,d0}||_inf^q supplied by the caller.
double m0_bound(const StructuralConstants& c_at_q, const FeasibilityPoint& pt,
                double x_r0_moment_q);

}  // namespace fmv
