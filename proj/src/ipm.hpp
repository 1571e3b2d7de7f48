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

#include <optional>
#include <vector>

#include "simulator.hpp"

namespace fmv {

struct SolverConfig {
    double burn_in = 1.0;        // time discarded per inner relaxation
    double sample_window = 1.0;  // time span pooled into the next iterate
    int snapshot_stride = 1;     // steps between pooled snapshots
    double tol = 1e-2;           // W_p convergence threshold on iterate gaps
    int max_outer = 10;
    double p = 2.0;
    SimConfig inner;             // dt, n_particles, seed, threads (t_end unused)
    int gap_atoms = 256;         // subsample size for exact W_p on large pools
    double divergence_factor = 1e6;
    bool common_inner_seed = false;  // reuse one inner seed across outer rounds
    std::optional<double> admissibility_q;  // optional per-iterate moment gate
    std::optional<double> admissibility_M;

    void validate() const;
};

enum class SolveStatus { converged, max_iterations, diverged };

const char* to_string(SolveStatus status);

struct IPMSolveState {
    std::vector<EmpiricalSegmentMeasure> iterates;  // nu_0, nu_1, ...
    std::vector<double> gaps;     // W_p(nu_{k+1}, nu_k), one fewer than iterates
    std::vector<double> moments;  // nu_k(||.||_inf^p)
    std::vector<bool> admissible; // filled iff the (q, M) gate is configured
    SolveStatus status = SolveStatus::max_iterations;
    double tol = 0.0;
    int gap_atoms = 0;

    const EmpiricalSegmentMeasure& final_law() const { return iterates.back(); }
};

/// One numerical selection from the frozen SDE's invariant set: relax from
/// initial law nu with the measure argument frozen at nu, discard burn_in,
/// then pool segment snapshots across time and particles.
EmpiricalSegmentMeasure frozen_stationary_law(const CoefficientModel& model,
                                              const EmpiricalSegmentMeasure& nu,
                                              const SolverConfig& cfg,
                                              std::uint64_t seed);

/// W_p between (possibly subsampled) empirical measures, the convergence
/// metric used between solver iterates. Pools larger than gap_atoms are
/// subsampled with the given seed; equal-size pools share the index draw so
/// that near-identical pools report near-zero gaps.
double solver_gap(const EmpiricalSegmentMeasure& a, const EmpiricalSegmentMeasure& b,
                  double p, int gap_atoms, std::uint64_t seed);

/// Fixed-point iteration nu_{k+1} = frozen_stationary_law(model, nu_k):
/// stops on gap <= tol (converged), k = max_outer (max-iterations) or when
/// the iterate moment exceeds divergence_factor * (1 + initial moment)
/// (diverged; reported as status, not an exception). Inner seeds derive
/// deterministically from (inner.seed, outer index).
IPMSolveState solve_ipm(const CoefficientModel& model,
                        const EmpiricalSegmentMeasure& nu0,
                        const SolverConfig& cfg);

/// mu(||.||_inf^q) <= M: the invariant-region diagnostic.
bool admissibility_gate(const EmpiricalSegmentMeasure& law, double q, double M);

struct StationarityReport {
    std::vector<double> times;
    std::vector<double> gaps;  // W_p(law at checkpoint, initial law)
    double max_gap = 0.0;
};

/// Evolve the full mean-field dynamics from `law` and report the W_p drift
/// away from it at the checkpoints; small gaps certify approximate
/// invariance under the coupled dynamics, not just the frozen ones.
StationarityReport stationarity_check(const CoefficientModel& model,
                                      const EmpiricalSegmentMeasure& law,
                                      double horizon,
                                      std::span<const double> checkpoints,
                                      const SolverConfig& cfg);

}  // namespace fmv
