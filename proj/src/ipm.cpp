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

#include "ipm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fmv {

namespace {
// Stream-id tags distinguishing the solver's seed derivations.
constexpr std::uint64_t kInnerTag = 0x1000;
constexpr std::uint64_t kGapTag = 0x2000;
constexpr std::uint64_t kStationarityTag = 0x3000;
}  // namespace

void SolverConfig::validate() const {
    inner.validate();
    require(std::isfinite(burn_in) && burn_in >= 0.0, ErrorCode::invalid_argument,
            "SolverConfig: burn_in must be >= 0");
    require(std::isfinite(sample_window) && sample_window >= 0.0,
            ErrorCode::invalid_argument, "SolverConfig: sample_window must be >= 0");
    require(snapshot_stride >= 1, ErrorCode::invalid_argument,
            "SolverConfig: snapshot_stride must be >= 1");
    require(std::isfinite(tol) && tol >= 0.0, ErrorCode::invalid_argument,
            "SolverConfig: tol must be >= 0");
    require(max_outer >= 1, ErrorCode::invalid_argument,
            "SolverConfig: max_outer must be >= 1");
    require(std::isfinite(p) && p >= 1.0, ErrorCode::invalid_argument,
            "SolverConfig: p must be >= 1");
    require(gap_atoms >= 1, ErrorCode::invalid_argument,
            "SolverConfig: gap_atoms must be >= 1");
    require(divergence_factor > 0.0, ErrorCode::invalid_argument,
            "SolverConfig: divergence_factor must be > 0");
    require(admissibility_q.has_value() == admissibility_M.has_value(),
            ErrorCode::invalid_argument,
            "SolverConfig: admissibility gate needs both q and M");
    if (admissibility_q) {
        require(*admissibility_q >= 2.0, ErrorCode::invalid_argument,
                "SolverConfig: admissibility q must be >= 2");
        require(*admissibility_M > 0.0, ErrorCode::invalid_argument,
                "SolverConfig: admissibility M must be > 0");
    }
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max-iterations";
        case SolveStatus::diverged: return "diverged";
    }
    return "unknown";
}

EmpiricalSegmentMeasure frozen_stationary_law(const CoefficientModel& model,
                                              const EmpiricalSegmentMeasure& nu,
                                              const SolverConfig& cfg,
                                              std::uint64_t seed) {
    cfg.validate();
    const double dt = cfg.inner.dt;
    const auto burn_steps =
        static_cast<std::int64_t>(std::floor(cfg.burn_in / dt + 1e-9));
    const auto window_steps =
        static_cast<std::int64_t>(std::floor(cfg.sample_window / dt + 1e-9));
    const std::int64_t n_snapshots = window_steps / cfg.snapshot_stride;
    require(n_snapshots >= 1, ErrorCode::config,
            "frozen_stationary_law: sample_window shorter than one snapshot "
            "stride, the pool would be empty");

    SimConfig inner = cfg.inner;
    inner.seed = seed;
    ParticleEnsemble ens(model, nu, inner);
    for (std::int64_t k = 0; k < burn_steps; ++k) ens.step_frozen(nu);

    const std::size_t seg_len =
        static_cast<std::size_t>(ens.grid().points()) * model.dim_d();
    std::vector<double> pool;
    pool.reserve(seg_len * static_cast<std::size_t>(ens.n_particles()) *
                 static_cast<std::size_t>(n_snapshots));
    for (std::int64_t j = 0; j < n_snapshots; ++j) {
        for (int s = 0; s < cfg.snapshot_stride; ++s) ens.step_frozen(nu);
        for (int i = 0; i < ens.n_particles(); ++i) {
            const auto flat = ens.particle_segment(i).flat();
            pool.insert(pool.end(), flat.begin(), flat.end());
        }
    }
    return EmpiricalSegmentMeasure(ens.grid(), model.dim_d(), std::move(pool));
}

double solver_gap(const EmpiricalSegmentMeasure& a, const EmpiricalSegmentMeasure& b,
                  double p, int gap_atoms, std::uint64_t seed) {
    const EmpiricalSegmentMeasure sa = a.subsample(gap_atoms, seed);
    const EmpiricalSegmentMeasure sb =
        b.subsample(gap_atoms, a.n_atoms() == b.n_atoms()
                                   ? seed
                                   : rng::derive_stream(seed, 1));
    return wasserstein_p(sa, sb, p).distance;
}

IPMSolveState solve_ipm(const CoefficientModel& model,
                        const EmpiricalSegmentMeasure& nu0,
                        const SolverConfig& cfg) {
    cfg.validate();
    IPMSolveState state;
    state.tol = cfg.tol;
    state.gap_atoms = cfg.gap_atoms;
    state.iterates.push_back(nu0);
    state.moments.push_back(nu0.moment(cfg.p));
    if (cfg.admissibility_q)
        state.admissible.push_back(admissibility_gate(nu0, *cfg.admissibility_q,
                                                      *cfg.admissibility_M));

    const double guard = cfg.divergence_factor * (1.0 + state.moments.front());
    state.status = SolveStatus::max_iterations;
    for (int k = 0; k < cfg.max_outer; ++k) {
        const std::uint64_t inner_seed =
            cfg.common_inner_seed
                ? rng::derive_stream(cfg.inner.seed, kInnerTag)
                : rng::derive_stream(cfg.inner.seed, kInnerTag,
                                     static_cast<std::uint64_t>(k));
        EmpiricalSegmentMeasure next =
            frozen_stationary_law(model, state.iterates.back(), cfg, inner_seed);
        const double gap =
            solver_gap(next, state.iterates.back(), cfg.p, cfg.gap_atoms,
                       rng::derive_stream(cfg.inner.seed, kGapTag,
                                          static_cast<std::uint64_t>(k)));
        state.iterates.push_back(std::move(next));
        state.gaps.push_back(gap);
        state.moments.push_back(state.iterates.back().moment(cfg.p));
        if (cfg.admissibility_q)
            state.admissible.push_back(admissibility_gate(
                state.iterates.back(), *cfg.admissibility_q, *cfg.admissibility_M));

        if (state.moments.back() > guard) {
            state.status = SolveStatus::diverged;
            break;
        }
        if (gap <= cfg.tol) {
            state.status = SolveStatus::converged;
            break;
        }
    }
    return state;
}

bool admissibility_gate(const EmpiricalSegmentMeasure& law, double q, double M) {
    require(std::isfinite(q) && q >= 2.0, ErrorCode::invalid_argument,
            "admissibility_gate: q must be >= 2");
    require(std::isfinite(M) && M > 0.0, ErrorCode::invalid_argument,
            "admissibility_gate: M must be > 0");
    return law.moment(q) <= M;
}

StationarityReport stationarity_check(const CoefficientModel& model,
                                      const EmpiricalSegmentMeasure& law,
                                      double horizon,
                                      std::span<const double> checkpoints,
                                      const SolverConfig& cfg) {
    cfg.validate();
    require(std::isfinite(horizon) && horizon > 0.0, ErrorCode::invalid_argument,
            "stationarity_check: horizon must be > 0");
    require(!checkpoints.empty(), ErrorCode::invalid_argument,
            "stationarity_check: need at least one checkpoint");

    SimConfig inner = cfg.inner;
    inner.seed = rng::derive_stream(cfg.inner.seed, kStationarityTag);
    ParticleEnsemble ens(model, law, inner);

    std::vector<std::int64_t> steps;
    std::int64_t max_step = 0;
    const auto horizon_steps =
        static_cast<std::int64_t>(std::floor(horizon / inner.dt + 1e-9));
    for (double t : checkpoints) {
        const auto k = static_cast<std::int64_t>(std::llround(t / inner.dt));
        require(k >= 1 && k <= horizon_steps, ErrorCode::invalid_argument,
                "stationarity_check: checkpoint " + std::to_string(t) +
                    " outside (0, horizon]");
        steps.push_back(k);
        max_step = std::max(max_step, k);
    }

    StationarityReport report;
    for (std::int64_t k = 1; k <= max_step; ++k) {
        ens.step_mckean();
        if (std::find(steps.begin(), steps.end(), k) != steps.end()) {
            const double gap = solver_gap(
                ens.empirical_law(), law, cfg.p, cfg.gap_atoms,
                rng::derive_stream(cfg.inner.seed, kStationarityTag,
                                   static_cast<std::uint64_t>(k)));
            report.times.push_back(static_cast<double>(k) * inner.dt);
            report.gaps.push_back(gap);
            report.max_gap = std::max(report.max_gap, gap);
        }
    }
    return report;
}

}  // namespace fmv
