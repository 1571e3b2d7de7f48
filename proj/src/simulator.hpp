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
#include <memory>
#include <optional>
#include <vector>

#include "coefficients.hpp"
#include "hypothesis.hpp"
#include "measures.hpp"
#include "rng.hpp"

namespace fmv {

struct SimConfig {
    double dt = 0.01;
    double t_end = 1.0;
    int n_particles = 1;
    std::uint64_t seed = 0;
    int threads = 0;          // 0 = hardware concurrency
    int record_stride = 1;    // steps between moment-series rows
    double moment_p = 2.0;    // order of the recorded E||X_t||_inf^p series
    std::vector<double> snapshot_times;

    void validate() const;
};

/// Euler-Maruyama particle system for the functional dynamics. Each particle
/// owns an independent Gaussian stream derived from (seed, particle index),
/// so trajectories are reproducible for any worker count and particle i's
/// path never depends on N. Frozen steps hold the measure argument fixed;
/// mean-field steps rebuild the ensemble's empirical segment law once per
/// step and advance every particle against it.
class ParticleEnsemble {
public:
    ParticleEnsemble(CoefficientModel model, const EmpiricalSegmentMeasure& initial_law,
                     const SimConfig& cfg);
    ParticleEnsemble(CoefficientModel model, const SegmentPath& initial_segment,
                     const SimConfig& cfg);

    const CoefficientModel& model() const { return model_; }
    const TimeGrid& grid() const { return grid_; }
    int n_particles() const { return n_; }
    std::int64_t current_step() const { return step_; }
    double time() const { return static_cast<double>(step_) * dt_; }

    void step_frozen(const EmpiricalSegmentMeasure& frozen);
    void step_mckean();

    SegmentView particle_segment(int i) const { return buffers_[i].latest_view(); }
    std::span<const double> particle_state(int i) const {
        return buffers_[i].latest_state();
    }

    /// Uniform empirical law of the current segments.
    EmpiricalSegmentMeasure empirical_law() const;

    /// Per-particle sup_norm(segment)^p, in particle order.
    void segment_norms_pow(double p, std::vector<double>& out) const;

private:
    void init_buffers(const EmpiricalSegmentMeasure& law);
    void advance(const EmpiricalSegmentMeasure& law);

    CoefficientModel model_;
    TimeGrid grid_;
    double dt_ = 0.0;
    int n_ = 0;
    int threads_ = 1;
    std::int64_t step_ = 0;
    std::vector<TrajectoryBuffer> buffers_;
    std::vector<rng::NormalStream> streams_;
};

struct MomentRow {
    double t = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
};

struct EndpointSnapshot {
    double t = 0.0;
    int n_particles = 0;
    int dim = 0;
    std::vector<double> values;  // n_particles x dim
};

struct SimulationResult {
    std::vector<MomentRow> moments;
    std::vector<EndpointSnapshot> snapshots;
    std::optional<EmpiricalSegmentMeasure> final_law;
};

enum class SimMode { frozen, mckean };

/// Advance floor(t_end/dt) steps and record the Monte Carlo moment series,
/// endpoint snapshots at the requested times, and the final segment law.
SimulationResult run(ParticleEnsemble& ensemble,
                     const std::optional<EmpiricalSegmentMeasure>& frozen,
                     const SimConfig& cfg);

struct BoundCheckRow {
    double t = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool violated = false;  // estimate > bound + 3 std errors
};

struct Lemma21Report {
    double wp = 0.0;        // W_p(nu1, nu2)
    double growth_c = 0.0;  // C = 2 (chi^2 + 1) K p^2
    std::vector<BoundCheckRow> rows;
    bool any_violation = false;
};

/// Synchronous-coupling check of the frozen-measure continuity bound:
/// two runs share initial draws and Brownian increments and differ only in
/// the frozen measure; E||X_t^{mu,nu1} - X_t^{mu,nu2}||_inf^p is compared
/// against C W_p(nu1, nu2)^p t e^{Ct} at each requested time.
Lemma21Report verify_lemma21(const CoefficientModel& model,
                             const EmpiricalSegmentMeasure& mu,
                             const EmpiricalSegmentMeasure& nu1,
                             const EmpiricalSegmentMeasure& nu2,
                             const SimConfig& cfg, std::span<const double> times);

struct Lemma22Report {
    MomentBound bound;
    double nu_moment_p = 0.0;
    double mu_moment_p = 0.0;
    std::vector<BoundCheckRow> rows;
    bool any_violation = false;
};

/// Frozen-run check of the explicit moment bound at a feasible point
/// (requires membership in U and phi < 0, otherwise a precondition error).
Lemma22Report verify_lemma22(const CoefficientModel& model,
                             const FeasibilityPoint& pt,
                             const EmpiricalSegmentMeasure& mu,
                             const EmpiricalSegmentMeasure& nu,
                             const SimConfig& cfg, std::span<const double> times);

}  // namespace fmv
