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

#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "parallel.hpp"

namespace fmv {

void SimConfig::validate() const {
    require(std::isfinite(dt) && dt > 0.0, ErrorCode::invalid_argument,
            "SimConfig: dt must be > 0");
    require(std::isfinite(t_end) && t_end >= 0.0, ErrorCode::invalid_argument,
            "SimConfig: t_end must be >= 0");
    require(n_particles >= 1, ErrorCode::invalid_argument,
            "SimConfig: n_particles must be >= 1");
    require(record_stride >= 1, ErrorCode::invalid_argument,
            "SimConfig: record_stride must be >= 1");
    require(std::isfinite(moment_p) && moment_p >= 1.0, ErrorCode::invalid_argument,
            "SimConfig: moment_p must be >= 1");
    for (double t : snapshot_times)
        require(std::isfinite(t) && t >= 0.0 && t <= t_end + 1e-12,
                ErrorCode::invalid_argument,
                "SimConfig: snapshot times must lie in [0, t_end]");
}

ParticleEnsemble::ParticleEnsemble(CoefficientModel model,
                                   const EmpiricalSegmentMeasure& initial_law,
                                   const SimConfig& cfg)
    : model_(std::move(model)),
      grid_(TimeGrid::create(model_.constants().r0, cfg.dt)),
      dt_(cfg.dt),
      n_(cfg.n_particles),
      threads_(resolve_threads(cfg.threads)) {
    cfg.validate();
    require(same_grid(initial_law.grid(), grid_) && initial_law.dim() == model_.dim_d(),
            ErrorCode::shape_mismatch,
            "init_ensemble: initial law grid/dimension does not match the "
            "model (r0 = " + std::to_string(grid_.r0) + ", dt = " +
                std::to_string(dt_) + ", d = " + std::to_string(model_.dim_d()) + ")");
    streams_.reserve(n_);
    for (int i = 0; i < n_; ++i)
        streams_.emplace_back(rng::derive_stream(cfg.seed, static_cast<std::uint64_t>(i)));
    init_buffers(initial_law);
}

ParticleEnsemble::ParticleEnsemble(CoefficientModel model,
                                   const SegmentPath& initial_segment,
                                   const SimConfig& cfg)
    : ParticleEnsemble(std::move(model),
                       EmpiricalSegmentMeasure::single(initial_segment), cfg) {}

void ParticleEnsemble::init_buffers(const EmpiricalSegmentMeasure& law) {
    buffers_.reserve(n_);
    const std::size_t retain = static_cast<std::size_t>(grid_.points());
    for (int i = 0; i < n_; ++i) {
        int pick = 0;
        if (law.n_atoms() > 1) {
            // Weighted categorical draw from the particle's own stream.
            const double u = streams_[i].uniform01();
            double cum = 0.0;
            pick = law.n_atoms() - 1;
            for (int a = 0; a < law.n_atoms(); ++a) {
                cum += law.weight(a);
                if (u <= cum) {
                    pick = a;
                    break;
                }
            }
        }
        const SegmentView atom = law.atom(pick);
        buffers_.emplace_back(
            SegmentPath(grid_, law.dim(),
                        std::vector<double>(atom.flat().begin(), atom.flat().end())),
            retain);
    }
}

void ParticleEnsemble::advance(const EmpiricalSegmentMeasure& law) {
    const int d = model_.dim_d();
    const int m = model_.dim_m();
    const double sqrt_dt = std::sqrt(dt_);
    const std::int64_t step_index = step_;

    parallel_for(static_cast<std::size_t>(n_), threads_, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> b(d), diff(static_cast<std::size_t>(d) * m), z(m), x_new(d);
        for (std::size_t i = lo; i < hi; ++i) {
            TrajectoryBuffer& buf = buffers_[i];
            const SegmentView seg = buf.latest_view();
            model_.drift(seg, law, b);
            model_.diffusion(seg, law, diff);
            for (int j = 0; j < m; ++j) z[j] = streams_[i].normal();

            const auto x = seg.endpoint();
            bool finite = true;
            for (int k = 0; k < d; ++k) {
                double noise = 0.0;
                const double* row = diff.data() + static_cast<std::size_t>(k) * m;
                for (int j = 0; j < m; ++j) noise += row[j] * z[j];
                x_new[k] = x[k] + b[k] * dt_ + sqrt_dt * noise;
                finite = finite && std::isfinite(x_new[k]);
            }
            if (!finite)
                throw_error(ErrorCode::numerical_blowup,
                            "numerical blowup: non-finite state for particle " +
                                std::to_string(i) + " at step " +
                                std::to_string(step_index + 1));
            buf.append(x_new);
        }
    });
    ++step_;
}

void ParticleEnsemble::step_frozen(const EmpiricalSegmentMeasure& frozen) {
    require(same_grid(frozen.grid(), grid_) && frozen.dim() == model_.dim_d(),
            ErrorCode::shape_mismatch,
            "step_frozen: frozen measure grid/dimension mismatch");
    advance(frozen);
}

void ParticleEnsemble::step_mckean() {
    // The empirical law is assembled once per step; every particle then
    // advances against this snapshot.
    advance(empirical_law());
}

EmpiricalSegmentMeasure ParticleEnsemble::empirical_law() const {
    const std::size_t seg_len =
        static_cast<std::size_t>(grid_.points()) * model_.dim_d();
    std::vector<double> atoms(seg_len * static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        const auto flat = buffers_[i].latest_view().flat();
        std::copy(flat.begin(), flat.end(), atoms.begin() + seg_len * i);
    }
    return EmpiricalSegmentMeasure(grid_, model_.dim_d(), std::move(atoms));
}

void ParticleEnsemble::segment_norms_pow(double p, std::vector<double>& out) const {
    out.resize(n_);
    parallel_for(static_cast<std::size_t>(n_), threads_, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = std::pow(sup_norm(buffers_[i].latest_view()), p);
    });
}

namespace {

std::int64_t step_count(double t_end, double dt) {
    return static_cast<std::int64_t>(std::floor(t_end / dt + 1e-9));
}

std::int64_t time_to_step(double t, double dt, std::int64_t max_step,
                          const char* what) {
    const auto k = static_cast<std::int64_t>(std::llround(t / dt));
    require(k >= 0 && k <= max_step, ErrorCode::invalid_argument,
            std::string(what) + ": time " + std::to_string(t) +
                " outside the simulated horizon");
    return k;
}

MomentRow moment_row(const ParticleEnsemble& ens, double p,
                     std::vector<double>& scratch) {
    ens.segment_norms_pow(p, scratch);
    const auto n = static_cast<double>(scratch.size());
    double mean = 0.0;
    for (double v : scratch) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : scratch) var += (v - mean) * (v - mean);
    var = n > 1 ? var / (n - 1.0) : 0.0;
    return {ens.time(), mean, std::sqrt(var / n)};
}

EndpointSnapshot take_snapshot(const ParticleEnsemble& ens) {
    EndpointSnapshot snap;
    snap.t = ens.time();
    snap.n_particles = ens.n_particles();
    snap.dim = ens.model().dim_d();
    snap.values.reserve(static_cast<std::size_t>(snap.n_particles) * snap.dim);
    for (int i = 0; i < ens.n_particles(); ++i) {
        const auto x = ens.particle_state(i);
        snap.values.insert(snap.values.end(), x.begin(), x.end());
    }
    return snap;
}

}  // namespace

SimulationResult run(ParticleEnsemble& ensemble,
                     const std::optional<EmpiricalSegmentMeasure>& frozen,
                     const SimConfig& cfg) {
    cfg.validate();
    const std::int64_t steps = step_count(cfg.t_end, cfg.dt);
    std::set<std::int64_t> snapshot_steps;
    for (double t : cfg.snapshot_times)
        snapshot_steps.insert(time_to_step(t, cfg.dt, steps, "snapshot_times"));

    SimulationResult result;
    std::vector<double> scratch;
    result.moments.push_back(moment_row(ensemble, cfg.moment_p, scratch));
    if (snapshot_steps.count(0)) result.snapshots.push_back(take_snapshot(ensemble));

    for (std::int64_t k = 1; k <= steps; ++k) {
        if (frozen)
            ensemble.step_frozen(*frozen);
        else
            ensemble.step_mckean();
        if (k % cfg.record_stride == 0 || k == steps)
            result.moments.push_back(moment_row(ensemble, cfg.moment_p, scratch));
        if (snapshot_steps.count(k))
            result.snapshots.push_back(take_snapshot(ensemble));
    }
    result.final_law = ensemble.empirical_law();
    return result;
}

Lemma21Report verify_lemma21(const CoefficientModel& model,
                             const EmpiricalSegmentMeasure& mu,
                             const EmpiricalSegmentMeasure& nu1,
                             const EmpiricalSegmentMeasure& nu2,
                             const SimConfig& cfg, std::span<const double> times) {
    require(!times.empty(), ErrorCode::invalid_argument,
            "verify_lemma21: need at least one check time");
    const double p = model.constants().p;
    const double K = model.constants().K;

    Lemma21Report report;
    report.wp = wasserstein_p(nu1, nu2, p).distance;
    report.growth_c = 2.0 * (kChi * kChi + 1.0) * K * p * p;

    // Same seed on both ensembles: identical initial draws and identical
    // Gaussian increments (the lemma's synchronous coupling).
    ParticleEnsemble ens1(model, mu, cfg);
    ParticleEnsemble ens2(model, mu, cfg);

    std::int64_t max_step = 0;
    const std::int64_t horizon = step_count(cfg.t_end, cfg.dt);
    std::vector<std::int64_t> check_steps;
    for (double t : times) {
        check_steps.push_back(time_to_step(t, cfg.dt, horizon, "verify_lemma21"));
        max_step = std::max(max_step, check_steps.back());
    }

    const double wp_pow = std::pow(report.wp, p);
    auto record = [&](std::int64_t step) {
        const double t = static_cast<double>(step) * cfg.dt;
        std::vector<double> vals(ens1.n_particles());
        for (int i = 0; i < ens1.n_particles(); ++i)
            vals[i] = std::pow(
                sup_distance(ens1.particle_segment(i), ens2.particle_segment(i)), p);
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= vals.size();
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        var = vals.size() > 1 ? var / (vals.size() - 1.0) : 0.0;
        const double se = std::sqrt(var / vals.size());
        const double bound =
            report.growth_c * wp_pow * t * std::exp(report.growth_c * t);
        const bool violated = mean > bound + 3.0 * se;
        report.rows.push_back({t, mean, se, bound, violated});
        report.any_violation = report.any_violation || violated;
    };

    for (std::int64_t k = 0; k <= max_step; ++k) {
        if (std::find(check_steps.begin(), check_steps.end(), k) != check_steps.end())
            record(k);
        if (k < max_step) {
            ens1.step_frozen(nu1);
            ens2.step_frozen(nu2);
        }
    }
    return report;
}

Lemma22Report verify_lemma22(const CoefficientModel& model,
                             const FeasibilityPoint& pt,
                             const EmpiricalSegmentMeasure& mu,
                             const EmpiricalSegmentMeasure& nu,
                             const SimConfig& cfg, std::span<const double> times) {
    require(!times.empty(), ErrorCode::invalid_argument,
            "verify_lemma22: need at least one check time");
    const auto& constants = model.constants();
    Lemma22Report report;
    report.nu_moment_p = nu.moment(constants.p);
    report.mu_moment_p = mu.moment(constants.p);
    report.bound = make_moment_bound(constants, pt, report.nu_moment_p);

    ParticleEnsemble ens(model, mu, cfg);
    const std::int64_t horizon = step_count(cfg.t_end, cfg.dt);
    std::vector<std::int64_t> check_steps;
    std::int64_t max_step = 0;
    for (double t : times) {
        check_steps.push_back(time_to_step(t, cfg.dt, horizon, "verify_lemma22"));
        max_step = std::max(max_step, check_steps.back());
    }

    std::vector<double> scratch;
    auto record = [&](std::int64_t step) {
        const double t = static_cast<double>(step) * cfg.dt;
        const MomentRow row = moment_row(ens, constants.p, scratch);
        const double bound = report.bound.at(t, report.mu_moment_p);
        const bool violated = row.estimate > bound + 3.0 * row.std_error;
        report.rows.push_back({t, row.estimate, row.std_error, bound, violated});
        report.any_violation = report.any_violation || violated;
    };

    for (std::int64_t k = 0; k <= max_step; ++k) {
        if (std::find(check_steps.begin(), check_steps.end(), k) != check_steps.end())
            record(k);
        if (k < max_step) ens.step_frozen(nu);
    }
    return report;
}

}  // namespace fmv
