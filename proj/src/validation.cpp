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

#include "validation.hpp"

#include <cmath>
#include <string>

namespace fmv {

void OracleValidationConfig::validate() const {
    sim.validate();
    require(std::isfinite(lambda1) && lambda1 > 0.0, ErrorCode::invalid_argument,
            "oracle validation: lambda1 must be > 0");
    require(std::isfinite(sigma) && sigma > 0.0, ErrorCode::invalid_argument,
            "oracle validation: sigma must be > 0");
    require(std::isfinite(p) && p >= 2.0, ErrorCode::invalid_argument,
            "oracle validation: p must be >= 2");
    require(pool_start >= 0.0 && pool_start <= sim.t_end,
            ErrorCode::invalid_argument,
            "oracle validation: pool_start must lie in [0, t_end]");
    require(pool_stride >= 1, ErrorCode::invalid_argument,
            "oracle validation: pool_stride must be >= 1");
    require(n_oracle_samples >= 1, ErrorCode::invalid_argument,
            "oracle validation: n_oracle_samples must be >= 1");
    require(w1_tol > 0.0 && moment_rel_tol > 0.0, ErrorCode::invalid_argument,
            "oracle validation: tolerances must be > 0");
}

OracleValidationReport validate_speed_measure_oracle(
    const OracleValidationConfig& cfg) {
    cfg.validate();
    const SpeedMeasureOracle oracle(cfg.lambda1, cfg.sigma);
    require(oracle.moment_finite(cfg.p), ErrorCode::domain,
            "oracle validation: the stationary p-th moment is infinite; "
            "requires lambda1 > (p-1) sigma^2 / 2 (lambda1 = " +
                std::to_string(cfg.lambda1) + ", sigma = " +
                std::to_string(cfg.sigma) + ", p = " + std::to_string(cfg.p) + ")");

    const CoefficientModel model = builtin_model(
        "speed_measure",
        {{"lambda1", cfg.lambda1}, {"sigma", cfg.sigma}, {"p", cfg.p}});

    const TimeGrid grid = TimeGrid::create(0.0, cfg.sim.dt);
    const auto delta0 = EmpiricalSegmentMeasure::delta0(grid, 1);
    ParticleEnsemble ens(model, delta0, cfg.sim);

    const auto steps =
        static_cast<std::int64_t>(std::floor(cfg.sim.t_end / cfg.sim.dt + 1e-9));
    const auto pool_from =
        static_cast<std::int64_t>(std::llround(cfg.pool_start / cfg.sim.dt));

    std::vector<double> pooled;
    auto collect = [&]() {
        for (int i = 0; i < ens.n_particles(); ++i)
            pooled.push_back(ens.particle_state(i)[0]);
    };
    if (pool_from == 0) collect();
    for (std::int64_t k = 1; k <= steps; ++k) {
        ens.step_frozen(delta0);
        if (k >= pool_from && (k - pool_from) % cfg.pool_stride == 0) collect();
    }
    require(!pooled.empty(), ErrorCode::config,
            "oracle validation: empty endpoint pool");

    OracleValidationReport report;
    report.n_pooled = pooled.size();
    report.n_oracle_samples = cfg.n_oracle_samples;
    report.w1_tol = cfg.w1_tol;
    report.moment_rel_tol = cfg.moment_rel_tol;

    double m2 = 0.0;
    for (double x : pooled) m2 += x * x;
    report.empirical_m2 = m2 / static_cast<double>(pooled.size());
    report.oracle_m2 = oracle.moment(2);
    report.moment_rel_error =
        std::abs(report.empirical_m2 - report.oracle_m2) / report.oracle_m2;

    const std::vector<double> samples =
        oracle.stratified_samples(cfg.n_oracle_samples);
    std::vector<std::pair<double, double>> emp, ora;
    emp.reserve(pooled.size());
    const double w_emp = 1.0 / static_cast<double>(pooled.size());
    for (double x : pooled) emp.emplace_back(x, w_emp);
    ora.reserve(samples.size());
    const double w_ora = 1.0 / static_cast<double>(samples.size());
    for (double x : samples) ora.emplace_back(x, w_ora);
    report.w1 = wasserstein_1d(emp, ora, 1.0);

    report.w1_ok = report.w1 <= cfg.w1_tol;
    report.moment_ok = report.moment_rel_error <= cfg.moment_rel_tol;
    return report;
}

}  // namespace fmv
