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

#include "simulator.hpp"
#include "speed_oracle.hpp"

namespace fmv {

struct OracleValidationConfig {
    double lambda1 = 1.0;
    double sigma = 1.0;
    double p = 2.0;  // moment order whose finiteness gates the run
    SimConfig sim;
    double pool_start = 0.0;  // endpoint pooling start time
    int pool_stride = 1;      // steps between pooled snapshots
    int n_oracle_samples = 10000;
    double w1_tol = 0.05;
    double moment_rel_tol = 0.05;

    void validate() const;
};

struct OracleValidationReport {
    double w1 = 0.0;              // W_1(pooled endpoint law, oracle samples)
    double empirical_m2 = 0.0;
    double oracle_m2 = 0.0;
    double moment_rel_error = 0.0;
    std::size_t n_pooled = 0;
    int n_oracle_samples = 0;
    double w1_tol = 0.0;
    double moment_rel_tol = 0.0;
    bool w1_ok = false;
    bool moment_ok = false;

    bool pass() const { return w1_ok && moment_ok; }
};

/// Long-horizon frozen run of the speed_measure model from delta_0, with the
/// endpoint law pooled over [pool_start, t_end] and compared against the
/// closed-form stationary density: W_1 against stratified inverse-CDF
/// samples, plus the relative error of the second moment. A configuration
/// whose p-th moment is infinite is rejected up front (domain error).
OracleValidationReport validate_speed_measure_oracle(
    const OracleValidationConfig& cfg);

}  // namespace fmv
