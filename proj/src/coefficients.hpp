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

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "measures.hpp"
#include "segments.hpp"

namespace fmv {

/// Declared structural constants of the dissipativity and one-sided
/// Lipschitz hypotheses: moment order p, delay r0, pairing constant K and
/// the lambda_0..lambda_5 channel coefficients. Declared by the model
/// author; spot-checked empirically, never proved.
struct StructuralConstants {
    double p = 2.0;
    double r0 = 0.0;
    double K = 1.0;
    std::array<double, 6> lambda{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};

    void validate() const;
};

/// Coefficient pair (b, sigma) on segment space x measure space. The drift
/// writes d values, the diffusion writes a d x m matrix (row-major) into the
/// caller's buffer. Both must be pure functions of their arguments.
class CoefficientModel {
public:
    using DriftFn = std::function<void(const SegmentView&,
                                       const EmpiricalSegmentMeasure&,
                                       std::span<double>)>;
    using DiffusionFn = std::function<void(const SegmentView&,
                                           const EmpiricalSegmentMeasure&,
                                           std::span<double>)>;

    CoefficientModel(std::string name, int dim_d, int dim_m,
                     StructuralConstants constants, DriftFn drift,
                     DiffusionFn diffusion);

    const std::string& name() const { return name_; }
    int dim_d() const { return dim_d_; }
    int dim_m() const { return dim_m_; }
    const StructuralConstants& constants() const { return constants_; }

    void drift(const SegmentView& xi, const EmpiricalSegmentMeasure& mu,
               std::span<double> out) const {
        drift_(xi, mu, out);
    }
    void diffusion(const SegmentView& xi, const EmpiricalSegmentMeasure& mu,
                   std::span<double> out) const {
        diffusion_(xi, mu, out);
    }

private:
    std::string name_;
    int dim_d_ = 1;
    int dim_m_ = 1;
    StructuralConstants constants_;
    DriftFn drift_;
    DiffusionFn diffusion_;
};

/// Builtin catalog. Parameter keys per model:
///   speed_measure: lambda1 > 0, sigma > 0                       (d = m = 1)
///   ou:            lambda1 > 0, sigma >= 0, optional d
///   delayed_linear: lambda1 > 0, c, sigma >= 0, r0 > 0, optional d
///   mean_field_ou: lambda1 > 0, c, sigma >= 0, optional r0, d
/// Common optional keys: p (>= 2, default 2), plus overrides K and
/// lambda0..lambda5 replacing the derived structural constants.
CoefficientModel builtin_model(const std::string& name,
                               const std::map<std::string, double>& params);

struct ProbeSample {
    SegmentPath segment;
    EmpiricalSegmentMeasure measure;
};

struct ProbeReport {
    double max_drift_violation = 0.0;      // max over samples of LHS - RHS, drift bound
    double max_diffusion_violation = 0.0;  // same for the diffusion bound
    int n_samples = 0;

    bool consistent() const {
        return max_drift_violation <= 0.0 && max_diffusion_violation <= 0.0;
    }
};

/// Falsification probe of the declared dissipativity constants on a sample
/// set: evaluates both sides of the drift/diffusion bounds. A nonpositive
/// violation means no counterexample was found, not a proof.
ProbeReport probe_h3(const CoefficientModel& model,
                     std::span<const ProbeSample> samples);

/// Convenience sampler for probe_h3: random segments and small random
/// measures with coordinates in [-coord_range, coord_range].
std::vector<ProbeSample> random_probe_samples(const TimeGrid& grid, int dim,
                                              int n_samples, double coord_range,
                                              std::uint64_t seed);

}  // namespace fmv
