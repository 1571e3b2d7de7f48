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

#include "coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace fmv {

void StructuralConstants::validate() const {
    require(std::isfinite(p) && p >= 2.0, ErrorCode::invalid_argument,
            "StructuralConstants: p must be >= 2");
    require(std::isfinite(r0) && r0 >= 0.0, ErrorCode::invalid_argument,
            "StructuralConstants: r0 must be >= 0");
    require(std::isfinite(K) && K > 0.0, ErrorCode::invalid_argument,
            "StructuralConstants: K must be > 0");
    require(std::isfinite(lambda[1]) && lambda[1] > 0.0, ErrorCode::invalid_argument,
            "StructuralConstants: lambda1 must be > 0");
    for (int i : {0, 2, 3, 4, 5})
        require(std::isfinite(lambda[i]) && lambda[i] >= 0.0,
                ErrorCode::invalid_argument,
                "StructuralConstants: lambda" + std::to_string(i) +
                    " must be >= 0");
}

CoefficientModel::CoefficientModel(std::string name, int dim_d, int dim_m,
                                   StructuralConstants constants, DriftFn drift,
                                   DiffusionFn diffusion)
    : name_(std::move(name)),
      dim_d_(dim_d),
      dim_m_(dim_m),
      constants_(constants),
      drift_(std::move(drift)),
      diffusion_(std::move(diffusion)) {
    require(dim_d_ >= 1 && dim_m_ >= 1, ErrorCode::invalid_argument,
            "CoefficientModel: dimensions must be >= 1");
    constants_.validate();
}

namespace {

class Params {
public:
    Params(const std::string& model, const std::map<std::string, double>& kv)
        : model_(model), kv_(kv) {}

    double required(const std::string& key) const {
        auto it = kv_.find(key);
        require(it != kv_.end(), ErrorCode::invalid_argument,
                model_ + ": missing parameter '" + key + "'");
        used_.push_back(key);
        return it->second;
    }

    double optional(const std::string& key, double fallback) const {
        auto it = kv_.find(key);
        used_.push_back(key);
        return it == kv_.end() ? fallback : it->second;
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    void reject_unknown() const {
        for (const auto& [key, value] : kv_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw_error(ErrorCode::invalid_argument,
                            model_ + ": unknown parameter '" + key + "'");
        }
    }

private:
    std::string model_;
    const std::map<std::string, double>& kv_;
    mutable std::vector<std::string> used_;
};

void apply_overrides(const Params& p, StructuralConstants& c) {
    c.K = p.optional("K", c.K);
    for (int i = 0; i < 6; ++i)
        c.lambda[i] = p.optional("lambda" + std::to_string(i), c.lambda[i]);
}

// Constant diagonal diffusion sigma * I_{d x m}.
CoefficientModel::DiffusionFn constant_diffusion(int d, int m, double sigma) {
    return [d, m, sigma](const SegmentView&, const EmpiricalSegmentMeasure&,
                         std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (int i = 0; i < std::min(d, m); ++i)
            out[static_cast<std::size_t>(i) * m + i] = sigma;
    };
}

// Young split of the cross term 2 c <x, y> <= theta |x|^2 + (c^2/theta) |y|^2;
// theta = min(|c|, lambda1) keeps the dissipativity margin positive for any
// coupling strength.
double young_theta(double c, double lambda1) {
    return std::min(std::abs(c), lambda1);
}

CoefficientModel make_speed_measure(const Params& p) {
    const double lambda1 = p.required("lambda1");
    const double sigma = p.required("sigma");
    const double pp = p.optional("p", 2.0);
    require(lambda1 > 0.0, ErrorCode::invalid_argument,
            "speed_measure: lambda1 must be > 0");
    require(sigma > 0.0, ErrorCode::invalid_argument,
            "speed_measure: sigma must be > 0");

    StructuralConstants c;
    c.p = pp;
    c.r0 = 0.0;
    // 2<x, -lambda1 x> = -2 lambda1 |x|^2; sigma^2(x^2+1) <= sigma^2 + sigma^2 ||xi||^2.
    c.K = sigma * sigma;
    c.lambda = {sigma * sigma, 2.0 * lambda1, 0.0, 0.0, sigma * sigma, 0.0};
    apply_overrides(p, c);
    p.reject_unknown();

    auto drift = [lambda1](const SegmentView& xi, const EmpiricalSegmentMeasure&,
                           std::span<double> out) {
        out[0] = -lambda1 * xi.endpoint()[0];
    };
    auto diffusion = [sigma](const SegmentView& xi, const EmpiricalSegmentMeasure&,
                             std::span<double> out) {
        const double x = xi.endpoint()[0];
        out[0] = sigma * std::sqrt(x * x + 1.0);
    };
    return CoefficientModel("speed_measure", 1, 1, c, drift, diffusion);
}

CoefficientModel make_ou(const Params& p) {
    const double lambda1 = p.required("lambda1");
    const double sigma = p.required("sigma");
    const int d = static_cast<int>(p.optional("d", 1.0));
    const double pp = p.optional("p", 2.0);
    require(lambda1 > 0.0, ErrorCode::invalid_argument, "ou: lambda1 must be > 0");
    require(sigma >= 0.0, ErrorCode::invalid_argument, "ou: sigma must be >= 0");
    require(d >= 1, ErrorCode::invalid_argument, "ou: d must be >= 1");

    StructuralConstants c;
    c.p = pp;
    c.r0 = p.optional("r0", 0.0);
    c.K = 1.0;  // drift pairing has no positive part; any K > 0 is valid
    c.lambda = {sigma * sigma * d, 2.0 * lambda1, 0.0, 0.0, 0.0, 0.0};
    apply_overrides(p, c);
    p.reject_unknown();

    auto drift = [lambda1, d](const SegmentView& xi, const EmpiricalSegmentMeasure&,
                              std::span<double> out) {
        const auto x = xi.endpoint();
        for (int k = 0; k < d; ++k) out[k] = -lambda1 * x[k];
    };
    return CoefficientModel("ou", d, d, c, drift, constant_diffusion(d, d, sigma));
}

CoefficientModel make_delayed_linear(const Params& p) {
    const double lambda1 = p.required("lambda1");
    const double cpl = p.required("c");
    const double sigma = p.required("sigma");
    const double r0 = p.required("r0");
    const int d = static_cast<int>(p.optional("d", 1.0));
    const double pp = p.optional("p", 2.0);
    require(lambda1 > 0.0, ErrorCode::invalid_argument,
            "delayed_linear: lambda1 must be > 0");
    require(r0 > 0.0, ErrorCode::invalid_argument,
            "delayed_linear: r0 must be > 0");
    require(d >= 1 && sigma >= 0.0, ErrorCode::invalid_argument,
            "delayed_linear: need d >= 1 and sigma >= 0");

    StructuralConstants c;
    c.p = pp;
    c.r0 = r0;
    c.K = cpl == 0.0 ? 1.0 : std::abs(cpl);
    const double theta = young_theta(cpl, lambda1);
    c.lambda = {sigma * sigma * d,
                cpl == 0.0 ? 2.0 * lambda1 : 2.0 * lambda1 - theta,
                cpl == 0.0 ? 0.0 : cpl * cpl / theta,
                0.0, 0.0, 0.0};
    apply_overrides(p, c);
    p.reject_unknown();

    auto drift = [lambda1, cpl, d](const SegmentView& xi,
                                   const EmpiricalSegmentMeasure&,
                                   std::span<double> out) {
        const auto x = xi.endpoint();
        const auto lagged = xi.oldest();
        for (int k = 0; k < d; ++k) out[k] = -lambda1 * x[k] + cpl * lagged[k];
    };
    return CoefficientModel("delayed_linear", d, d, c,
                            drift, constant_diffusion(d, d, sigma));
}

CoefficientModel make_mean_field_ou(const Params& p) {
    const double lambda1 = p.required("lambda1");
    const double cpl = p.required("c");
    const double sigma = p.required("sigma");
    const int d = static_cast<int>(p.optional("d", 1.0));
    const double pp = p.optional("p", 2.0);
    require(lambda1 > 0.0, ErrorCode::invalid_argument,
            "mean_field_ou: lambda1 must be > 0");
    require(d >= 1 && sigma >= 0.0, ErrorCode::invalid_argument,
            "mean_field_ou: need d >= 1 and sigma >= 0");

    StructuralConstants c;
    c.p = pp;
    c.r0 = p.optional("r0", 0.0);
    c.K = cpl == 0.0 ? 1.0 : std::abs(cpl);
    const double theta = young_theta(cpl, lambda1);
    c.lambda = {sigma * sigma * d,
                cpl == 0.0 ? 2.0 * lambda1 : 2.0 * lambda1 - theta,
                0.0,
                cpl == 0.0 ? 0.0 : cpl * cpl / theta,
                0.0, 0.0};
    apply_overrides(p, c);
    p.reject_unknown();

    auto drift = [lambda1, cpl, d](const SegmentView& xi,
                                   const EmpiricalSegmentMeasure& mu,
                                   std::span<double> out) {
        const auto x = xi.endpoint();
        for (int k = 0; k < d; ++k) out[k] = -lambda1 * x[k];
        if (cpl != 0.0) {
            const auto mean = mu.endpoint_mean();
            for (int k = 0; k < d; ++k) out[k] += cpl * mean[k];
        }
    };
    return CoefficientModel("mean_field_ou", d, d, c,
                            drift, constant_diffusion(d, d, sigma));
}

}  // namespace

CoefficientModel builtin_model(const std::string& name,
                               const std::map<std::string, double>& params) {
    const Params p(name, params);
    if (name == "speed_measure") return make_speed_measure(p);
    if (name == "ou") return make_ou(p);
    if (name == "delayed_linear") return make_delayed_linear(p);
    if (name == "mean_field_ou") return make_mean_field_ou(p);
    throw_error(ErrorCode::invalid_argument,
                "builtin_model: unknown model '" + name +
                    "' (expected speed_measure | ou | delayed_linear | "
                    "mean_field_ou)");
}

ProbeReport probe_h3(const CoefficientModel& model,
                     std::span<const ProbeSample> samples) {
    require(!samples.empty(), ErrorCode::invalid_argument,
            "probe_h3: sample set must be nonempty");
    const auto& c = model.constants();
    const int d = model.dim_d();
    const int m = model.dim_m();
    std::vector<double> b(d);
    std::vector<double> s(static_cast<std::size_t>(d) * m);

    ProbeReport report;
    report.n_samples = static_cast<int>(samples.size());
    report.max_drift_violation = -std::numeric_limits<double>::infinity();
    report.max_diffusion_violation = -std::numeric_limits<double>::infinity();
    for (const auto& sample : samples) {
        const SegmentView xi = sample.segment.view();
        model.drift(xi, sample.measure, b);
        model.diffusion(xi, sample.measure, s);

        const auto x0 = xi.endpoint();
        double pairing = 0.0, x0_sq = 0.0;
        for (int k = 0; k < d; ++k) {
            pairing += x0[k] * b[k];
            x0_sq += x0[k] * x0[k];
        }
        double hs_sq = 0.0;
        for (double v : s) hs_sq += v * v;

        const double seg_sq = sup_norm(xi) * sup_norm(xi);
        const double w_sq =
            std::pow(sample.measure.wp_to_delta0(c.p), 2.0);

        const double drift_rhs = c.lambda[0] - c.lambda[1] * x0_sq +
                                 c.lambda[2] * seg_sq + c.lambda[3] * w_sq;
        const double diff_rhs =
            c.lambda[0] + c.lambda[4] * seg_sq + c.lambda[5] * w_sq;

        report.max_drift_violation =
            std::max(report.max_drift_violation, 2.0 * pairing - drift_rhs);
        report.max_diffusion_violation =
            std::max(report.max_diffusion_violation, hs_sq - diff_rhs);
    }
    return report;
}

std::vector<ProbeSample> random_probe_samples(const TimeGrid& grid, int dim,
                                              int n_samples, double coord_range,
                                              std::uint64_t seed) {
    require(n_samples >= 1, ErrorCode::invalid_argument,
            "random_probe_samples: need n_samples >= 1");
    std::vector<ProbeSample> out;
    out.reserve(n_samples);
    rng::Xoshiro256pp gen(rng::derive_stream(seed, 0x9a3eULL));
    auto coord = [&]() {
        return coord_range * (2.0 * gen.uniform01() - 1.0);
    };
    const std::size_t seg_len =
        static_cast<std::size_t>(grid.points()) * static_cast<std::size_t>(dim);
    for (int s = 0; s < n_samples; ++s) {
        std::vector<double> seg(seg_len);
        for (double& v : seg) v = coord();
        const int n_atoms = 1 + static_cast<int>(gen.next() % 4);
        std::vector<double> atoms(seg_len * n_atoms);
        for (double& v : atoms) v = coord();
        out.push_back(ProbeSample{
            SegmentPath(grid, dim, std::move(seg)),
            EmpiricalSegmentMeasure(grid, dim, std::move(atoms))});
    }
    return out;
}

}  // namespace fmv
