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

#include "serialize.hpp"

#include <charconv>
#include <cmath>

namespace fmv {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json measure_to_json(const EmpiricalSegmentMeasure& mu) {
    Json atoms = Json::array();
    for (int i = 0; i < mu.n_atoms(); ++i) {
        const auto flat = mu.atom(i).flat();
        atoms.push_back(std::vector<double>(flat.begin(), flat.end()));
    }
    return Json{{"dt", mu.grid().dt},
                {"r0", mu.grid().r0},
                {"d", mu.dim()},
                {"atoms", atoms},
                {"weights", std::vector<double>(mu.weights().begin(),
                                                mu.weights().end())}};
}

namespace {

const Json& field(const Json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorCode::config,
            std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

EmpiricalSegmentMeasure measure_from_json(const Json& j) {
    const TimeGrid grid = TimeGrid::create(field(j, "r0").get<double>(),
                                           field(j, "dt").get<double>());
    const int dim = field(j, "d").get<int>();
    const Json& atoms = field(j, "atoms");
    require(atoms.is_array() && !atoms.empty(), ErrorCode::config,
            "measure: 'atoms' must be a nonempty array");
    std::vector<double> flat;
    flat.reserve(atoms.size() * static_cast<std::size_t>(grid.points()) * dim);
    for (const auto& atom : atoms) {
        const auto vals = atom.get<std::vector<double>>();
        require(vals.size() == static_cast<std::size_t>(grid.points()) * dim,
                ErrorCode::config,
                "measure: atom length must be (n_lag + 1) * d");
        flat.insert(flat.end(), vals.begin(), vals.end());
    }
    std::vector<double> weights;
    if (j.contains("weights") && !j.at("weights").is_null())
        weights = j.at("weights").get<std::vector<double>>();
    return EmpiricalSegmentMeasure(grid, dim, std::move(flat), std::move(weights));
}

Json constants_to_json(const StructuralConstants& c) {
    return Json{{"p", c.p},
                {"r0", c.r0},
                {"K", c.K},
                {"lambda", std::vector<double>(c.lambda.begin(), c.lambda.end())}};
}

StructuralConstants constants_from_json(const Json& j) {
    StructuralConstants c;
    c.p = field(j, "p").get<double>();
    c.r0 = field(j, "r0").get<double>();
    c.K = field(j, "K").get<double>();
    const auto lambda = field(j, "lambda").get<std::vector<double>>();
    require(lambda.size() == 6, ErrorCode::config,
            "constants: 'lambda' must have 6 entries (lambda0..lambda5)");
    std::copy(lambda.begin(), lambda.end(), c.lambda.begin());
    c.validate();
    return c;
}

Json point_to_json(const FeasibilityPoint& pt) {
    Json j{{"eps", pt.eps},
           {"alpha", pt.alpha},
           {"gamma1", pt.gamma1},
           {"gamma2", pt.gamma2}};
    if (pt.gamma3) j["gamma3"] = *pt.gamma3;
    return j;
}

FeasibilityPoint point_from_json(const Json& j) {
    FeasibilityPoint pt;
    pt.eps = field(j, "eps").get<double>();
    pt.alpha = field(j, "alpha").get<double>();
    pt.gamma1 = field(j, "gamma1").get<double>();
    pt.gamma2 = field(j, "gamma2").get<double>();
    if (j.contains("gamma3") && !j.at("gamma3").is_null())
        pt.gamma3 = j.at("gamma3").get<double>();
    pt.validate();
    return pt;
}

Json report_to_json(const FeasibilityReport& report) {
    Json j{{"point", point_to_json(report.point)},
           {"psi", report.psi},
           {"kappa1", report.kappa1},
           {"kappa2", report.kappa2},
           {"gap_A", report.gap_A},
           {"gap_U", report.gap_U},
           {"in_A", report.in_A},
           {"in_U", report.in_U}};
    if (report.point.gamma3) {
        j["kappa3"] = report.kappa3;
        j["phi"] = report.phi;
        j["theta"] = report.theta;
    }
    return j;
}

Json solve_state_to_json(const IPMSolveState& state) {
    Json j{{"status", to_string(state.status)},
           {"tol", state.tol},
           {"gap_atoms", state.gap_atoms},
           {"iterations", state.gaps.size()},
           {"gaps", state.gaps},
           {"moments", state.moments}};
    if (!state.admissible.empty()) {
        std::vector<bool> flags(state.admissible.begin(), state.admissible.end());
        j["admissible"] = flags;
    }
    return j;
}

namespace {

Json rows_to_json(const std::vector<BoundCheckRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows)
        arr.push_back(Json{{"t", row.t},
                           {"estimate", row.estimate},
                           {"std_error", row.std_error},
                           {"bound", row.bound},
                           {"violated", row.violated}});
    return arr;
}

}  // namespace

Json lemma21_to_json(const Lemma21Report& report) {
    return Json{{"wp", report.wp},
                {"growth_c", report.growth_c},
                {"rows", rows_to_json(report.rows)},
                {"any_violation", report.any_violation}};
}

Json lemma22_to_json(const Lemma22Report& report) {
    return Json{{"steady_term", report.bound.steady_term},
                {"transient_coeff", report.bound.transient_coeff},
                {"decay_rate", report.bound.decay_rate},
                {"nu_moment_p", report.nu_moment_p},
                {"mu_moment_p", report.mu_moment_p},
                {"rows", rows_to_json(report.rows)},
                {"any_violation", report.any_violation}};
}

Json stationarity_to_json(const StationarityReport& report) {
    return Json{{"times", report.times},
                {"gaps", report.gaps},
                {"max_gap", report.max_gap}};
}

Json probe_to_json(const ProbeReport& report) {
    return Json{{"max_drift_violation", report.max_drift_violation},
                {"max_diffusion_violation", report.max_diffusion_violation},
                {"n_samples", report.n_samples},
                {"consistent", report.consistent()}};
}

std::string moments_csv(const std::vector<MomentRow>& rows,
                        const std::optional<std::vector<double>>& bounds) {
    if (bounds)
        require(bounds->size() == rows.size(), ErrorCode::shape_mismatch,
                "moments_csv: bound column length mismatch");
    std::string out = "t,estimate,std_error,bound\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += format_double(rows[i].t);
        out += ',';
        out += format_double(rows[i].estimate);
        out += ',';
        out += format_double(rows[i].std_error);
        out += ',';
        if (bounds) out += format_double((*bounds)[i]);
        out += '\n';
    }
    return out;
}

std::string endpoints_csv(const EndpointSnapshot& snapshot) {
    std::string out = "particle";
    for (int k = 0; k < snapshot.dim; ++k)
        out += ",x" + std::to_string(k);
    out += '\n';
    for (int i = 0; i < snapshot.n_particles; ++i) {
        out += std::to_string(i);
        for (int k = 0; k < snapshot.dim; ++k) {
            out += ',';
            out += format_double(
                snapshot.values[static_cast<std::size_t>(i) * snapshot.dim + k]);
        }
        out += '\n';
    }
    return out;
}

std::string endpoint_histogram_csv(const EmpiricalSegmentMeasure& mu) {
    std::string out = "atom";
    for (int k = 0; k < mu.dim(); ++k) out += ",x" + std::to_string(k);
    out += ",weight\n";
    for (int i = 0; i < mu.n_atoms(); ++i) {
        out += std::to_string(i);
        const auto end = mu.atom(i).endpoint();
        for (int k = 0; k < mu.dim(); ++k) {
            out += ',';
            out += format_double(end[k]);
        }
        out += ',';
        out += format_double(mu.weight(i));
        out += '\n';
    }
    return out;
}

}  // namespace fmv
