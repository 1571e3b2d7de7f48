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
#include <string>
#include <vector>

#include <json.hpp>

#include "coefficients.hpp"
#include "hypothesis.hpp"
#include "ipm.hpp"
#include "measures.hpp"
#include "simulator.hpp"

namespace fmv {

using Json = nlohmann::json;

/// Shortest representation that re-parses to the identical double.
std::string format_double(double v);

Json measure_to_json(const EmpiricalSegmentMeasure& mu);
EmpiricalSegmentMeasure measure_from_json(const Json& j);

Json constants_to_json(const StructuralConstants& c);
StructuralConstants constants_from_json(const Json& j);

Json point_to_json(const FeasibilityPoint& pt);
FeasibilityPoint point_from_json(const Json& j);

Json report_to_json(const FeasibilityReport& report);

Json solve_state_to_json(const IPMSolveState& state);
Json lemma21_to_json(const Lemma21Report& report);
Json lemma22_to_json(const Lemma22Report& report);
Json stationarity_to_json(const StationarityReport& report);
Json probe_to_json(const ProbeReport& report);

/// moments.csv: header t,estimate,std_error,bound; the bound column is
/// empty unless provided.
std::string moments_csv(const std::vector<MomentRow>& rows,
                        const std::optional<std::vector<double>>& bounds = {});

/// endpoints CSV: header particle,x0..x{d-1}, one row per particle.
std::string endpoints_csv(const EndpointSnapshot& snapshot);

/// One row per atom endpoint: atom,x0..x{d-1} (plotting input for iterate
/// histograms).
std::string endpoint_histogram_csv(const EmpiricalSegmentMeasure& mu);

}  // namespace fmv
