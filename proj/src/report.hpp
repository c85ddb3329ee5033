// Copyright 2026 The dfsnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scenario.hpp"

namespace dfsnet {

using Json = nlohmann::ordered_json;

// A finished run: the structured document plus the exit code the run earned
// (0 = success, 3 = an expectation or routing check failed). Validation
// problems are raised as errors instead and map to exit code 2.
struct RunReport {
    Json doc;
    int exit_code = 0;
};

struct RenderOptions {
    ReportFormat format = ReportFormat::Json;
    // The timestamp is the only non-deterministic report field; drop it to
    // get byte-identical output for a fixed seed.
    bool include_timestamp = true;
};

enum class SweepParameter { CpfPhaseError, PhotonLoss, DephasingSigma };

const char* sweep_parameter_name(SweepParameter p);
std::optional<SweepParameter> sweep_parameter_from_name(std::string_view name);

// Executes the scenario's protocol (or routing check) and reports herald
// statistics, fidelity against the ideal gate, photon budget, and timing.
// trials == 1 runs exact post-selected arithmetic; trials > 1 samples.
RunReport run_scenario_report(const Scenario& sc);

// Exact logical-basis truth table of the protocol's success branch.
RunReport truth_table_report(ScenarioProtocol protocol, int nodes);

// One row per grid value: (value, herald_rate, fidelity). The grid must be
// nonempty and monotone.
RunReport sweep_report(const Scenario& sc, SweepParameter parameter,
                       const std::vector<double>& grid);

// Routes a pulse through the scenario's optical table under the named
// schedule and (optionally) compares the visited elements with an expected
// path.
RunReport routing_check_report(const Scenario& sc);

// Wall-clock gate-duration estimate with the long-pulse regime check.
RunReport estimate_time_report(const Scenario& sc);

// Serializes the report. JSON is pretty-printed; CSV emits the natural table
// for sweeps and truth tables and flat key,value rows otherwise.
std::string render_report(const RunReport& report, const RenderOptions& opts);

}  // namespace dfsnet
