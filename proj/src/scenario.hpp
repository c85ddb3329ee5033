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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dfs.hpp"
#include "noise.hpp"
#include "protocols.hpp"

namespace dfsnet {

// Everything a run needs, parsed from a declarative scenario file.

enum class ScenarioProtocol {
    XGate,
    ZGate,
    Hadamard,
    CZ,
    CNOT,
    Swap,
    BellPrep,
    Teleport,
    RoutingCheck,
};

enum class ReportFormat { Json, Csv };

// Routing validation inputs: an optical table document, the switch schedule
// to drive it with, and (optionally) the element sequence the pulse must
// visit.
struct RoutingSpec {
    // "builtin:single_node", "builtin:two_node", or a table file path.
    std::string table = "builtin:single_node";
    std::string schedule;
    std::string expected;  // name of an expected path in the table; "" = none
    std::string entry;     // entry port; "" = the table's first entry
    double start_time = 0.0;
};

// Post-run thresholds; a violated expectation turns the run into an
// acceptance failure (exit code 3) without being an error.
struct Expectations {
    std::optional<double> min_fidelity;
    std::optional<double> min_herald;
    std::optional<double> max_herald;

    bool any() const { return min_fidelity || min_herald || max_herald; }
};

struct Scenario {
    int nodes = 1;
    ScenarioProtocol protocol = ScenarioProtocol::Hadamard;

    // Gate targets; which fields apply depends on the protocol:
    //   XGate/ZGate/Hadamard: node
    //   CNOT:                 control, target
    //   CZ/Swap/BellPrep:     node_i, node_j
    //   Teleport:             node_i, node_j, node_k
    int node = 0;
    int control = 0;
    int target = 1;
    int node_i = 0;
    int node_j = 1;
    int node_k = 2;

    CoeffMap input;  // empty = the all-zeros code word
    NoiseSpec noise;
    std::int64_t trials = 1;
    ReportFormat format = ReportFormat::Json;
    std::optional<ForcedBranch> force_branch;
    ExperimentalParams params;
    Expectations expect;
    std::optional<RoutingSpec> routing;
};

const char* scenario_protocol_name(ScenarioProtocol p);
std::optional<ScenarioProtocol> scenario_protocol_from_name(std::string_view name);

// Core protocol behind a scenario protocol; nullopt for RoutingCheck.
std::optional<Protocol> core_protocol(ScenarioProtocol p);

// Number of distinct nodes the protocol touches (RoutingCheck: 0).
int scenario_protocol_arity(ScenarioProtocol p);

const char* report_format_name(ReportFormat f);
std::optional<ReportFormat> report_format_from_name(std::string_view name);

// Parses and fully validates a scenario document. Parse errors carry
// line/column; validation errors name the offending field.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

// Serialization such that parse . serialize . parse is the identity.
std::string serialize_scenario(const Scenario& sc);

// Re-checks all invariants (node references, normalization, branch bits).
void validate_scenario(const Scenario& sc);

// The initial register state the scenario describes (input coefficients are
// renormalized exactly after the 1e-6 normalization check).
StateVector scenario_input_state(const Scenario& sc, const NetworkLayout& layout);

}  // namespace dfsnet
