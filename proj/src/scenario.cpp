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

#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "config.hpp"
#include "error.hpp"

namespace dfsnet {

namespace {

constexpr double kInputNormTol = 1e-6;

[[noreturn]] void fail_field(const std::string& field, const std::string& message) {
    throw_validation(field + ": " + message);
}

DephasingKind dephasing_from_name(const ConfigNode& node, const std::string& name) {
    if (name == "off") return DephasingKind::Off;
    if (name == "uniform") return DephasingKind::Uniform;
    if (name == "gaussian") return DephasingKind::Gaussian;
    node.fail("dephasing must be off, uniform, or gaussian");
}

const char* dephasing_name(DephasingKind k) {
    switch (k) {
        case DephasingKind::Off:
            return "off";
        case DephasingKind::Uniform:
            return "uniform";
        case DephasingKind::Gaussian:
            return "gaussian";
    }
    return "?";
}

DephasingScope scope_from_name(const ConfigNode& node, const std::string& name) {
    if (name == "per_node") return DephasingScope::PerNode;
    if (name == "global") return DephasingScope::Global;
    node.fail("scope must be per_node or global");
}

const char* scope_name(DephasingScope s) {
    return s == DephasingScope::PerNode ? "per_node" : "global";
}

DephasingEpoch epoch_from_name(const ConfigNode& node, const std::string& name) {
    if (name == "before") return DephasingEpoch::Before;
    if (name == "between") return DephasingEpoch::Between;
    if (name == "both") return DephasingEpoch::Both;
    node.fail("epoch must be before, between, or both");
}

const char* epoch_name(DephasingEpoch e) {
    switch (e) {
        case DephasingEpoch::Before:
            return "before";
        case DephasingEpoch::Between:
            return "between";
        case DephasingEpoch::Both:
            return "both";
    }
    return "?";
}

void expect_values(const ConfigNode& node, std::size_t n) {
    if (node.value_count() != n) {
        node.fail("expected " + std::to_string(n) + " value(s) for '" + node.key + "'");
    }
}

double scalar_double(const ConfigNode& node) {
    expect_values(node, 1);
    return node.value_as_double(0);
}

std::string scalar_string(const ConfigNode& node) {
    expect_values(node, 1);
    return node.value(0);
}

int scalar_node_index(const ConfigNode& node) {
    expect_values(node, 1);
    const std::int64_t v = node.value_as_int(0);
    if (v < 0 || v >= kMaxNodes) node.fail("node index out of range");
    return static_cast<int>(v);
}

void parse_gate_block(const ConfigNode& block, Scenario& sc) {
    for (const ConfigNode& c : block.children) {
        if (c.key == "node") {
            sc.node = scalar_node_index(c);
        } else if (c.key == "control") {
            sc.control = scalar_node_index(c);
        } else if (c.key == "target") {
            sc.target = scalar_node_index(c);
        } else if (c.key == "node_i") {
            sc.node_i = scalar_node_index(c);
        } else if (c.key == "node_j") {
            sc.node_j = scalar_node_index(c);
        } else if (c.key == "node_k") {
            sc.node_k = scalar_node_index(c);
        } else {
            c.fail("unknown gate key '" + c.key + "'");
        }
    }
}

void parse_input_block(const ConfigNode& block, Scenario& sc) {
    for (const ConfigNode& c : block.children) {
        if (c.key != "amp") c.fail("unknown input key '" + c.key + "'");
        expect_values(c, 2);
        const std::string& bits = c.value(0);
        if (sc.input.count(bits) != 0) c.fail("duplicate amplitude for '" + bits + "'");
        sc.input[bits] = c.value_as_complex(1);
    }
}

void parse_noise_block(const ConfigNode& block, Scenario& sc) {
    for (const ConfigNode& c : block.children) {
        if (c.key == "dephasing") {
            sc.noise.dephasing = dephasing_from_name(c, scalar_string(c));
        } else if (c.key == "sigma") {
            sc.noise.dephasing_sigma = scalar_double(c);
        } else if (c.key == "scope") {
            sc.noise.scope = scope_from_name(c, scalar_string(c));
        } else if (c.key == "epoch") {
            sc.noise.epoch = epoch_from_name(c, scalar_string(c));
        } else if (c.key == "loss_reflection") {
            sc.noise.loss_reflection = scalar_double(c);
        } else if (c.key == "loss_hop") {
            sc.noise.loss_hop = scalar_double(c);
        } else if (c.key == "cpf_phase_error") {
            sc.noise.cpf_phase_error = scalar_double(c);
        } else {
            c.fail("unknown noise key '" + c.key + "'");
        }
    }
}

void parse_params_block(const ConfigNode& block, Scenario& sc) {
    for (const ConfigNode& c : block.children) {
        if (c.key == "kappa_mhz") {
            sc.params.kappa_mhz = scalar_double(c);
        } else if (c.key == "g_mhz") {
            sc.params.g_mhz = scalar_double(c);
        } else if (c.key == "gamma_mhz") {
            sc.params.gamma_mhz = scalar_double(c);
        } else if (c.key == "t_us") {
            sc.params.t_us = scalar_double(c);
        } else {
            c.fail("unknown params key '" + c.key + "'");
        }
    }
}

void parse_expect_block(const ConfigNode& block, Scenario& sc) {
    for (const ConfigNode& c : block.children) {
        if (c.key == "min_fidelity") {
            sc.expect.min_fidelity = scalar_double(c);
        } else if (c.key == "min_herald") {
            sc.expect.min_herald = scalar_double(c);
        } else if (c.key == "max_herald") {
            sc.expect.max_herald = scalar_double(c);
        } else {
            c.fail("unknown expect key '" + c.key + "'");
        }
    }
}

void parse_routing_block(const ConfigNode& block, Scenario& sc) {
    RoutingSpec spec;
    for (const ConfigNode& c : block.children) {
        if (c.key == "table") {
            spec.table = scalar_string(c);
        } else if (c.key == "schedule") {
            spec.schedule = scalar_string(c);
        } else if (c.key == "expected") {
            spec.expected = scalar_string(c);
        } else if (c.key == "entry") {
            spec.entry = scalar_string(c);
        } else if (c.key == "start_time") {
            spec.start_time = scalar_double(c);
        } else {
            c.fail("unknown routing key '" + c.key + "'");
        }
    }
    sc.routing = std::move(spec);
}

ConfigNode leaf(std::string key, std::vector<std::string> values) {
    ConfigNode n;
    n.key = std::move(key);
    n.values = std::move(values);
    return n;
}

bool noise_is_default(const NoiseSpec& n) {
    return n.dephasing == DephasingKind::Off && n.dephasing_sigma == 0.0 &&
           n.scope == DephasingScope::PerNode && n.epoch == DephasingEpoch::Between &&
           n.loss_reflection == 0.0 && n.loss_hop == 0.0 && n.cpf_phase_error == 0.0;
}

bool params_is_default(const ExperimentalParams& p) {
    const ExperimentalParams d;
    return p.kappa_mhz == d.kappa_mhz && p.g_mhz == d.g_mhz &&
           p.gamma_mhz == d.gamma_mhz && p.t_us == d.t_us;
}

}  // namespace

const char* scenario_protocol_name(ScenarioProtocol p) {
    switch (p) {
        case ScenarioProtocol::XGate:
            return "x";
        case ScenarioProtocol::ZGate:
            return "z";
        case ScenarioProtocol::Hadamard:
            return "hadamard";
        case ScenarioProtocol::CZ:
            return "cz";
        case ScenarioProtocol::CNOT:
            return "cnot";
        case ScenarioProtocol::Swap:
            return "swap";
        case ScenarioProtocol::BellPrep:
            return "bell_prep";
        case ScenarioProtocol::Teleport:
            return "teleport";
        case ScenarioProtocol::RoutingCheck:
            return "routing_check";
    }
    return "?";
}

std::optional<ScenarioProtocol> scenario_protocol_from_name(std::string_view name) {
    if (name == "x" || name == "xgate") return ScenarioProtocol::XGate;
    if (name == "z" || name == "zgate") return ScenarioProtocol::ZGate;
    if (name == "hadamard" || name == "h") return ScenarioProtocol::Hadamard;
    if (name == "cz") return ScenarioProtocol::CZ;
    if (name == "cnot") return ScenarioProtocol::CNOT;
    if (name == "swap") return ScenarioProtocol::Swap;
    if (name == "bell_prep" || name == "bellprep") return ScenarioProtocol::BellPrep;
    if (name == "teleport") return ScenarioProtocol::Teleport;
    if (name == "routing_check" || name == "routing-check") {
        return ScenarioProtocol::RoutingCheck;
    }
    return std::nullopt;
}

std::optional<Protocol> core_protocol(ScenarioProtocol p) {
    switch (p) {
        case ScenarioProtocol::XGate:
            return Protocol::XGate;
        case ScenarioProtocol::ZGate:
            return Protocol::ZGate;
        case ScenarioProtocol::Hadamard:
            return Protocol::Hadamard;
        case ScenarioProtocol::CZ:
            return Protocol::CZ;
        case ScenarioProtocol::CNOT:
            return Protocol::CNOT;
        case ScenarioProtocol::Swap:
            return Protocol::Swap;
        case ScenarioProtocol::BellPrep:
            return Protocol::BellPrep;
        case ScenarioProtocol::Teleport:
            return Protocol::Teleport;
        case ScenarioProtocol::RoutingCheck:
            return std::nullopt;
    }
    return std::nullopt;
}

int scenario_protocol_arity(ScenarioProtocol p) {
    switch (p) {
        case ScenarioProtocol::XGate:
        case ScenarioProtocol::ZGate:
        case ScenarioProtocol::Hadamard:
            return 1;
        case ScenarioProtocol::CZ:
        case ScenarioProtocol::CNOT:
        case ScenarioProtocol::Swap:
        case ScenarioProtocol::BellPrep:
            return 2;
        case ScenarioProtocol::Teleport:
            return 3;
        case ScenarioProtocol::RoutingCheck:
            return 0;
    }
    return 0;
}

const char* report_format_name(ReportFormat f) {
    return f == ReportFormat::Json ? "json" : "csv";
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    return std::nullopt;
}

Scenario parse_scenario(std::string_view text) {
    const ConfigNode root = parse_config(text);
    Scenario sc;
    bool saw_protocol = false;
    for (const ConfigNode& c : root.children) {
        if (c.key == "protocol") {
            const std::string name = scalar_string(c);
            const auto p = scenario_protocol_from_name(name);
            if (!p) c.fail("unknown protocol '" + name + "'");
            sc.protocol = *p;
            saw_protocol = true;
        } else if (c.key == "nodes") {
            expect_values(c, 1);
            const std::int64_t n = c.value_as_int(0);
            if (n < 1 || n > kMaxNodes) {
                c.fail("nodes must be between 1 and " + std::to_string(kMaxNodes));
            }
            sc.nodes = static_cast<int>(n);
        } else if (c.key == "seed") {
            expect_values(c, 1);
            sc.noise.seed = c.value_as_uint(0);
        } else if (c.key == "trials") {
            expect_values(c, 1);
            sc.trials = c.value_as_int(0);
        } else if (c.key == "format") {
            const std::string name = scalar_string(c);
            const auto f = report_format_from_name(name);
            if (!f) c.fail("format must be json or csv");
            sc.format = *f;
        } else if (c.key == "gate") {
            parse_gate_block(c, sc);
        } else if (c.key == "input") {
            parse_input_block(c, sc);
        } else if (c.key == "noise") {
            parse_noise_block(c, sc);
        } else if (c.key == "params") {
            parse_params_block(c, sc);
        } else if (c.key == "expect") {
            parse_expect_block(c, sc);
        } else if (c.key == "force_branch") {
            expect_values(c, 2);
            ForcedBranch fb;
            fb.m_i = static_cast<int>(c.value_as_int(0));
            fb.m_j = static_cast<int>(c.value_as_int(1));
            sc.force_branch = fb;
        } else if (c.key == "routing") {
            parse_routing_block(c, sc);
        } else {
            c.fail("unknown scenario key '" + c.key + "'");
        }
    }
    if (!saw_protocol) throw_validation("protocol: missing required key");
    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::validation, path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void validate_scenario(const Scenario& sc) {
    if (sc.nodes < 1 || sc.nodes > kMaxNodes) {
        fail_field("nodes", "must be between 1 and " + std::to_string(kMaxNodes));
    }
    if (sc.trials < 1 || sc.trials > 100000000) {
        fail_field("trials", "must be between 1 and 1e8");
    }
    sc.noise.validate();
    sc.params.validate();

    auto check_node = [&](const char* field, int value) {
        if (value < 0 || value >= sc.nodes) {
            fail_field(field, "node index out of range for " +
                                  std::to_string(sc.nodes) + " node(s)");
        }
    };
    auto check_distinct = [&](const char* fa, int a, const char* fb, int b) {
        if (a == b) {
            fail_field(std::string(fa) + "/" + fb, "must name distinct nodes");
        }
    };

    switch (sc.protocol) {
        case ScenarioProtocol::XGate:
        case ScenarioProtocol::ZGate:
        case ScenarioProtocol::Hadamard:
            check_node("gate.node", sc.node);
            break;
        case ScenarioProtocol::CNOT:
            check_node("gate.control", sc.control);
            check_node("gate.target", sc.target);
            check_distinct("gate.control", sc.control, "gate.target", sc.target);
            break;
        case ScenarioProtocol::CZ:
        case ScenarioProtocol::Swap:
        case ScenarioProtocol::BellPrep:
            check_node("gate.node_i", sc.node_i);
            check_node("gate.node_j", sc.node_j);
            check_distinct("gate.node_i", sc.node_i, "gate.node_j", sc.node_j);
            break;
        case ScenarioProtocol::Teleport:
            check_node("gate.node_i", sc.node_i);
            check_node("gate.node_j", sc.node_j);
            check_node("gate.node_k", sc.node_k);
            check_distinct("gate.node_i", sc.node_i, "gate.node_j", sc.node_j);
            check_distinct("gate.node_j", sc.node_j, "gate.node_k", sc.node_k);
            check_distinct("gate.node_i", sc.node_i, "gate.node_k", sc.node_k);
            break;
        case ScenarioProtocol::RoutingCheck:
            if (!sc.routing) {
                fail_field("routing", "routing_check requires a routing block");
            }
            break;
    }
    if (sc.routing && sc.protocol != ScenarioProtocol::RoutingCheck) {
        fail_field("routing", "only valid with protocol routing_check");
    }
    if (sc.force_branch) {
        if (sc.protocol != ScenarioProtocol::Teleport) {
            fail_field("force_branch", "only valid with protocol teleport");
        }
        if ((sc.force_branch->m_i != 0 && sc.force_branch->m_i != 1) ||
            (sc.force_branch->m_j != 0 && sc.force_branch->m_j != 1)) {
            fail_field("force_branch", "outcomes must be 0 or 1");
        }
    }

    if (!sc.input.empty()) {
        double norm = 0.0;
        for (const auto& [bits, amp] : sc.input) {
            if (bits.size() != static_cast<std::size_t>(sc.nodes)) {
                fail_field("input.amp",
                           "'" + bits + "' must have one bit per node (" +
                               std::to_string(sc.nodes) + ")");
            }
            for (char b : bits) {
                if (b != '0' && b != '1') {
                    fail_field("input.amp", "'" + bits + "' must be a bitstring");
                }
            }
            norm += std::norm(amp);
        }
        if (std::abs(norm - 1.0) > kInputNormTol) {
            fail_field("input", "coefficients must be normalized within 1e-6");
        }
    }
    if (sc.routing) {
        if (sc.routing->schedule.empty()) {
            fail_field("routing.schedule", "missing schedule name");
        }
        if (!std::isfinite(sc.routing->start_time) || sc.routing->start_time < 0.0) {
            fail_field("routing.start_time", "must be a finite nonnegative time");
        }
    }
}

std::string serialize_scenario(const Scenario& sc) {
    ConfigNode root;
    auto add = [&root](ConfigNode n) { root.children.push_back(std::move(n)); };

    add(leaf("protocol", {scenario_protocol_name(sc.protocol)}));
    add(leaf("nodes", {std::to_string(sc.nodes)}));
    add(leaf("seed", {std::to_string(sc.noise.seed)}));
    add(leaf("trials", {std::to_string(sc.trials)}));
    add(leaf("format", {report_format_name(sc.format)}));

    ConfigNode gate;
    gate.key = "gate";
    switch (sc.protocol) {
        case ScenarioProtocol::XGate:
        case ScenarioProtocol::ZGate:
        case ScenarioProtocol::Hadamard:
            gate.children.push_back(leaf("node", {std::to_string(sc.node)}));
            break;
        case ScenarioProtocol::CNOT:
            gate.children.push_back(leaf("control", {std::to_string(sc.control)}));
            gate.children.push_back(leaf("target", {std::to_string(sc.target)}));
            break;
        case ScenarioProtocol::CZ:
        case ScenarioProtocol::Swap:
        case ScenarioProtocol::BellPrep:
            gate.children.push_back(leaf("node_i", {std::to_string(sc.node_i)}));
            gate.children.push_back(leaf("node_j", {std::to_string(sc.node_j)}));
            break;
        case ScenarioProtocol::Teleport:
            gate.children.push_back(leaf("node_i", {std::to_string(sc.node_i)}));
            gate.children.push_back(leaf("node_j", {std::to_string(sc.node_j)}));
            gate.children.push_back(leaf("node_k", {std::to_string(sc.node_k)}));
            break;
        case ScenarioProtocol::RoutingCheck:
            break;
    }
    if (!gate.children.empty()) add(std::move(gate));

    if (!sc.input.empty()) {
        ConfigNode input;
        input.key = "input";
        for (const auto& [bits, amp] : sc.input) {
            input.children.push_back(leaf("amp", {bits, format_complex(amp, 12)}));
        }
        add(std::move(input));
    }

    if (!noise_is_default(sc.noise)) {
        ConfigNode noise;
        noise.key = "noise";
        noise.children.push_back(leaf("dephasing", {dephasing_name(sc.noise.dephasing)}));
        noise.children.push_back(leaf("sigma", {format_double(sc.noise.dephasing_sigma)}));
        noise.children.push_back(leaf("scope", {scope_name(sc.noise.scope)}));
        noise.children.push_back(leaf("epoch", {epoch_name(sc.noise.epoch)}));
        noise.children.push_back(
            leaf("loss_reflection", {format_double(sc.noise.loss_reflection)}));
        noise.children.push_back(leaf("loss_hop", {format_double(sc.noise.loss_hop)}));
        noise.children.push_back(
            leaf("cpf_phase_error", {format_double(sc.noise.cpf_phase_error)}));
        add(std::move(noise));
    }

    if (!params_is_default(sc.params)) {
        ConfigNode params;
        params.key = "params";
        params.children.push_back(leaf("kappa_mhz", {format_double(sc.params.kappa_mhz)}));
        params.children.push_back(leaf("g_mhz", {format_double(sc.params.g_mhz)}));
        params.children.push_back(leaf("gamma_mhz", {format_double(sc.params.gamma_mhz)}));
        params.children.push_back(leaf("t_us", {format_double(sc.params.t_us)}));
        add(std::move(params));
    }

    if (sc.expect.any()) {
        ConfigNode expect;
        expect.key = "expect";
        if (sc.expect.min_fidelity) {
            expect.children.push_back(
                leaf("min_fidelity", {format_double(*sc.expect.min_fidelity)}));
        }
        if (sc.expect.min_herald) {
            expect.children.push_back(
                leaf("min_herald", {format_double(*sc.expect.min_herald)}));
        }
        if (sc.expect.max_herald) {
            expect.children.push_back(
                leaf("max_herald", {format_double(*sc.expect.max_herald)}));
        }
        add(std::move(expect));
    }

    if (sc.force_branch) {
        add(leaf("force_branch", {std::to_string(sc.force_branch->m_i),
                                  std::to_string(sc.force_branch->m_j)}));
    }

    if (sc.routing) {
        ConfigNode routing;
        routing.key = "routing";
        routing.children.push_back(leaf("table", {sc.routing->table}));
        routing.children.push_back(leaf("schedule", {sc.routing->schedule}));
        if (!sc.routing->expected.empty()) {
            routing.children.push_back(leaf("expected", {sc.routing->expected}));
        }
        if (!sc.routing->entry.empty()) {
            routing.children.push_back(leaf("entry", {sc.routing->entry}));
        }
        routing.children.push_back(
            leaf("start_time", {format_double(sc.routing->start_time)}));
        add(std::move(routing));
    }

    return serialize_config(root);
}

StateVector scenario_input_state(const Scenario& sc, const NetworkLayout& layout) {
    if (layout.node_count() != sc.nodes) {
        throw_invalid("layout does not match the scenario node count");
    }
    if (sc.input.empty()) {
        return encode_basis(layout, std::string(static_cast<std::size_t>(sc.nodes), '0'));
    }
    return logical_superposition(layout, sc.input, kInputNormTol);
}

}  // namespace dfsnet
