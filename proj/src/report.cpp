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

#include "report.hpp"

#include <cmath>
#include <complex>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "optics.hpp"

namespace dfsnet {

namespace {

constexpr double kAmplitudeTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr int kAmplitudeDigits = 12;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json amplitude_list(const StateVector& state, const NetworkLayout& layout) {
    Json list = Json::array();
    for (const auto& [bits, amp] : logical_amplitudes(state, layout)) {
        if (std::abs(amp) <= kExactTol) continue;
        Json entry;
        entry["bits"] = bits;
        entry["amplitude"] = format_complex(amp, kAmplitudeDigits);
        list.push_back(std::move(entry));
    }
    return list;
}

Json noise_echo(const NoiseSpec& n) {
    Json j;
    switch (n.dephasing) {
        case DephasingKind::Off:
            j["dephasing"] = "off";
            break;
        case DephasingKind::Uniform:
            j["dephasing"] = "uniform";
            break;
        case DephasingKind::Gaussian:
            j["dephasing"] = "gaussian";
            break;
    }
    j["sigma"] = n.dephasing_sigma;
    j["scope"] = n.scope == DephasingScope::PerNode ? "per_node" : "global";
    switch (n.epoch) {
        case DephasingEpoch::Before:
            j["epoch"] = "before";
            break;
        case DephasingEpoch::Between:
            j["epoch"] = "between";
            break;
        case DephasingEpoch::Both:
            j["epoch"] = "both";
            break;
    }
    j["loss_reflection"] = n.loss_reflection;
    j["loss_hop"] = n.loss_hop;
    j["cpf_phase_error"] = n.cpf_phase_error;
    return j;
}

Json params_echo(const ExperimentalParams& p) {
    Json j;
    j["kappa_mhz"] = p.kappa_mhz;
    j["g_mhz"] = p.g_mhz;
    j["gamma_mhz"] = p.gamma_mhz;
    j["t_us"] = p.t_us;
    return j;
}

Json gate_echo(const Scenario& sc) {
    Json j;
    switch (sc.protocol) {
        case ScenarioProtocol::XGate:
        case ScenarioProtocol::ZGate:
        case ScenarioProtocol::Hadamard:
            j["node"] = sc.node;
            break;
        case ScenarioProtocol::CNOT:
            j["control"] = sc.control;
            j["target"] = sc.target;
            break;
        case ScenarioProtocol::CZ:
        case ScenarioProtocol::Swap:
        case ScenarioProtocol::BellPrep:
            j["node_i"] = sc.node_i;
            j["node_j"] = sc.node_j;
            break;
        case ScenarioProtocol::Teleport:
            j["node_i"] = sc.node_i;
            j["node_j"] = sc.node_j;
            j["node_k"] = sc.node_k;
            break;
        case ScenarioProtocol::RoutingCheck:
            break;
    }
    return j;
}

Json scenario_echo(const Scenario& sc) {
    Json j;
    j["protocol"] = scenario_protocol_name(sc.protocol);
    j["nodes"] = sc.nodes;
    j["seed"] = sc.noise.seed;
    j["trials"] = sc.trials;
    j["format"] = report_format_name(sc.format);
    Json gate = gate_echo(sc);
    if (!gate.empty()) j["gate"] = std::move(gate);
    if (!sc.input.empty()) {
        Json input = Json::array();
        for (const auto& [bits, amp] : sc.input) {
            Json entry;
            entry["bits"] = bits;
            entry["amplitude"] = format_complex(amp, kAmplitudeDigits);
            input.push_back(std::move(entry));
        }
        j["input"] = std::move(input);
    }
    j["noise"] = noise_echo(sc.noise);
    j["params"] = params_echo(sc.params);
    if (sc.force_branch) {
        j["force_branch"] = Json::array({sc.force_branch->m_i, sc.force_branch->m_j});
    }
    if (sc.expect.any()) {
        Json e;
        if (sc.expect.min_fidelity) e["min_fidelity"] = *sc.expect.min_fidelity;
        if (sc.expect.min_herald) e["min_herald"] = *sc.expect.min_herald;
        if (sc.expect.max_herald) e["max_herald"] = *sc.expect.max_herald;
        j["expect"] = std::move(e);
    }
    if (sc.routing) {
        Json r;
        r["table"] = sc.routing->table;
        r["schedule"] = sc.routing->schedule;
        if (!sc.routing->expected.empty()) r["expected"] = sc.routing->expected;
        if (!sc.routing->entry.empty()) r["entry"] = sc.routing->entry;
        r["start_time"] = sc.routing->start_time;
        j["routing"] = std::move(r);
    }
    return j;
}

Json gate_time_json(const Scenario& sc, Protocol p) {
    const GateTimeEstimate est = estimate_gate_time(sc.params, p);
    Json j;
    j["seconds"] = est.seconds;
    j["kappa_t"] = est.kappa_t;
    j["cooperativity"] = est.cooperativity;
    j["regime_ok"] = est.regime_ok;
    return j;
}

Json budget_json(int photons, int reflections, int hops) {
    Json j;
    j["photons"] = photons;
    j["cavity_reflections"] = reflections;
    j["channel_hops"] = hops;
    return j;
}

HeraldedOutcome dispatch_gate(GateContext& ctx, const Scenario& sc,
                              const StateVector& input) {
    switch (sc.protocol) {
        case ScenarioProtocol::XGate:
            return logical_x(ctx, input, sc.node);
        case ScenarioProtocol::ZGate:
            return logical_z(ctx, input, sc.node);
        case ScenarioProtocol::Hadamard:
            return hadamard_gate(ctx, input, sc.node);
        case ScenarioProtocol::CZ:
            return cz_gate(ctx, input, sc.node_i, sc.node_j);
        case ScenarioProtocol::CNOT:
            return cnot_gate(ctx, input, sc.control, sc.target);
        case ScenarioProtocol::Swap:
            return swap_gate(ctx, input, sc.node_i, sc.node_j);
        case ScenarioProtocol::BellPrep:
            return bell_prep(ctx, input, sc.node_i, sc.node_j);
        case ScenarioProtocol::Teleport:
        case ScenarioProtocol::RoutingCheck:
            break;
    }
    throw_invalid("protocol does not run as a single heralded gate");
}

StateVector ideal_gate_output(const Scenario& sc, const NetworkLayout& layout,
                              const StateVector& input) {
    ExecOptions opts;
    opts.mode = HeraldMode::PostSelect;
    GateContext ctx(layout, opts);
    return dispatch_gate(ctx, sc, input).post_state;
}

// Herald probability with lossless pulses would be the protocol's ideal
// value; each optical contact multiplies in its survival factor.
std::optional<double> loss_adjusted_herald(const Scenario& sc, Protocol p) {
    if (sc.noise.cpf_phase_error != 0.0) return std::nullopt;
    const ProtocolStats stats = protocol_stats(p);
    double herald = stats.herald_probability;
    herald *= std::pow(1.0 - sc.noise.loss_reflection, stats.cavity_reflections);
    herald *= std::pow(1.0 - sc.noise.loss_hop, stats.channel_hops);
    return herald;
}

double payload_fidelity(const LogicalReadout& in, const LogicalReadout& out) {
    const Complex overlap =
        std::conj(in.alpha) * out.alpha + std::conj(in.beta) * out.beta;
    return std::norm(overlap);
}

Json exact_gate_result(const Scenario& sc, const NetworkLayout& layout,
                       const StateVector& input, Protocol core) {
    ExecOptions opts;
    opts.mode = HeraldMode::PostSelect;
    opts.noise = sc.noise;
    GateContext ctx(layout, opts);
    const HeraldedOutcome out = dispatch_gate(ctx, sc, input);
    const StateVector ideal = ideal_gate_output(sc, layout, input);
    const double fid = fidelity(out.post_state, ideal);

    Json result;
    result["mode"] = "exact";
    Json herald;
    herald["probability"] = out.probability;
    if (const auto ideal_herald = loss_adjusted_herald(sc, core)) {
        herald["ideal"] = *ideal_herald;
    }
    herald["tolerance"] = kExactTol;
    result["herald"] = std::move(herald);
    Json fidelity_j;
    fidelity_j["value"] = fid;
    fidelity_j["reference"] = "ideal success branch";
    fidelity_j["tolerance"] = kAmplitudeTol;
    result["fidelity"] = std::move(fidelity_j);
    result["leakage"] = out.leakage;
    result["detector"] = out.detector;
    result["photon_budget"] =
        budget_json(out.photons_used, out.cavity_reflections, out.channel_hops);
    result["gate_time"] = gate_time_json(sc, core);
    result["output_state"] = amplitude_list(out.post_state, layout);
    Json summary;
    summary["herald"] = out.probability;
    summary["fidelity"] = fid;
    result["summary"] = std::move(summary);
    return result;
}

Json sampled_gate_result(const Scenario& sc, const NetworkLayout& layout,
                         const StateVector& input, Protocol core) {
    ExecOptions opts;
    opts.mode = HeraldMode::Sample;
    opts.noise = sc.noise;
    GateContext ctx(layout, opts);
    const StateVector ideal = ideal_gate_output(sc, layout, input);

    RunningStat fid_stat;
    RunningStat leak_stat;
    std::int64_t heralds = 0;
    for (std::int64_t k = 0; k < sc.trials; ++k) {
        ctx.reseed(sc.noise.seed, static_cast<std::uint64_t>(k));
        const HeraldedOutcome out = dispatch_gate(ctx, sc, input);
        if (!out.success) continue;
        ++heralds;
        fid_stat.add(fidelity(out.post_state, ideal));
        leak_stat.add(out.leakage);
    }
    const double n = static_cast<double>(sc.trials);
    const double rate = static_cast<double>(heralds) / n;

    Json result;
    result["mode"] = "monte_carlo";
    result["trials"] = sc.trials;
    Json herald;
    herald["rate"] = rate;
    herald["count"] = heralds;
    herald["stderr"] = std::sqrt(rate * (1.0 - rate) / n);
    if (const auto ideal_herald = loss_adjusted_herald(sc, core)) {
        herald["ideal"] = *ideal_herald;
    }
    result["herald"] = std::move(herald);
    Json fidelity_j;
    if (heralds > 0) {
        fidelity_j["mean"] = fid_stat.mean();
        fidelity_j["stderr"] = fid_stat.std_error();
    }
    fidelity_j["reference"] = "ideal success branch";
    result["fidelity"] = std::move(fidelity_j);
    Json leakage;
    if (heralds > 0) {
        leakage["mean"] = leak_stat.mean();
        leakage["stderr"] = leak_stat.std_error();
    }
    result["leakage"] = std::move(leakage);
    const ProtocolStats stats = protocol_stats(core);
    result["photon_budget"] =
        budget_json(stats.photons, stats.cavity_reflections, stats.channel_hops);
    result["gate_time"] = gate_time_json(sc, core);
    Json summary;
    summary["herald"] = rate;
    if (heralds > 0) summary["fidelity"] = fid_stat.mean();
    result["summary"] = std::move(summary);
    return result;
}

// Fidelity of one finished teleport against the scenario input: the logical
// payload read back from node k when that is well defined, otherwise the
// full-register overlap with a noiseless run forced onto the same branch.
double teleport_fidelity(const Scenario& sc, const NetworkLayout& layout,
                         const StateVector& input, const LogicalReadout& in_readout,
                         const TeleportResult& run) {
    if (!in_readout.entangled) {
        const LogicalReadout out =
            extract_logical(run.final_state, layout, sc.node_k);
        if (!out.entangled) return payload_fidelity(in_readout, out);
    }
    ExecOptions opts;
    opts.mode = HeraldMode::PostSelect;
    GateContext ctx(layout, opts);
    const TeleportResult ideal =
        teleport(ctx, input, sc.node_i, sc.node_j, sc.node_k,
                 ForcedBranch{run.m_i, run.m_j});
    return fidelity(run.final_state, ideal.final_state);
}

Json exact_teleport_result(const Scenario& sc, const NetworkLayout& layout,
                           const StateVector& input) {
    const LogicalReadout in_readout = extract_logical(input, layout, sc.node_i);

    std::vector<ForcedBranch> branches;
    if (sc.force_branch) {
        branches.push_back(*sc.force_branch);
    } else {
        branches = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    }

    Json rows = Json::array();
    double min_herald = 1.0;
    double min_fidelity = 1.0;
    for (const ForcedBranch& branch : branches) {
        ExecOptions opts;
        opts.mode = HeraldMode::PostSelect;
        opts.noise = sc.noise;
        GateContext ctx(layout, opts);
        const TeleportResult run =
            teleport(ctx, input, sc.node_i, sc.node_j, sc.node_k, branch);
        const double fid = teleport_fidelity(sc, layout, input, in_readout, run);
        min_herald = std::min(min_herald, run.herald_probability);
        min_fidelity = std::min(min_fidelity, fid);

        Json row;
        row["m_i"] = run.m_i;
        row["m_j"] = run.m_j;
        row["correction"] = correction_name(run.correction);
        row["table_match"] =
            run.correction == table_correction(run.m_i, run.m_j);
        Json bp;
        bp["value"] = run.branch_probability;
        bp["tolerance"] = kAmplitudeTol;
        row["branch_probability"] = std::move(bp);
        Json hp;
        hp["value"] = run.herald_probability;
        hp["tolerance"] = kExactTol;
        row["herald_probability"] = std::move(hp);
        Json fj;
        fj["value"] = fid;
        fj["tolerance"] = kAmplitudeTol;
        row["fidelity"] = std::move(fj);
        row["leakage"] = run.leakage;
        row["photon_budget"] = budget_json(run.photons_used, run.cavity_reflections,
                                           run.channel_hops);
        row["output_state"] = amplitude_list(run.final_state, layout);
        rows.push_back(std::move(row));
    }

    Json result;
    result["mode"] = "exact";
    result["branches"] = std::move(rows);
    result["gate_time"] = gate_time_json(sc, Protocol::Teleport);
    Json summary;
    summary["herald"] = min_herald;
    summary["fidelity"] = min_fidelity;
    result["summary"] = std::move(summary);
    return result;
}

Json sampled_teleport_result(const Scenario& sc, const NetworkLayout& layout,
                             const StateVector& input) {
    const LogicalReadout in_readout = extract_logical(input, layout, sc.node_i);
    ExecOptions opts;
    opts.mode = HeraldMode::Sample;
    opts.noise = sc.noise;
    GateContext ctx(layout, opts);

    RunningStat fid_stat;
    std::int64_t heralds = 0;
    std::int64_t branch_count[2][2] = {{0, 0}, {0, 0}};
    for (std::int64_t k = 0; k < sc.trials; ++k) {
        ctx.reseed(sc.noise.seed, static_cast<std::uint64_t>(k));
        const TeleportResult run = teleport(ctx, input, sc.node_i, sc.node_j,
                                            sc.node_k, sc.force_branch);
        if (!run.success) continue;
        ++heralds;
        branch_count[run.m_i][run.m_j] += 1;
        fid_stat.add(teleport_fidelity(sc, layout, input, in_readout, run));
    }
    const double n = static_cast<double>(sc.trials);
    const double rate = static_cast<double>(heralds) / n;

    Json result;
    result["mode"] = "monte_carlo";
    result["trials"] = sc.trials;
    Json herald;
    herald["rate"] = rate;
    herald["count"] = heralds;
    herald["stderr"] = std::sqrt(rate * (1.0 - rate) / n);
    result["herald"] = std::move(herald);
    Json fidelity_j;
    if (heralds > 0) {
        fidelity_j["mean"] = fid_stat.mean();
        fidelity_j["stderr"] = fid_stat.std_error();
    }
    result["fidelity"] = std::move(fidelity_j);
    Json branches = Json::array();
    for (int mi = 0; mi < 2; ++mi) {
        for (int mj = 0; mj < 2; ++mj) {
            Json row;
            row["m_i"] = mi;
            row["m_j"] = mj;
            row["correction"] = correction_name(table_correction(mi, mj));
            row["count"] = branch_count[mi][mj];
            if (heralds > 0) {
                row["fraction"] =
                    static_cast<double>(branch_count[mi][mj]) /
                    static_cast<double>(heralds);
            }
            branches.push_back(std::move(row));
        }
    }
    result["branches"] = std::move(branches);
    const ProtocolStats stats = protocol_stats(Protocol::Teleport);
    result["photon_budget"] =
        budget_json(stats.photons, stats.cavity_reflections, stats.channel_hops);
    result["gate_time"] = gate_time_json(sc, Protocol::Teleport);
    Json summary;
    summary["herald"] = rate;
    if (heralds > 0) summary["fidelity"] = fid_stat.mean();
    result["summary"] = std::move(summary);
    return result;
}

// Evaluates the expect block against result.summary; a violated threshold
// sets exit code 3 and is recorded in the report.
void apply_expectations(const Scenario& sc, RunReport& report) {
    if (!sc.expect.any()) return;
    Json& result = report.doc["result"];
    const Json& summary = result["summary"];
    Json checks = Json::array();
    bool all_pass = true;
    auto add_check = [&](const char* name, double threshold, const char* field,
                         bool is_min) {
        if (!summary.contains(field)) {
            Json c;
            c["name"] = name;
            c["threshold"] = threshold;
            c["pass"] = false;
            c["note"] = "no heralded trials to evaluate";
            checks.push_back(std::move(c));
            all_pass = false;
            return;
        }
        const double actual = summary[field].get<double>();
        const bool pass = is_min ? actual >= threshold : actual <= threshold;
        Json c;
        c["name"] = name;
        c["threshold"] = threshold;
        c["actual"] = actual;
        c["pass"] = pass;
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
    };
    if (sc.expect.min_fidelity) {
        add_check("min_fidelity", *sc.expect.min_fidelity, "fidelity", true);
    }
    if (sc.expect.min_herald) {
        add_check("min_herald", *sc.expect.min_herald, "herald", true);
    }
    if (sc.expect.max_herald) {
        add_check("max_herald", *sc.expect.max_herald, "herald", false);
    }
    result["expectations"] = std::move(checks);
    if (!all_pass) report.exit_code = 3;
}

TableDocument resolve_table(const RoutingSpec& spec) {
    if (spec.table == "builtin:single_node") return single_node_table();
    if (spec.table == "builtin:two_node") return two_node_table();
    return load_table_document(spec.table);
}

Json route_steps_json(const RouteResult& route) {
    Json steps = Json::array();
    for (const TraceStep& s : route.steps) {
        Json step;
        step["element"] = s.element;
        step["label"] = s.label;
        step["time"] = s.time;
        step["action"] = s.action;
        steps.push_back(std::move(step));
    }
    return steps;
}

Json path_labels_json(const RouteResult& route) {
    Json labels = Json::array();
    for (const TraceStep& s : route.steps) labels.push_back(s.label);
    return labels;
}

}  // namespace

const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::CpfPhaseError:
            return "cpf_phase_error";
        case SweepParameter::PhotonLoss:
            return "photon_loss";
        case SweepParameter::DephasingSigma:
            return "dephasing_sigma";
    }
    return "?";
}

std::optional<SweepParameter> sweep_parameter_from_name(std::string_view name) {
    if (name == "cpf_phase_error") return SweepParameter::CpfPhaseError;
    if (name == "photon_loss") return SweepParameter::PhotonLoss;
    if (name == "dephasing_sigma" || name == "dephasing") {
        return SweepParameter::DephasingSigma;
    }
    return std::nullopt;
}

RunReport run_scenario_report(const Scenario& sc) {
    validate_scenario(sc);
    if (sc.protocol == ScenarioProtocol::RoutingCheck) {
        return routing_check_report(sc);
    }
    const NetworkLayout layout(sc.nodes);
    const StateVector input = scenario_input_state(sc, layout);

    RunReport report;
    report.doc["schema_version"] = 1;
    report.doc["kind"] = "run";
    report.doc["scenario"] = scenario_echo(sc);
    if (sc.protocol == ScenarioProtocol::Teleport) {
        report.doc["result"] = sc.trials == 1
                                   ? exact_teleport_result(sc, layout, input)
                                   : sampled_teleport_result(sc, layout, input);
    } else {
        const Protocol core = *core_protocol(sc.protocol);
        report.doc["result"] = sc.trials == 1
                                   ? exact_gate_result(sc, layout, input, core)
                                   : sampled_gate_result(sc, layout, input, core);
    }
    apply_expectations(sc, report);
    return report;
}

RunReport truth_table_report(ScenarioProtocol protocol, int nodes) {
    switch (protocol) {
        case ScenarioProtocol::XGate:
        case ScenarioProtocol::ZGate:
        case ScenarioProtocol::Hadamard:
        case ScenarioProtocol::CZ:
        case ScenarioProtocol::CNOT:
        case ScenarioProtocol::Swap:
            break;
        default:
            throw_validation(
                "truth tables cover x, z, hadamard, cz, cnot, and swap only");
    }
    const int arity = scenario_protocol_arity(protocol);
    if (nodes < arity || nodes > kMaxNodes) {
        throw_validation("nodes must be between the protocol arity (" +
                         std::to_string(arity) + ") and " +
                         std::to_string(kMaxNodes));
    }

    Scenario sc;
    sc.protocol = protocol;
    sc.nodes = nodes;
    const NetworkLayout layout(nodes);

    RunReport report;
    report.doc["schema_version"] = 1;
    report.doc["kind"] = "truth_table";
    Json scenario;
    scenario["protocol"] = scenario_protocol_name(protocol);
    scenario["nodes"] = nodes;
    scenario["gate"] = gate_echo(sc);
    report.doc["scenario"] = std::move(scenario);

    Json rows = Json::array();
    const std::uint64_t count = std::uint64_t{1} << nodes;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::string bits(static_cast<std::size_t>(nodes), '0');
        for (int n = 0; n < nodes; ++n) {
            if ((idx >> (nodes - 1 - n)) & 1u) bits[static_cast<std::size_t>(n)] = '1';
        }
        ExecOptions opts;
        opts.mode = HeraldMode::PostSelect;
        GateContext ctx(layout, opts);
        const HeraldedOutcome out = dispatch_gate(ctx, sc, encode_basis(layout, bits));
        Json row;
        row["input"] = bits;
        row["herald_probability"] = out.probability;
        row["output"] = amplitude_list(out.post_state, layout);
        rows.push_back(std::move(row));
    }
    Json result;
    result["rows"] = std::move(rows);
    report.doc["result"] = std::move(result);
    return report;
}

RunReport sweep_report(const Scenario& sc, SweepParameter parameter,
                       const std::vector<double>& grid) {
    validate_scenario(sc);
    if (sc.protocol == ScenarioProtocol::RoutingCheck) {
        throw_validation("sweep does not apply to routing_check");
    }
    if (grid.empty()) throw_validation("sweep grid must be nonempty");
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] < grid[i - 1]) increasing = false;
        if (grid[i] > grid[i - 1]) decreasing = false;
    }
    if (!increasing && !decreasing) throw_validation("sweep grid must be monotone");

    RunReport report;
    report.doc["schema_version"] = 1;
    report.doc["kind"] = "sweep";
    report.doc["scenario"] = scenario_echo(sc);
    report.doc["parameter"] = sweep_parameter_name(parameter);

    Json rows = Json::array();
    for (double value : grid) {
        Scenario point = sc;
        switch (parameter) {
            case SweepParameter::CpfPhaseError:
                point.noise.cpf_phase_error = value;
                break;
            case SweepParameter::PhotonLoss:
                point.noise.loss_reflection = value;
                point.noise.loss_hop = value;
                break;
            case SweepParameter::DephasingSigma:
                point.noise.dephasing = DephasingKind::Gaussian;
                point.noise.dephasing_sigma = value;
                break;
        }
        point.noise.validate();
        const RunReport point_report = run_scenario_report(point);
        const Json& summary = point_report.doc["result"]["summary"];
        Json row;
        row["value"] = value;
        row["herald_rate"] = summary["herald"];
        row["fidelity"] = summary.contains("fidelity") ? summary["fidelity"] : Json();
        rows.push_back(std::move(row));
    }
    Json result;
    result["rows"] = std::move(rows);
    report.doc["result"] = std::move(result);
    return report;
}

RunReport routing_check_report(const Scenario& sc) {
    validate_scenario(sc);
    if (!sc.routing) throw_validation("routing: missing routing block");
    const RoutingSpec& spec = *sc.routing;
    const TableDocument doc = resolve_table(spec);

    const auto schedule_it = doc.schedules.find(spec.schedule);
    if (schedule_it == doc.schedules.end()) {
        throw_validation("routing.schedule: table '" + doc.name +
                         "' has no schedule named '" + spec.schedule + "'");
    }
    std::string entry = spec.entry;
    if (entry.empty()) {
        if (doc.table.entries().empty()) {
            throw_validation("routing.entry: table has no entry ports");
        }
        entry = doc.table.entries().front();
    }

    RunReport report;
    report.doc["schema_version"] = 1;
    report.doc["kind"] = "routing_check";
    report.doc["scenario"] = scenario_echo(sc);

    Json result;
    result["table"] = spec.table;
    result["schedule"] = spec.schedule;
    result["entry"] = entry;
    result["start_time"] = spec.start_time;

    bool pass;
    if (!spec.expected.empty()) {
        const auto expected_it = doc.expected_paths.find(spec.expected);
        if (expected_it == doc.expected_paths.end()) {
            throw_validation("routing.expected: table '" + doc.name +
                             "' has no expected path named '" + spec.expected + "'");
        }
        const ScheduleValidation v =
            validate_schedule(doc.table, schedule_it->second, expected_it->second,
                              entry, spec.start_time);
        pass = v.ok;
        result["pass"] = v.ok;
        result["detected"] = v.route.detected;
        result["terminal"] = v.route.terminal;
        if (!v.route.error.empty()) result["error"] = v.route.error;
        result["path"] = path_labels_json(v.route);
        Json expected = Json::array();
        for (const std::string& label : expected_it->second) expected.push_back(label);
        result["expected_path"] = std::move(expected);
        if (!v.ok) {
            Json div;
            div["index"] = v.divergence_index;
            div["expected"] = v.expected;
            div["actual"] = v.actual;
            div["message"] = v.message;
            result["divergence"] = std::move(div);
        }
        result["steps"] = route_steps_json(v.route);
    } else {
        const RouteResult route =
            route_photon(doc.table, schedule_it->second, entry, spec.start_time);
        pass = route.ok && route.detected;
        result["pass"] = pass;
        result["detected"] = route.detected;
        result["terminal"] = route.terminal;
        if (!route.error.empty()) result["error"] = route.error;
        result["path"] = path_labels_json(route);
        result["steps"] = route_steps_json(route);
    }

    report.doc["result"] = std::move(result);
    report.exit_code = pass ? 0 : 3;
    return report;
}

RunReport estimate_time_report(const Scenario& sc) {
    validate_scenario(sc);
    const auto core = core_protocol(sc.protocol);
    if (!core) throw_validation("estimate-time needs a gate protocol");

    RunReport report;
    report.doc["schema_version"] = 1;
    report.doc["kind"] = "estimate_time";
    report.doc["scenario"] = scenario_echo(sc);

    const ProtocolStats stats = protocol_stats(*core);
    Json result;
    result["protocol"] = scenario_protocol_name(sc.protocol);
    result["photon_budget"] =
        budget_json(stats.photons, stats.cavity_reflections, stats.channel_hops);
    result["ideal_herald_probability"] = stats.herald_probability;
    result["gate_time"] = gate_time_json(sc, *core);
    report.doc["result"] = std::move(result);
    return report;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_value(const Json& j) {
    if (j.is_string()) return csv_escape(j.get<std::string>());
    if (j.is_null()) return "";
    return j.dump();
}

void flatten_json(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const Json& value : j) {
            flatten_json(value, prefix + "[" + std::to_string(i) + "]", out);
            ++i;
        }
    } else {
        out += csv_escape(prefix);
        out += ',';
        out += csv_value(j);
        out += '\n';
    }
}

std::string render_sweep_csv(const Json& doc) {
    std::string out = "value,herald_rate,fidelity\n";
    for (const Json& row : doc["result"]["rows"]) {
        out += format_double(row["value"].get<double>());
        out += ',';
        out += format_double(row["herald_rate"].get<double>());
        out += ',';
        out += row["fidelity"].is_null()
                   ? std::string()
                   : format_double(row["fidelity"].get<double>());
        out += '\n';
    }
    return out;
}

std::string render_truth_table_csv(const Json& doc) {
    std::string out = "input,herald_probability,bits,amplitude\n";
    for (const Json& row : doc["result"]["rows"]) {
        for (const Json& term : row["output"]) {
            out += csv_escape(row["input"].get<std::string>());
            out += ',';
            out += format_double(row["herald_probability"].get<double>());
            out += ',';
            out += csv_escape(term["bits"].get<std::string>());
            out += ',';
            out += csv_escape(term["amplitude"].get<std::string>());
            out += '\n';
        }
    }
    return out;
}

}  // namespace

std::string render_report(const RunReport& report, const RenderOptions& opts) {
    Json doc;
    for (const auto& [key, value] : report.doc.items()) {
        doc[key] = value;
        if (key == "kind" && opts.include_timestamp) {
            doc["generated_at"] = iso_timestamp();
        }
    }
    if (opts.format == ReportFormat::Json) {
        return doc.dump(2) + "\n";
    }
    const std::string kind = doc.value("kind", "");
    if (kind == "sweep") return render_sweep_csv(doc);
    if (kind == "truth_table") return render_truth_table_csv(doc);
    std::string out = "key,value\n";
    flatten_json(doc, "", out);
    return out;
}

}  // namespace dfsnet
