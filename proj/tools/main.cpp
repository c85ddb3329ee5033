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

// Command-line front end. Talks to the simulator exclusively through the
// public C API in dfsnet/dfsnet.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <dfsnet/dfsnet.h>

#include "CLI11.hpp"

namespace {

// Exit codes: 0 success, 1 unexpected runtime failure, 2 rejected input,
// 3 failed expectation or routing check.
int exit_for(dfsnet_status st) {
    switch (st) {
        case DFSNET_OK:
            return 0;
        case DFSNET_INVALID_ARGUMENT:
        case DFSNET_PARSE_ERROR:
        case DFSNET_VALIDATION_ERROR:
            return 2;
        default:
            return 1;
    }
}

int report_failure(dfsnet_status st) {
    std::cerr << "error: " << dfsnet_last_error() << "\n";
    return exit_for(st);
}

struct ScenarioDeleter {
    void operator()(dfsnet_scenario* p) const { dfsnet_scenario_free(p); }
};
struct ReportDeleter {
    void operator()(dfsnet_report* p) const { dfsnet_report_free(p); }
};
using ScenarioPtr = std::unique_ptr<dfsnet_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<dfsnet_report, ReportDeleter>;

struct CommonOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::string format;  // empty: scenario default
    std::string output;  // empty: stdout
    bool no_timestamp = false;
    std::string force_branch;  // "m_i,m_j"
};

void add_output_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--output", opts.output, "Write the report to this file");
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--no-timestamp", opts.no_timestamp,
                  "Omit the generation time (byte-stable output)");
}

void add_scenario_options(CLI::App* cmd, CommonOptions& opts) {
    add_output_options(cmd, opts);
    cmd->add_option("--seed", opts.seed, "Random stream seed override");
    cmd->add_option("--trials", opts.trials, "Trial count override");
    cmd->add_option("--force-branch", opts.force_branch,
                    "Pin the teleport Bell outcomes, e.g. 0,1");
}

bool parse_force_branch(const std::string& text, int& m_i, int& m_j) {
    if (text.size() != 3 || text[1] != ',') return false;
    if ((text[0] != '0' && text[0] != '1') || (text[2] != '0' && text[2] != '1')) {
        return false;
    }
    m_i = text[0] - '0';
    m_j = text[2] - '0';
    return true;
}

int apply_overrides(dfsnet_scenario* sc, const CommonOptions& opts) {
    if (opts.seed) {
        if (const auto st = dfsnet_scenario_set_seed(sc, *opts.seed);
            st != DFSNET_OK) {
            return report_failure(st);
        }
    }
    if (opts.trials) {
        if (const auto st = dfsnet_scenario_set_trials(sc, *opts.trials);
            st != DFSNET_OK) {
            return report_failure(st);
        }
    }
    if (!opts.force_branch.empty()) {
        int m_i = 0;
        int m_j = 0;
        if (!parse_force_branch(opts.force_branch, m_i, m_j)) {
            std::cerr << "error: --force-branch expects m_i,m_j with each "
                         "outcome 0 or 1\n";
            return 2;
        }
        if (const auto st = dfsnet_scenario_set_force_branch(sc, m_i, m_j);
            st != DFSNET_OK) {
            return report_failure(st);
        }
    }
    return 0;
}

int emit_report(const dfsnet_report* report, const CommonOptions& opts) {
    char* text = nullptr;
    const dfsnet_status st = dfsnet_report_render(
        report, opts.format.empty() ? nullptr : opts.format.c_str(),
        opts.no_timestamp ? 0 : 1, &text);
    if (st != DFSNET_OK) return report_failure(st);
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open '" << opts.output
                      << "' for writing\n";
            dfsnet_string_free(text);
            return 2;
        }
        out << text;
        if (!out.flush()) {
            std::cerr << "error: failed writing '" << opts.output << "'\n";
            dfsnet_string_free(text);
            return 1;
        }
    }
    dfsnet_string_free(text);
    int code = 0;
    if (const auto ec = dfsnet_report_exit_code(report, &code); ec != DFSNET_OK) {
        return report_failure(ec);
    }
    return code;
}

int load_with_overrides(const std::string& path, const CommonOptions& opts,
                        ScenarioPtr& out) {
    dfsnet_scenario* raw = nullptr;
    if (const auto st = dfsnet_scenario_load(path.c_str(), &raw);
        st != DFSNET_OK) {
        return report_failure(st);
    }
    out.reset(raw);
    return apply_overrides(out.get(), opts);
}

int default_truth_table_nodes(const std::string& protocol) {
    if (protocol == "x" || protocol == "z" || protocol == "hadamard") return 1;
    return 2;
}

std::vector<double> parse_grid(const std::string& text, bool& ok) {
    std::vector<double> grid;
    ok = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) return grid;
            grid.push_back(v);
        } catch (const std::exception&) {
            return grid;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    ok = true;
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dfsnet: heralded simulator of a photon-mediated network of "
        "decoherence-free-subspace qubits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dfsnet_version()));

    // run
    std::string run_path;
    CommonOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("scenario", run_path, "Scenario file")->required();
    add_scenario_options(run, run_opts);

    // truth-table
    std::string tt_protocol;
    int tt_nodes = 0;
    CommonOptions tt_opts;
    CLI::App* tt = app.add_subcommand(
        "truth-table", "Ideal logical truth table of a gate protocol");
    tt->add_option("--protocol", tt_protocol, "Gate protocol")
        ->required()
        ->check(CLI::IsMember({"x", "z", "hadamard", "cz", "cnot", "swap"}));
    tt->add_option("--nodes", tt_nodes,
                   "Network size (default: the protocol's arity)");
    add_output_options(tt, tt_opts);

    // sweep
    std::string sweep_path;
    std::string sweep_parameter;
    std::string sweep_grid;
    CommonOptions sweep_opts;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Sweep one noise parameter over a grid");
    sweep->add_option("scenario", sweep_path, "Scenario file")->required();
    sweep->add_option("--parameter", sweep_parameter, "Noise parameter")
        ->required()
        ->check(CLI::IsMember({"cpf_phase_error", "photon_loss",
                               "dephasing_sigma"}));
    sweep->add_option("--grid", sweep_grid,
                      "Comma-separated monotone values, e.g. 0,0.05,0.1")
        ->required();
    add_scenario_options(sweep, sweep_opts);

    // routing-check
    std::string routing_path;
    CommonOptions routing_opts;
    CLI::App* routing = app.add_subcommand(
        "routing-check", "Route a photon through an optical table");
    routing->add_option("scenario", routing_path, "Scenario file")->required();
    add_output_options(routing, routing_opts);

    // estimate-time
    std::string time_path;
    CommonOptions time_opts;
    CLI::App* time_cmd = app.add_subcommand(
        "estimate-time", "Photon budget and wall-clock estimate");
    time_cmd->add_option("scenario", time_path, "Scenario file")->required();
    add_output_options(time_cmd, time_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) {
        ScenarioPtr sc;
        if (const int rc = load_with_overrides(run_path, run_opts, sc); rc != 0) {
            return rc;
        }
        dfsnet_report* rep = nullptr;
        if (const auto st = dfsnet_scenario_run(sc.get(), &rep); st != DFSNET_OK) {
            return report_failure(st);
        }
        return emit_report(ReportPtr(rep).get(), run_opts);
    }

    if (tt->parsed()) {
        const int nodes =
            tt_nodes > 0 ? tt_nodes : default_truth_table_nodes(tt_protocol);
        dfsnet_report* rep = nullptr;
        if (const auto st = dfsnet_truth_table(tt_protocol.c_str(), nodes, &rep);
            st != DFSNET_OK) {
            return report_failure(st);
        }
        return emit_report(ReportPtr(rep).get(), tt_opts);
    }

    if (sweep->parsed()) {
        bool grid_ok = false;
        const std::vector<double> grid = parse_grid(sweep_grid, grid_ok);
        if (!grid_ok || grid.empty()) {
            std::cerr << "error: --grid expects comma-separated numbers\n";
            return 2;
        }
        ScenarioPtr sc;
        if (const int rc = load_with_overrides(sweep_path, sweep_opts, sc);
            rc != 0) {
            return rc;
        }
        dfsnet_report* rep = nullptr;
        if (const auto st =
                dfsnet_sweep(sc.get(), sweep_parameter.c_str(), grid.data(),
                             grid.size(), &rep);
            st != DFSNET_OK) {
            return report_failure(st);
        }
        return emit_report(ReportPtr(rep).get(), sweep_opts);
    }

    if (routing->parsed()) {
        ScenarioPtr sc;
        if (const int rc = load_with_overrides(routing_path, routing_opts, sc);
            rc != 0) {
            return rc;
        }
        dfsnet_report* rep = nullptr;
        if (const auto st = dfsnet_routing_check(sc.get(), &rep);
            st != DFSNET_OK) {
            return report_failure(st);
        }
        return emit_report(ReportPtr(rep).get(), routing_opts);
    }

    if (time_cmd->parsed()) {
        ScenarioPtr sc;
        if (const int rc = load_with_overrides(time_path, time_opts, sc);
            rc != 0) {
            return rc;
        }
        dfsnet_report* rep = nullptr;
        if (const auto st = dfsnet_estimate_time(sc.get(), &rep);
            st != DFSNET_OK) {
            return report_failure(st);
        }
        return emit_report(ReportPtr(rep).get(), time_opts);
    }

    return 2;
}
