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

#include "dfsnet/dfsnet.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfs.hpp"
#include "error.hpp"
#include "noise.hpp"
#include "protocols.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "statevec.hpp"

namespace {

thread_local std::string g_last_error;

dfsnet_status status_from(dfsnet::ErrorCode code) {
    switch (code) {
        case dfsnet::ErrorCode::runtime:
            return DFSNET_ERROR;
        case dfsnet::ErrorCode::invalid_argument:
            return DFSNET_INVALID_ARGUMENT;
        case dfsnet::ErrorCode::parse:
            return DFSNET_PARSE_ERROR;
        case dfsnet::ErrorCode::validation:
            return DFSNET_VALIDATION_ERROR;
        case dfsnet::ErrorCode::impossible_branch:
            return DFSNET_IMPOSSIBLE_BRANCH;
    }
    return DFSNET_ERROR;
}

template <typename F>
dfsnet_status guarded(F&& body) {
    try {
        return body();
    } catch (const dfsnet::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DFSNET_ERROR;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DFSNET_ERROR;
    } catch (...) {
        g_last_error = "unknown failure";
        return DFSNET_ERROR;
    }
}

dfsnet_status fail_invalid(const char* message) {
    g_last_error = message;
    return DFSNET_INVALID_ARGUMENT;
}

dfsnet::CoeffMap build_coeffs(size_t count, const char* const* bits,
                              const double* re, const double* im) {
    if (count == 0) dfsnet::throw_invalid("empty amplitude list");
    if (bits == nullptr || re == nullptr || im == nullptr) {
        dfsnet::throw_invalid("null amplitude arrays");
    }
    dfsnet::CoeffMap coeffs;
    for (size_t k = 0; k < count; ++k) {
        if (bits[k] == nullptr) dfsnet::throw_invalid("null bitstring");
        auto [it, inserted] =
            coeffs.emplace(bits[k], dfsnet::Complex(re[k], im[k]));
        if (!inserted) {
            dfsnet::throw_invalid("duplicate bitstring '" + it->first + "'");
        }
    }
    return coeffs;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct dfsnet_network {
    dfsnet::NetworkLayout layout;
    dfsnet::ExecOptions opts;
    dfsnet::GateContext ctx;
    dfsnet::StateVector state;

    explicit dfsnet_network(int nodes)
        : layout(nodes),
          opts{},
          ctx(layout, opts),
          state(dfsnet::encode_basis(
              layout, std::string(static_cast<size_t>(nodes), '0'))) {}
};

struct dfsnet_scenario {
    dfsnet::Scenario sc;
};

struct dfsnet_report {
    dfsnet::RunReport rep;
    dfsnet::ReportFormat default_format = dfsnet::ReportFormat::Json;
};

extern "C" {

const char* dfsnet_version(void) { return "1.0.0"; }

const char* dfsnet_last_error(void) { return g_last_error.c_str(); }

void dfsnet_string_free(char* s) { delete[] s; }

void dfsnet_noise_params_init(dfsnet_noise_params* params) {
    if (params == nullptr) return;
    *params = dfsnet_noise_params{};
    params->dephasing_kind = 0;
    params->dephasing_sigma = 0.0;
    params->dephasing_scope = 0;
    params->dephasing_epoch = 1;
    params->loss_reflection = 0.0;
    params->loss_hop = 0.0;
    params->cpf_phase_error = 0.0;
    params->seed = 0;
}

dfsnet_status dfsnet_network_create(int nodes, dfsnet_network** out) {
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        *out = new dfsnet_network(nodes);
        return DFSNET_OK;
    });
}

void dfsnet_network_free(dfsnet_network* net) { delete net; }

dfsnet_status dfsnet_network_set_noise(dfsnet_network* net,
                                       const dfsnet_noise_params* params) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (params == nullptr) return fail_invalid("null noise parameters");
    return guarded([&] {
        dfsnet::NoiseSpec noise;
        switch (params->dephasing_kind) {
            case 0:
                noise.dephasing = dfsnet::DephasingKind::Off;
                break;
            case 1:
                noise.dephasing = dfsnet::DephasingKind::Uniform;
                break;
            case 2:
                noise.dephasing = dfsnet::DephasingKind::Gaussian;
                break;
            default:
                dfsnet::throw_invalid("dephasing_kind must be 0, 1, or 2");
        }
        noise.dephasing_sigma = params->dephasing_sigma;
        switch (params->dephasing_scope) {
            case 0:
                noise.scope = dfsnet::DephasingScope::PerNode;
                break;
            case 1:
                noise.scope = dfsnet::DephasingScope::Global;
                break;
            default:
                dfsnet::throw_invalid("dephasing_scope must be 0 or 1");
        }
        switch (params->dephasing_epoch) {
            case 0:
                noise.epoch = dfsnet::DephasingEpoch::Before;
                break;
            case 1:
                noise.epoch = dfsnet::DephasingEpoch::Between;
                break;
            case 2:
                noise.epoch = dfsnet::DephasingEpoch::Both;
                break;
            default:
                dfsnet::throw_invalid("dephasing_epoch must be 0, 1, or 2");
        }
        noise.loss_reflection = params->loss_reflection;
        noise.loss_hop = params->loss_hop;
        noise.cpf_phase_error = params->cpf_phase_error;
        noise.seed = params->seed;
        noise.validate();
        net->opts.noise = noise;
        net->ctx = dfsnet::GateContext(net->layout, net->opts);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_set_sampling(dfsnet_network* net, int sample) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (sample != 0 && sample != 1) return fail_invalid("sample must be 0 or 1");
    return guarded([&] {
        net->opts.mode =
            sample ? dfsnet::HeraldMode::Sample : dfsnet::HeraldMode::PostSelect;
        net->ctx = dfsnet::GateContext(net->layout, net->opts);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_encode_basis(dfsnet_network* net, const char* bits) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (bits == nullptr) return fail_invalid("null bitstring");
    return guarded([&] {
        net->state = dfsnet::encode_basis(net->layout, bits);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_superpose(dfsnet_network* net, size_t count,
                                       const char* const* bits, const double* re,
                                       const double* im) {
    if (net == nullptr) return fail_invalid("null network handle");
    return guarded([&] {
        net->state = dfsnet::logical_superposition(
            net->layout, build_coeffs(count, bits, re, im), 1e-6);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_apply_gate(dfsnet_network* net, const char* gate,
                                        const int* nodes, size_t node_count,
                                        dfsnet_gate_result* result) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (gate == nullptr) return fail_invalid("null gate name");
    if (nodes == nullptr && node_count > 0) return fail_invalid("null node list");
    return guarded([&] {
        const std::string name = gate;
        const auto need = [&](size_t n) {
            if (node_count != n) {
                dfsnet::throw_invalid("gate '" + name + "' takes " +
                                      std::to_string(n) + " node index(es)");
            }
        };
        dfsnet::HeraldedOutcome out;
        if (name == "x" || name == "xgate") {
            need(1);
            out = dfsnet::logical_x(net->ctx, net->state, nodes[0]);
        } else if (name == "z" || name == "zgate") {
            need(1);
            out = dfsnet::logical_z(net->ctx, net->state, nodes[0]);
        } else if (name == "hadamard" || name == "h") {
            need(1);
            out = dfsnet::hadamard_gate(net->ctx, net->state, nodes[0]);
        } else if (name == "cz") {
            need(2);
            out = dfsnet::cz_gate(net->ctx, net->state, nodes[0], nodes[1]);
        } else if (name == "cnot") {
            need(2);
            out = dfsnet::cnot_gate(net->ctx, net->state, nodes[0], nodes[1]);
        } else if (name == "swap") {
            need(2);
            out = dfsnet::swap_gate(net->ctx, net->state, nodes[0], nodes[1]);
        } else if (name == "bell_prep" || name == "bellprep") {
            need(2);
            out = dfsnet::bell_prep(net->ctx, net->state, nodes[0], nodes[1]);
        } else {
            dfsnet::throw_invalid("unknown gate '" + name + "'");
        }
        net->state = out.post_state;
        if (result != nullptr) {
            result->success = out.success ? 1 : 0;
            std::snprintf(result->detector, sizeof result->detector, "%s",
                          out.detector.c_str());
            result->probability = out.probability;
            result->photons = out.photons_used;
            result->cavity_reflections = out.cavity_reflections;
            result->channel_hops = out.channel_hops;
            result->leakage = out.leakage;
        }
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_teleport(dfsnet_network* net, int node_i, int node_j,
                                      int node_k, int force_m_i, int force_m_j,
                                      dfsnet_teleport_result* result) {
    if (net == nullptr) return fail_invalid("null network handle");
    return guarded([&] {
        std::optional<dfsnet::ForcedBranch> forced;
        if (force_m_i == -1 && force_m_j == -1) {
            // unforced
        } else if ((force_m_i == 0 || force_m_i == 1) &&
                   (force_m_j == 0 || force_m_j == 1)) {
            forced = dfsnet::ForcedBranch{force_m_i, force_m_j};
        } else {
            dfsnet::throw_invalid(
                "force both Bell outcomes to 0/1 or pass -1 for both");
        }
        const dfsnet::TeleportResult out = dfsnet::teleport(
            net->ctx, net->state, node_i, node_j, node_k, forced);
        net->state = out.final_state;
        if (result != nullptr) {
            result->success = out.success ? 1 : 0;
            result->m_i = out.m_i;
            result->m_j = out.m_j;
            std::snprintf(result->correction, sizeof result->correction, "%s",
                          dfsnet::correction_name(out.correction));
            result->branch_probability = out.branch_probability;
            result->herald_probability = out.herald_probability;
            result->total_success_probability = out.total_success_probability;
            result->photons = out.photons_used;
            result->cavity_reflections = out.cavity_reflections;
            result->channel_hops = out.channel_hops;
            result->leakage = out.leakage;
        }
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_readout(const dfsnet_network* net, int node,
                                     dfsnet_readout* out) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        const dfsnet::LogicalReadout ro =
            dfsnet::extract_logical(net->state, net->layout, node);
        switch (ro.dominant) {
            case dfsnet::CodeClass::Logical0:
                out->dominant = 0;
                break;
            case dfsnet::CodeClass::Logical1:
                out->dominant = 1;
                break;
            default:
                out->dominant = 2;
                break;
        }
        out->alpha_re = ro.alpha.real();
        out->alpha_im = ro.alpha.imag();
        out->beta_re = ro.beta.real();
        out->beta_im = ro.beta.imag();
        out->entangled = ro.entangled ? 1 : 0;
        out->p_code0 = ro.p_code0;
        out->p_code1 = ro.p_code1;
        out->p_leak = ro.leakage();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_amplitude(const dfsnet_network* net, const char* bits,
                                       double* re, double* im) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (bits == nullptr) return fail_invalid("null bitstring");
    return guarded([&] {
        const auto amplitudes = dfsnet::logical_amplitudes(net->state, net->layout);
        const auto it = amplitudes.find(bits);
        if (it == amplitudes.end()) {
            dfsnet::throw_invalid("'" + std::string(bits) +
                                  "' is not a logical basis string of this network");
        }
        if (re != nullptr) *re = it->second.real();
        if (im != nullptr) *im = it->second.imag();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_logical_fidelity(const dfsnet_network* net,
                                              size_t count, const char* const* bits,
                                              const double* re, const double* im,
                                              double* out) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        const dfsnet::StateVector target = dfsnet::logical_superposition(
            net->layout, build_coeffs(count, bits, re, im), 1e-6);
        *out = dfsnet::fidelity(net->state, target);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_network_leakage(const dfsnet_network* net, double* out) {
    if (net == nullptr) return fail_invalid("null network handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        *out = dfsnet::code_leakage(net->state, net->layout);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_parse(const char* text, dfsnet_scenario** out) {
    if (text == nullptr) return fail_invalid("null scenario text");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        auto handle = std::make_unique<dfsnet_scenario>();
        handle->sc = dfsnet::parse_scenario(text);
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_load(const char* path, dfsnet_scenario** out) {
    if (path == nullptr) return fail_invalid("null path");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        auto handle = std::make_unique<dfsnet_scenario>();
        handle->sc = dfsnet::load_scenario(path);
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_serialize(const dfsnet_scenario* sc, char** out) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        *out = dup_string(dfsnet::serialize_scenario(sc->sc));
        return DFSNET_OK;
    });
}

void dfsnet_scenario_free(dfsnet_scenario* sc) { delete sc; }

dfsnet_status dfsnet_scenario_set_seed(dfsnet_scenario* sc, uint64_t seed) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    sc->sc.noise.seed = seed;
    return DFSNET_OK;
}

dfsnet_status dfsnet_scenario_set_trials(dfsnet_scenario* sc, int64_t trials) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    return guarded([&] {
        dfsnet::Scenario next = sc->sc;  // leave the handle intact on failure
        next.trials = trials;
        dfsnet::validate_scenario(next);
        sc->sc = std::move(next);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_set_format(dfsnet_scenario* sc, const char* format) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (format == nullptr) return fail_invalid("null format name");
    return guarded([&] {
        const auto parsed = dfsnet::report_format_from_name(format);
        if (!parsed) {
            dfsnet::throw_invalid("format must be 'json' or 'csv'");
        }
        sc->sc.format = *parsed;
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_set_force_branch(dfsnet_scenario* sc, int m_i,
                                               int m_j) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    return guarded([&] {
        dfsnet::Scenario next = sc->sc;  // leave the handle intact on failure
        next.force_branch = dfsnet::ForcedBranch{m_i, m_j};
        dfsnet::validate_scenario(next);
        sc->sc = std::move(next);
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_scenario_run(const dfsnet_scenario* sc, dfsnet_report** out) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        auto handle = std::make_unique<dfsnet_report>();
        handle->rep = dfsnet::run_scenario_report(sc->sc);
        handle->default_format = sc->sc.format;
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_truth_table(const char* protocol, int nodes,
                                 dfsnet_report** out) {
    if (protocol == nullptr) return fail_invalid("null protocol name");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        const auto parsed = dfsnet::scenario_protocol_from_name(protocol);
        if (!parsed) {
            dfsnet::throw_invalid("unknown protocol '" + std::string(protocol) +
                                  "'");
        }
        auto handle = std::make_unique<dfsnet_report>();
        handle->rep = dfsnet::truth_table_report(*parsed, nodes);
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_sweep(const dfsnet_scenario* sc, const char* parameter,
                           const double* grid, size_t grid_size,
                           dfsnet_report** out) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (parameter == nullptr) return fail_invalid("null parameter name");
    if (grid == nullptr && grid_size > 0) return fail_invalid("null grid");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        const auto parsed = dfsnet::sweep_parameter_from_name(parameter);
        if (!parsed) {
            dfsnet::throw_invalid(
                "parameter must be cpf_phase_error, photon_loss, or "
                "dephasing_sigma");
        }
        auto handle = std::make_unique<dfsnet_report>();
        handle->rep = dfsnet::sweep_report(
            sc->sc, *parsed, std::vector<double>(grid, grid + grid_size));
        handle->default_format = sc->sc.format;
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_routing_check(const dfsnet_scenario* sc, dfsnet_report** out) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        auto handle = std::make_unique<dfsnet_report>();
        handle->rep = dfsnet::routing_check_report(sc->sc);
        handle->default_format = sc->sc.format;
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_estimate_time(const dfsnet_scenario* sc, dfsnet_report** out) {
    if (sc == nullptr) return fail_invalid("null scenario handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        auto handle = std::make_unique<dfsnet_report>();
        handle->rep = dfsnet::estimate_time_report(sc->sc);
        handle->default_format = sc->sc.format;
        *out = handle.release();
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_report_render(const dfsnet_report* report, const char* format,
                                   int include_timestamp, char** out) {
    if (report == nullptr) return fail_invalid("null report handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    return guarded([&] {
        dfsnet::RenderOptions opts;
        opts.format = report->default_format;
        if (format != nullptr) {
            const auto parsed = dfsnet::report_format_from_name(format);
            if (!parsed) {
                dfsnet::throw_invalid("format must be 'json' or 'csv'");
            }
            opts.format = *parsed;
        }
        opts.include_timestamp = include_timestamp != 0;
        *out = dup_string(dfsnet::render_report(report->rep, opts));
        return DFSNET_OK;
    });
}

dfsnet_status dfsnet_report_exit_code(const dfsnet_report* report, int* out) {
    if (report == nullptr) return fail_invalid("null report handle");
    if (out == nullptr) return fail_invalid("null out-parameter");
    *out = report->rep.exit_code;
    return DFSNET_OK;
}

void dfsnet_report_free(dfsnet_report* report) { delete report; }

dfsnet_status dfsnet_estimate_gate_time(double kappa_mhz, double g_mhz,
                                        double gamma_mhz, double t_us,
                                        const char* protocol, double* seconds,
                                        double* kappa_t, double* cooperativity,
                                        int* regime_ok) {
    if (protocol == nullptr) return fail_invalid("null protocol name");
    return guarded([&] {
        const auto parsed = dfsnet::protocol_from_name(protocol);
        if (!parsed) {
            dfsnet::throw_invalid("unknown protocol '" + std::string(protocol) +
                                  "'");
        }
        dfsnet::ExperimentalParams params;
        params.kappa_mhz = kappa_mhz;
        params.g_mhz = g_mhz;
        params.gamma_mhz = gamma_mhz;
        params.t_us = t_us;
        const dfsnet::GateTimeEstimate est =
            dfsnet::estimate_gate_time(params, *parsed);
        if (seconds != nullptr) *seconds = est.seconds;
        if (kappa_t != nullptr) *kappa_t = est.kappa_t;
        if (cooperativity != nullptr) *cooperativity = est.cooperativity;
        if (regime_ok != nullptr) *regime_ok = est.regime_ok ? 1 : 0;
        return DFSNET_OK;
    });
}

}  // extern "C"
