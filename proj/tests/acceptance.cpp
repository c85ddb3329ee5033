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

// Acceptance gate: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dfs.hpp"
#include "helpers.hpp"
#include "noise.hpp"
#include "optics.hpp"
#include "protocols.hpp"
#include "rng.hpp"
#include "statevec.hpp"

using namespace dfsnet;
using dfsnet::testing::max_amplitude_diff;
using dfsnet::testing::random_coeffs;
using dfsnet::testing::random_ops;
using dfsnet::testing::random_payload;
using dfsnet::testing::random_state;

namespace {

constexpr double kAmpTol = 1e-9;
constexpr double kExactTol = 1e-12;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --------------------------------------------------------------------------
// Criterion 1: heralded Hadamard maps the code basis onto the +/- states
// with success probability exactly 1/2, in under a second.
// --------------------------------------------------------------------------
Check criterion_hadamard(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const NetworkLayout layout(1);
    GateContext ctx{layout};
    const double inv = 1.0 / std::sqrt(2.0);

    const HeraldedOutcome plus = hadamard_gate(ctx, encode_basis(layout, "0"), 0);
    c.require(plus.success, "herald on |0> did not fire");
    c.require(std::abs(plus.probability - 0.5) <= kExactTol,
              "herald probability on |0> is " + fmt(plus.probability));
    const StateVector want_plus =
        logical_superposition(layout, {{"0", inv}, {"1", inv}});
    c.require(std::abs(overlap(want_plus, plus.post_state) - Complex(1.0)) <= kAmpTol,
              "output of H|0> deviates from (|0>+|1>)/sqrt(2)");

    const HeraldedOutcome minus = hadamard_gate(ctx, encode_basis(layout, "1"), 0);
    c.require(minus.success, "herald on |1> did not fire");
    c.require(std::abs(minus.probability - 0.5) <= kExactTol,
              "herald probability on |1> is " + fmt(minus.probability));
    const StateVector want_minus =
        logical_superposition(layout, {{"0", inv}, {"1", -inv}});
    c.require(
        std::abs(overlap(want_minus, minus.post_state) - Complex(1.0)) <= kAmpTol,
        "output of H|1> deviates from (|0>-|1>)/sqrt(2)");

    elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "took " + fmt(elapsed) + " s (budget 1 s)");
    return c;
}

// --------------------------------------------------------------------------
// Criterion 2: controlled-Z on 50 random two-node states reproduces the
// (a,b,c,d) -> (a,b,c,-d) map to 1e-9 with herald exactly 1/2.
// --------------------------------------------------------------------------
Check criterion_cz(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const NetworkLayout layout(2);
    GateContext ctx{layout};
    Rng rng = make_stream(20260501, 2);

    for (int rep = 0; rep < 50 && c.ok; ++rep) {
        const CoeffMap in = random_coeffs(2, rng);
        CoeffMap want = in;
        want["11"] = -want["11"];

        const HeraldedOutcome out =
            cz_gate(ctx, logical_superposition(layout, in), 0, 1);
        c.require(out.success, "herald did not fire");
        c.require(std::abs(out.probability - 0.5) <= kExactTol,
                  "herald probability is " + fmt(out.probability));
        const StateVector ref = logical_superposition(layout, want);
        const double diff = max_amplitude_diff(ref, out.post_state);
        c.require(diff <= kAmpTol,
                  "tuple " + std::to_string(rep) + ": amplitude deviation " +
                      fmt(diff));
    }

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 3: the swap protocol exchanges two random logical states
// (including a spectator-entangled case) and matches an independently built
// dense permutation oracle.
// --------------------------------------------------------------------------
Check criterion_swap(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    Rng rng = make_stream(20260501, 3);

    {
        const NetworkLayout layout(2);
        GateContext ctx{layout};
        const auto [a0, b0] = random_payload(rng);
        const auto [a1, b1] = random_payload(rng);
        const CoeffMap in{{"00", a0 * a1},
                          {"01", a0 * b1},
                          {"10", b0 * a1},
                          {"11", b0 * b1}};
        const StateVector input = logical_superposition(layout, in);
        const HeraldedOutcome out = swap_gate(ctx, input, 0, 1);
        c.require(out.success, "herald did not fire");

        CoeffMap want;
        for (const auto& [word, amp] : in) want[{word[1], word[0]}] = amp;
        const StateVector ref = logical_superposition(layout, want);
        c.require(max_amplitude_diff(ref, out.post_state) <= kAmpTol,
                  "swapped product state deviates from the relabeled input");

        // Independent oracle: the dense matrix of the two physical
        // atom-pair exchanges must map the input onto the same state.
        const std::vector<GateOp> ops{
            GateOp::unitary({layout.atom(0, 1), layout.atom(1, 1)}, gates::swap2()),
            GateOp::unitary({layout.atom(0, 2), layout.atom(1, 2)}, gates::swap2()),
        };
        const Matrix dense = full_matrix(input.labels(), ops);
        const std::vector<Complex> mapped =
            dense.apply({input.amplitudes().begin(), input.amplitudes().end()});
        double worst = 0.0;
        for (std::uint64_t k = 0; k < out.post_state.dim(); ++k) {
            worst = std::max(worst,
                             std::abs(mapped[k] - out.post_state.amplitude(k)));
        }
        c.require(worst <= kAmpTol,
                  "dense permutation oracle deviates by " + fmt(worst));
    }

    {
        // Entangled with a spectator: nodes 0 and 2 share a Bell pair.
        const NetworkLayout layout(3);
        GateContext ctx{layout};
        const double inv = 1.0 / std::sqrt(2.0);
        const StateVector input = logical_superposition(
            layout, {{"000", inv}, {"101", inv}});
        const HeraldedOutcome out = swap_gate(ctx, input, 0, 1);
        c.require(out.success, "herald did not fire (spectator case)");
        const StateVector ref = logical_superposition(
            layout, {{"000", inv}, {"011", inv}});
        c.require(max_amplitude_diff(ref, out.post_state) <= kAmpTol,
                  "entanglement did not move with the swapped qubit");
    }

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 4: teleportation of 100 random payloads across every forced
// Bell branch: unit fidelity, branch probability 1/4, and the published
// correction table.
// --------------------------------------------------------------------------
Check criterion_teleport(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const NetworkLayout layout(3);
    GateContext ctx{layout};
    Rng rng = make_stream(20260501, 4);
    const Correction table[2][2] = {{Correction::Identity, Correction::X},
                                    {Correction::Z, Correction::ZX}};

    for (int rep = 0; rep < 100 && c.ok; ++rep) {
        const auto [alpha, beta] = random_payload(rng);
        const StateVector input = logical_superposition(
            layout, {{"000", alpha}, {"100", beta}});
        for (int mi = 0; mi < 2 && c.ok; ++mi) {
            for (int mj = 0; mj < 2 && c.ok; ++mj) {
                const TeleportResult r =
                    teleport(ctx, input, 0, 1, 2, ForcedBranch{mi, mj});
                c.require(r.success, "teleport herald did not fire");
                c.require(r.m_i == mi && r.m_j == mj, "branch forcing ignored");
                c.require(std::abs(r.branch_probability - 0.25) <= kAmpTol,
                          "branch probability " + fmt(r.branch_probability));
                c.require(r.correction == table[mi][mj],
                          "correction table mismatch on branch (" +
                              std::to_string(mi) + "," + std::to_string(mj) + ")");
                const std::string head =
                    std::to_string(mi) + std::to_string(mj);
                const StateVector want = logical_superposition(
                    layout, {{head + "0", alpha}, {head + "1", beta}});
                const double fid = fidelity(want, r.final_state);
                c.require(std::abs(fid - 1.0) <= kAmpTol,
                          "payload " + std::to_string(rep) + " branch (" +
                              std::to_string(mi) + "," + std::to_string(mj) +
                              "): fidelity " + fmt(fid));
            }
        }
    }

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 5: collective dephasing leaves code states untouched to 1e-12
// while the bare-qubit control decoheres to mean fidelity 1/2.
// --------------------------------------------------------------------------
Check criterion_dephasing(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const NetworkLayout layout(3);
    NoiseSpec spec;
    spec.dephasing = DephasingKind::Uniform;
    spec.scope = DephasingScope::PerNode;

    Rng rng = make_stream(20260501, 5);
    for (int rep = 0; rep < 40 && c.ok; ++rep) {
        const StateVector state =
            logical_superposition(layout, random_coeffs(3, rng));
        for (int draw = 0; draw < 5 && c.ok; ++draw) {
            StateVector kicked = state;
            apply_dephasing_draw(kicked, layout, spec, rng);
            const double fid = fidelity(state, kicked);
            c.require(std::abs(fid - 1.0) <= kExactTol,
                      "state " + std::to_string(rep) + " draw " +
                          std::to_string(draw) + ": code fidelity " + fmt(fid));
        }
    }

    const double control = bare_qubit_control_mean(spec, 100000, 20260501);
    c.require(std::abs(control - 0.5) <= 0.01,
              "bare-qubit control mean " + fmt(control) + " (want 0.5 +/- 0.01)");

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 6: Monte Carlo Hadamard under 10% per-reflection photon loss:
// herald rate within 3 sigma of 0.405 over 1e5 trials; survivors exact.
// --------------------------------------------------------------------------
Check criterion_loss(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const NetworkLayout layout(1);

    ExecOptions opts;
    opts.mode = HeraldMode::Sample;
    opts.noise.loss_reflection = 0.1;
    GateContext ctx(layout, opts);

    GateContext ideal_ctx{layout};
    const StateVector input = encode_basis(layout, "1");
    const StateVector ideal = hadamard_gate(ideal_ctx, input, 0).post_state;

    const std::int64_t trials = 100000;
    std::int64_t heralds = 0;
    double worst_fid = 1.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        ctx.reseed(20260818, static_cast<std::uint64_t>(t));
        const HeraldedOutcome out = hadamard_gate(ctx, input, 0);
        if (out.success) {
            ++heralds;
            worst_fid = std::min(worst_fid, fidelity(ideal, out.post_state));
        }
    }
    const double expected = 0.5 * 0.9 * 0.9;  // 0.405
    const double sigma = std::sqrt(expected * (1.0 - expected) /
                                   static_cast<double>(trials));
    const double rate = static_cast<double>(heralds) / static_cast<double>(trials);
    c.require(std::abs(rate - expected) <= 3.0 * sigma,
              "herald rate " + fmt(rate) + " outside 0.405 +/- 3*" + fmt(sigma));
    c.require(std::abs(worst_fid - 1.0) <= kAmpTol,
              "worst conditional fidelity " + fmt(worst_fid));

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 7: pulse routing. The single-node standard schedule walks the
// published loop and ends at Di; the static two-node schedule ends at Dj;
// the early-switch timeline also validates. Each check under 0.1 s.
// --------------------------------------------------------------------------
Check criterion_routing(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();

    {
        const auto t0 = std::chrono::steady_clock::now();
        const TableDocument doc = single_node_table();
        const ScheduleValidation v = validate_schedule(
            doc.table, doc.schedules.at("standard"),
            doc.expected_paths.at("hadamard"), "port_i");
        c.require(v.ok, "single-node standard schedule diverged: " + v.message);
        c.require(v.route.detected &&
                      !v.route.steps.empty() &&
                      v.route.steps.back().label == "Di",
                  "single-node pulse did not end at Di");
        const double dt = seconds_since(t0);
        c.require(dt < 0.1, "single-node check took " + fmt(dt) + " s");
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        const TableDocument doc = single_node_table();
        const ScheduleValidation v = validate_schedule(
            doc.table, doc.schedules.at("early_switch"),
            doc.expected_paths.at("hadamard"), "port_i");
        c.require(v.ok, "early-switch schedule diverged: " + v.message);
        const double dt = seconds_since(t0);
        c.require(dt < 0.1, "early-switch check took " + fmt(dt) + " s");
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        const TableDocument doc = two_node_table();
        const ScheduleValidation v = validate_schedule(
            doc.table, doc.schedules.at("cz_forward"),
            doc.expected_paths.at("cz_forward"), "port_i");
        c.require(v.ok, "two-node static schedule diverged: " + v.message);
        c.require(v.route.detected &&
                      !v.route.steps.empty() &&
                      v.route.steps.back().label == "Dj",
                  "two-node pulse did not end at Dj");
        const double dt = seconds_since(t0);
        c.require(dt < 0.1, "two-node check took " + fmt(dt) + " s");
    }

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 8: wall-clock estimates. For pulse durations across 3..5 us the
// Hadamard and CNOT complete within the microsecond decade band, and the
// long-pulse condition kappa*T >= 50 holds at kappa/2pi = 4 MHz.
// --------------------------------------------------------------------------
Check criterion_timing(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();

    for (double t_us : {3.0, 3.5, 4.0, 4.5, 5.0}) {
        ExperimentalParams params;
        params.t_us = t_us;
        for (Protocol p : {Protocol::Hadamard, Protocol::CNOT}) {
            const GateTimeEstimate est = estimate_gate_time(params, p);
            const double decade = std::round(std::log10(est.seconds));
            c.require(decade == -6.0 || decade == -5.0,
                      std::string(protocol_name(p)) + " at T=" + fmt(t_us) +
                          " us runs in " + fmt(est.seconds) +
                          " s, outside the expected decades");
            c.require(est.kappa_t >= 50.0,
                      "kappa*T = " + fmt(est.kappa_t) + " < 50 at T=" +
                          fmt(t_us) + " us");
            c.require(est.regime_ok, "long-pulse regime flag not set");
        }
    }

    elapsed = seconds_since(start);
    return c;
}

// --------------------------------------------------------------------------
// Criterion 9: 200 random gate sequences on 2..6-qubit registers agree with
// the dense matrix oracle to 1e-9 per amplitude, in under a minute.
// --------------------------------------------------------------------------
Check criterion_streaming(double& elapsed) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    Rng rng = make_stream(20260501, 9);

    for (int rep = 0; rep < 200 && c.ok; ++rep) {
        const int qubits = 2 + static_cast<int>(rng() % 5);  // 2..6
        std::vector<QubitLabel> reg;
        for (int q = 0; q < qubits; ++q) {
            reg.push_back(QubitLabel::atom_of(q / 2, 1 + (q % 2)));
        }
        const StateVector input = random_state(reg, rng);
        const std::vector<GateOp> ops = random_ops(reg, 10, rng);

        const StateVector streamed = apply_ops(input, ops);
        const Matrix dense = full_matrix(reg, ops);
        const std::vector<Complex> mapped =
            dense.apply({input.amplitudes().begin(), input.amplitudes().end()});

        double worst = 0.0;
        for (std::uint64_t k = 0; k < streamed.dim(); ++k) {
            worst = std::max(worst, std::abs(mapped[k] - streamed.amplitude(k)));
        }
        c.require(worst <= kAmpTol, "sequence " + std::to_string(rep) + " (" +
                                        std::to_string(qubits) +
                                        " qubits): deviation " + fmt(worst));
    }

    elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "took " + fmt(elapsed) + " s (budget 60 s)");
    return c;
}

struct Criterion {
    const char* name;
    std::function<Check(double&)> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"heralded hadamard basis action", criterion_hadamard},
        {"controlled-z on 50 random tuples", criterion_cz},
        {"swap of random logical states vs dense oracle", criterion_swap},
        {"teleportation across all forced branches", criterion_teleport},
        {"code-space immunity to collective dephasing", criterion_dephasing},
        {"herald statistics under photon loss", criterion_loss},
        {"pulse routing through switch schedules", criterion_routing},
        {"gate-duration decade and long-pulse regime", criterion_timing},
        {"streaming engine vs dense matrix oracle", criterion_streaming},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& cr : criteria) {
        ++index;
        double elapsed = 0.0;
        Check result;
        try {
            result = cr.run(elapsed);
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("unexpected error: ") + e.what();
        }
        if (result.ok) {
            std::printf("[PASS] criterion %d: %s (%.1f ms)\n", index, cr.name,
                        elapsed * 1e3);
        } else {
            std::printf("[FAIL] criterion %d: %s — %s\n", index, cr.name,
                        result.detail.c_str());
            ++failures;
        }
    }

    if (failures == 0) {
        std::printf("all %d criteria passed\n", index);
        return 0;
    }
    std::printf("%d of %d criteria failed\n", failures, index);
    return 1;
}
