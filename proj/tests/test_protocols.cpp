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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dfs.hpp"
#include "error.hpp"
#include "helpers.hpp"
#include "protocols.hpp"
#include "rng.hpp"
#include "statevec.hpp"

using namespace dfsnet;
using dfsnet::testing::random_payload;

namespace {

constexpr double kTol = 1e-12;
const double kInv2 = 1.0 / std::sqrt(2.0);

GateContext ideal_context(int nodes) {
    return GateContext(NetworkLayout(nodes));
}

}  // namespace

TEST_CASE("logical flip: deterministic herald and truth table") {
    const NetworkLayout layout(1);
    GateContext ctx = ideal_context(1);

    for (const char* word : {"0", "1"}) {
        const StateVector in = encode_basis(layout, word);
        const HeraldedOutcome out = logical_x(ctx, in, 0);
        REQUIRE(out.success);
        CHECK(out.probability == doctest::Approx(1.0).epsilon(kTol));
        CHECK(out.detector == layout.detector_name(0));
        CHECK(out.photons_used == 1);
        CHECK(out.cavity_reflections == 1);
        CHECK(out.channel_hops == 0);
        const std::string flipped = (word[0] == '0') ? "1" : "0";
        CHECK(logical_fidelity(out.post_state, layout, {{flipped, 1.0}}) ==
              doctest::Approx(1.0).epsilon(kTol));
        CHECK(out.leakage == doctest::Approx(0.0).epsilon(kTol));
    }
}

TEST_CASE("logical phase flip: |1~> acquires -1, |0~> untouched") {
    const NetworkLayout layout(1);
    GateContext ctx = ideal_context(1);

    const StateVector plus =
        logical_superposition(layout, {{"0", kInv2}, {"1", kInv2}});
    const HeraldedOutcome out = logical_z(ctx, plus, 0);
    REQUIRE(out.success);
    CHECK(out.probability == doctest::Approx(1.0).epsilon(kTol));
    const StateVector minus =
        logical_superposition(layout, {{"0", kInv2}, {"1", -kInv2}});
    CHECK(std::abs(overlap(minus, out.post_state) - Complex(1.0)) < 1e-9);
}

TEST_CASE("logical X and Z anticommute") {
    const NetworkLayout layout(1);
    GateContext ctx = ideal_context(1);
    const StateVector in =
        logical_superposition(layout, {{"0", 0.6}, {"1", Complex(0.0, 0.8)}});

    const StateVector xz = logical_z(ctx, logical_x(ctx, in, 0).post_state, 0).post_state;
    const StateVector zx = logical_x(ctx, logical_z(ctx, in, 0).post_state, 0).post_state;
    CHECK(std::abs(overlap(xz, zx) - Complex(-1.0)) < 1e-9);
}

TEST_CASE("heralded Hadamard: exact 1/2 success and the +/- map") {
    const NetworkLayout layout(1);
    GateContext ctx = ideal_context(1);

    const HeraldedOutcome on0 = hadamard_gate(ctx, encode_basis(layout, "0"), 0);
    REQUIRE(on0.success);
    CHECK(on0.probability == doctest::Approx(0.5).epsilon(kTol));
    CHECK(on0.detector == layout.detector_name(0));
    CHECK(on0.photons_used == 1);
    CHECK(on0.cavity_reflections == 2);
    CHECK(on0.channel_hops == 0);
    CHECK(logical_fidelity(on0.post_state, layout, {{"0", kInv2}, {"1", kInv2}}) ==
          doctest::Approx(1.0).epsilon(1e-9));

    const HeraldedOutcome on1 = hadamard_gate(ctx, encode_basis(layout, "1"), 0);
    REQUIRE(on1.success);
    CHECK(on1.probability == doctest::Approx(0.5).epsilon(kTol));
    CHECK(logical_fidelity(on1.post_state, layout, {{"0", kInv2}, {"1", -kInv2}}) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // H^2 = identity on the code space.
    const HeraldedOutcome twice = hadamard_gate(ctx, on0.post_state, 0);
    REQUIRE(twice.success);
    CHECK(logical_fidelity(twice.post_state, layout, {{"0", 1.0}}) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("controlled-Z phases exactly the |1~1~> component") {
    const NetworkLayout layout(2);
    GateContext ctx = ideal_context(2);

    for (const char* word : {"00", "01", "10", "11"}) {
        const HeraldedOutcome out = cz_gate(ctx, encode_basis(layout, word), 0, 1);
        REQUIRE(out.success);
        CHECK(out.probability == doctest::Approx(0.5).epsilon(kTol));
        CHECK(out.detector == layout.detector_name(1));
        CHECK(out.photons_used == 1);
        CHECK(out.cavity_reflections == 2);
        CHECK(out.channel_hops == 1);
        const double sign = (std::string(word) == "11") ? -1.0 : 1.0;
        CoeffMap target{{word, sign}};
        CHECK(logical_fidelity(out.post_state, layout, target) ==
              doctest::Approx(1.0).epsilon(1e-9));
        // Sign check (fidelity alone is phase-blind): compare full states.
        const StateVector ref = logical_superposition(layout, target);
        CHECK(std::abs(overlap(ref, out.post_state) - Complex(1.0)) < 1e-9);
    }

    const StateVector even = logical_superposition(
        layout, {{"00", 0.5}, {"01", 0.5}, {"10", 0.5}, {"11", 0.5}});
    const HeraldedOutcome out = cz_gate(ctx, even, 0, 1);
    REQUIRE(out.success);
    const StateVector want = logical_superposition(
        layout, {{"00", 0.5}, {"01", 0.5}, {"10", 0.5}, {"11", -0.5}});
    CHECK(std::abs(overlap(want, out.post_state) - Complex(1.0)) < 1e-9);
}

TEST_CASE("CNOT truth table with the composite 1/8 herald") {
    const NetworkLayout layout(2);
    GateContext ctx = ideal_context(2);
    const std::map<std::string, std::string> table{
        {"00", "00"}, {"01", "01"}, {"10", "11"}, {"11", "10"}};

    for (const auto& [in_word, out_word] : table) {
        const HeraldedOutcome out = cnot_gate(ctx, encode_basis(layout, in_word), 0, 1);
        REQUIRE(out.success);
        CHECK(out.probability == doctest::Approx(1.0 / 8.0).epsilon(kTol));
        CHECK(out.photons_used == 3);
        CHECK(out.cavity_reflections == 6);
        CHECK(out.channel_hops == 1);
        const StateVector want = encode_basis(layout, out_word);
        CHECK(std::abs(overlap(want, out.post_state) - Complex(1.0)) < 1e-9);
    }

    // Entangling action: control |+~> and target |0~> make a logical Bell pair.
    const StateVector plus0 =
        logical_superposition(layout, {{"00", kInv2}, {"10", kInv2}});
    const HeraldedOutcome out = cnot_gate(ctx, plus0, 0, 1);
    REQUIRE(out.success);
    const StateVector bell =
        logical_superposition(layout, {{"00", kInv2}, {"11", kInv2}});
    CHECK(std::abs(overlap(bell, out.post_state) - Complex(1.0)) < 1e-9);
}

TEST_CASE("swap exchanges arbitrary logical payloads") {
    const NetworkLayout layout(2);
    GateContext ctx = ideal_context(2);
    Rng rng = make_stream(411, 0);

    for (int rep = 0; rep < 5; ++rep) {
        const auto [a0, b0] = random_payload(rng);
        const auto [a1, b1] = random_payload(rng);
        const CoeffMap in{{"00", a0 * a1},
                          {"01", a0 * b1},
                          {"10", b0 * a1},
                          {"11", b0 * b1}};
        // Swapping nodes exchanges the bitstring positions.
        CoeffMap want;
        for (const auto& [word, c] : in) {
            want[std::string{word[1], word[0]}] = c;
        }
        const HeraldedOutcome out =
            swap_gate(ctx, logical_superposition(layout, in), 0, 1);
        REQUIRE(out.success);
        CHECK(out.probability == doctest::Approx(1.0 / 512.0).epsilon(kTol));
        CHECK(out.photons_used == 9);
        CHECK(out.cavity_reflections == 18);
        CHECK(out.channel_hops == 3);
        const StateVector ref = logical_superposition(layout, want);
        CHECK(fidelity(ref, out.post_state) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("swap carries entanglement with a spectator node") {
    const NetworkLayout layout(3);
    GateContext ctx = ideal_context(3);

    // Nodes 0 and 2 share a Bell pair; node 1 is |0~>. Swapping 0<->1 must
    // move the correlation onto nodes 1 and 2.
    const StateVector in = logical_superposition(
        layout, {{"000", kInv2}, {"101", kInv2}});
    const HeraldedOutcome out = swap_gate(ctx, in, 0, 1);
    REQUIRE(out.success);
    const StateVector want = logical_superposition(
        layout, {{"000", kInv2}, {"011", kInv2}});
    CHECK(fidelity(want, out.post_state) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("entangler prepares the logical Bell state at 1/16") {
    const NetworkLayout layout(2);
    GateContext ctx = ideal_context(2);
    const HeraldedOutcome out = bell_prep(ctx, encode_basis(layout, "00"), 0, 1);
    REQUIRE(out.success);
    CHECK(out.probability == doctest::Approx(1.0 / 16.0).epsilon(kTol));
    CHECK(out.photons_used == 4);
    CHECK(out.cavity_reflections == 8);
    CHECK(out.channel_hops == 1);
    const StateVector bell =
        logical_superposition(layout, {{"00", kInv2}, {"11", kInv2}});
    CHECK(std::abs(overlap(bell, out.post_state) - Complex(1.0)) < 1e-9);
}

TEST_CASE("teleportation: every forced branch restores the payload") {
    const NetworkLayout layout(3);
    GateContext ctx = ideal_context(3);
    Rng rng = make_stream(2026, 5);
    const Correction expect_corr[2][2] = {
        {Correction::Identity, Correction::X},
        {Correction::Z, Correction::ZX}};

    for (int rep = 0; rep < 20; ++rep) {
        const auto [alpha, beta] = random_payload(rng);
        const StateVector in = logical_superposition(
            layout, {{"000", alpha}, {"100", beta}});
        for (int mi = 0; mi < 2; ++mi) {
            for (int mj = 0; mj < 2; ++mj) {
                const TeleportResult r =
                    teleport(ctx, in, 0, 1, 2, ForcedBranch{mi, mj});
                REQUIRE(r.success);
                CHECK(r.m_i == mi);
                CHECK(r.m_j == mj);
                CHECK(r.correction == expect_corr[mi][mj]);
                CHECK(r.correction == table_correction(mi, mj));
                CHECK(r.branch_probability == doctest::Approx(0.25).epsilon(1e-9));
                CHECK(r.herald_probability ==
                      doctest::Approx(1.0 / 256.0).epsilon(kTol));
                CHECK(r.total_success_probability ==
                      doctest::Approx(0.25 / 256.0).epsilon(1e-9));
                // Base cost 8 photons / 16 reflections, plus one photon and
                // one reflection per applied Pauli correction.
                CHECK(r.photons_used == 8 + mi + mj);
                CHECK(r.cavity_reflections == 16 + mi + mj);
                CHECK(r.channel_hops == 2);
                CHECK(r.leakage == doctest::Approx(0.0).epsilon(kTol));

                // Nodes i and j collapse to the measured words; k carries the
                // payload.
                const std::string head =
                    std::to_string(mi) + std::to_string(mj);
                const StateVector want = logical_superposition(
                    layout, {{head + "0", alpha}, {head + "1", beta}});
                CHECK(fidelity(want, r.final_state) ==
                      doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("correction table and names") {
    CHECK(table_correction(0, 0) == Correction::Identity);
    CHECK(table_correction(0, 1) == Correction::X);
    CHECK(table_correction(1, 0) == Correction::Z);
    CHECK(table_correction(1, 1) == Correction::ZX);
    CHECK(std::string(correction_name(Correction::Identity)) == "I");
    CHECK(std::string(correction_name(Correction::X)) == "X");
    CHECK(std::string(correction_name(Correction::Z)) == "Z");
    CHECK(std::string(correction_name(Correction::ZX)) == "ZX");
}

TEST_CASE("teleportation preserves entanglement with a spectator") {
    const NetworkLayout layout(4);
    GateContext ctx = ideal_context(4);

    // Node 0 is entangled with node 3; teleporting 0 -> 2 must leave node 2
    // entangled with node 3 in the same way.
    const StateVector in = logical_superposition(
        layout, {{"0000", kInv2}, {"1001", kInv2}});
    const TeleportResult r = teleport(ctx, in, 0, 1, 2, ForcedBranch{0, 0});
    REQUIRE(r.success);
    const StateVector want = logical_superposition(
        layout, {{"0000", kInv2}, {"0011", kInv2}});
    CHECK(fidelity(want, r.final_state) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unforced teleportation samples the four branches uniformly") {
    const NetworkLayout layout(3);
    GateContext ctx = ideal_context(3);
    const StateVector in = logical_superposition(
        layout, {{"000", 0.6}, {"100", Complex(0.0, 0.8)}});

    int counts[2][2] = {{0, 0}, {0, 0}};
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        ctx.reseed(77, static_cast<std::uint64_t>(t));
        const TeleportResult r = teleport(ctx, in, 0, 1, 2);
        REQUIRE(r.success);  // PostSelect mode: heralds always succeed
        REQUIRE(r.m_i >= 0);
        REQUIRE(r.m_j >= 0);
        counts[r.m_i][r.m_j]++;
        CHECK(r.branch_probability == doctest::Approx(0.25).epsilon(1e-9));
    }
    // Each branch is Binomial(trials, 1/4): mean 500, sigma ~9.7.
    for (int mi = 0; mi < 2; ++mi) {
        for (int mj = 0; mj < 2; ++mj) {
            CHECK(counts[mi][mj] > 400);
            CHECK(counts[mi][mj] < 600);
        }
    }
}

TEST_CASE("teleportation validates its node arguments") {
    const NetworkLayout layout(3);
    GateContext ctx = ideal_context(3);
    const StateVector in = encode_basis(layout, "000");
    CHECK_THROWS_AS(teleport(ctx, in, 0, 0, 2), Error);
    CHECK_THROWS_AS(teleport(ctx, in, 0, 1, 1), Error);
    CHECK_THROWS_AS(teleport(ctx, in, 2, 1, 2), Error);
    CHECK_THROWS_AS(cz_gate(ctx, in, 1, 1), Error);
    CHECK_THROWS_AS(swap_gate(ctx, in, 2, 2), Error);
}

TEST_CASE("repeat-until-success: geometric attempts when sampling") {
    const NetworkLayout layout(1);

    ExecOptions sample_opts;
    sample_opts.mode = HeraldMode::Sample;
    GateContext ctx(layout, sample_opts);
    ctx.reseed(99, 0);

    const auto prepare = [&] { return encode_basis(layout, "0"); };
    const auto gate = [](GateContext& c, const StateVector& s) {
        return hadamard_gate(c, s, 0);
    };

    RunningStat attempts;
    for (int t = 0; t < 10000; ++t) {
        const RepeatResult r = repeat_until_success(ctx, prepare, gate, 200);
        REQUIRE(r.outcome.success);
        CHECK_FALSE(r.exhausted);
        attempts.add(static_cast<double>(r.attempts));
    }
    // Geometric with p = 1/2: mean 2, sd sqrt(2); stderr ~0.014.
    CHECK(attempts.mean() == doctest::Approx(2.0).epsilon(0.05));

    // PostSelect mode heralds deterministically on the first try.
    GateContext exact(layout);
    const RepeatResult one = repeat_until_success(exact, prepare, gate, 200);
    CHECK(one.attempts == 1);
    REQUIRE(one.outcome.success);

    // Exhaustion is reported, not thrown.
    const auto never = [](GateContext& c, const StateVector& s) {
        HeraldedOutcome out = hadamard_gate(c, s, 0);
        out.success = false;
        return out;
    };
    const RepeatResult failed = repeat_until_success(exact, prepare, never, 3);
    CHECK(failed.exhausted);
    CHECK(failed.attempts == 3);
    CHECK_FALSE(failed.outcome.success);
}

TEST_CASE("protocol catalog: budgets, names, and herald probabilities") {
    struct Row {
        Protocol p;
        const char* name;
        int photons, reflections, hops;
        double herald;
    };
    const Row rows[] = {
        {Protocol::XGate, "x", 1, 1, 0, 1.0},
        {Protocol::ZGate, "z", 1, 1, 0, 1.0},
        {Protocol::Hadamard, "hadamard", 1, 2, 0, 0.5},
        {Protocol::CZ, "cz", 1, 2, 1, 0.5},
        {Protocol::CNOT, "cnot", 3, 6, 1, 1.0 / 8.0},
        {Protocol::Swap, "swap", 9, 18, 3, 1.0 / 512.0},
        {Protocol::BellPrep, "bell_prep", 4, 8, 1, 1.0 / 16.0},
        {Protocol::Teleport, "teleport", 8, 16, 2, 1.0 / 256.0},
    };
    for (const Row& row : rows) {
        const ProtocolStats st = protocol_stats(row.p);
        CHECK(st.photons == row.photons);
        CHECK(st.cavity_reflections == row.reflections);
        CHECK(st.channel_hops == row.hops);
        CHECK(st.herald_probability == doctest::Approx(row.herald).epsilon(kTol));
        CHECK(std::string(protocol_name(row.p)) == row.name);
        REQUIRE(protocol_from_name(row.name).has_value());
        CHECK(*protocol_from_name(row.name) == row.p);
    }
    CHECK_FALSE(protocol_from_name("nope").has_value());
    CHECK(protocol_from_name("h") == Protocol::Hadamard);
    CHECK(protocol_from_name("xgate") == Protocol::XGate);
}

TEST_CASE("gate-time estimates from the cavity parameters") {
    ExperimentalParams params;  // defaults: kappa 4, g 30, gamma 2.6, T 5us
    params.validate();

    const GateTimeEstimate cnot = estimate_gate_time(params, Protocol::CNOT);
    CHECK(cnot.seconds == doctest::Approx(3.0e-5).epsilon(1e-12));
    CHECK(cnot.kappa_t ==
          doctest::Approx(2.0 * std::numbers::pi * 4.0 * 5.0).epsilon(1e-12));
    CHECK(cnot.cooperativity ==
          doctest::Approx(900.0 / (4.0 * 2.6)).epsilon(1e-12));
    CHECK(cnot.regime_ok);

    const GateTimeEstimate h = estimate_gate_time(params, Protocol::Hadamard);
    CHECK(h.seconds == doctest::Approx(1.0e-5).epsilon(1e-12));

    // Short pulses leave the adiabatic regime.
    ExperimentalParams fast = params;
    fast.t_us = 1.0;
    CHECK_FALSE(estimate_gate_time(fast, Protocol::CNOT).regime_ok);

    ExperimentalParams bad = params;
    bad.kappa_mhz = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
}
