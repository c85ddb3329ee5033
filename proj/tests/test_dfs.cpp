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

#include "dfs.hpp"
#include "error.hpp"
#include "helpers.hpp"

using namespace dfsnet;

TEST_CASE("layout places atoms node-major, atom 1 in the low bit") {
    const NetworkLayout layout(3);
    CHECK(layout.node_count() == 3);
    const auto reg = layout.atom_labels();
    REQUIRE(reg.size() == 6);
    CHECK(reg[0] == QubitLabel::atom_of(0, 1));
    CHECK(reg[1] == QubitLabel::atom_of(0, 2));
    CHECK(reg[4] == QubitLabel::atom_of(2, 1));
    CHECK(layout.port_name(1) == "port1");
    CHECK(layout.detector_name(1) == "D1");
    CHECK_THROWS_AS(layout.require_node(3), Error);
    CHECK_THROWS_AS(NetworkLayout(0), Error);
    CHECK_THROWS_AS(NetworkLayout(kMaxNodes + 1), Error);
}

TEST_CASE("code words excite exactly one atom per node") {
    const NetworkLayout layout(2);
    // "01": node 0 logical 0 = atoms |10>, node 1 logical 1 = atoms |01>.
    const StateVector s = encode_basis(layout, "01");
    // Register bits: (a1 n0, a2 n0, a1 n1, a2 n1) = (1, 0, 0, 1) -> index 9.
    CHECK(std::abs(s.amplitude(9) - Complex(1.0)) < 1e-15);
    CHECK(code_leakage(s, layout) == doctest::Approx(0.0));

    CHECK_THROWS_AS(encode_basis(layout, "0"), Error);
    CHECK_THROWS_AS(encode_basis(layout, "02"), Error);
}

TEST_CASE("logical superpositions renormalize and validate") {
    const NetworkLayout layout(1);
    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector s =
        logical_superposition(layout, {{"0", inv}, {"1", -inv}});
    CHECK(s.norm_sq() == doctest::Approx(1.0));

    const LogicalReadout ro = extract_logical(s, layout, 0);
    CHECK_FALSE(ro.entangled);
    CHECK(std::abs(ro.alpha - Complex(inv)) < 1e-12);
    CHECK(std::abs(ro.beta - Complex(-inv)) < 1e-12);

    // Norm far from 1 is rejected at the default tolerance.
    CHECK_THROWS_AS(logical_superposition(layout, {{"0", 0.5}}), Error);
    // ... but accepted when the caller loosens it.
    const StateVector loose = logical_superposition(layout, {{"0", 0.5}}, 1.0);
    CHECK(loose.norm_sq() == doctest::Approx(1.0));
    CHECK_THROWS_AS(logical_superposition(layout, {}), Error);
}

TEST_CASE("readout canonicalizes the global phase") {
    const NetworkLayout layout(1);
    // i|1~>: the canonical form makes the dominant coefficient real positive.
    const StateVector s =
        logical_superposition(layout, {{"1", Complex(0.0, 1.0)}});
    const LogicalReadout ro = extract_logical(s, layout, 0);
    CHECK(ro.dominant == CodeClass::Logical1);
    CHECK(std::abs(ro.beta - Complex(1.0)) < 1e-12);
    CHECK(std::abs(ro.alpha) < 1e-12);
    CHECK(ro.p_code1 == doctest::Approx(1.0));
    CHECK(ro.leakage() == doctest::Approx(0.0));
}

TEST_CASE("readout flags entanglement with the rest of the register") {
    const NetworkLayout layout(2);
    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector bell =
        logical_superposition(layout, {{"00", inv}, {"11", inv}});
    const LogicalReadout ro = extract_logical(bell, layout, 0);
    CHECK(ro.entangled);
    CHECK(ro.p_code0 == doctest::Approx(0.5));
    CHECK(ro.p_code1 == doctest::Approx(0.5));

    const StateVector product =
        logical_superposition(layout, {{"00", inv}, {"10", inv}});
    CHECK_FALSE(extract_logical(product, layout, 0).entangled);
    CHECK_FALSE(extract_logical(product, layout, 1).entangled);
}

TEST_CASE("logical fidelity matches the state overlap") {
    const NetworkLayout layout(2);
    Rng rng = make_stream(11, 0);
    const CoeffMap coeffs = dfsnet::testing::random_coeffs(2, rng);
    const StateVector s = logical_superposition(layout, coeffs);
    CHECK(logical_fidelity(s, layout, coeffs) == doctest::Approx(1.0));

    CoeffMap other = coeffs;
    other["00"] = -other["00"];
    const double f = logical_fidelity(s, layout, other);
    CHECK(f >= 0.0);
    CHECK(f < 1.0);
}

TEST_CASE("leakage measures population outside the code space") {
    const NetworkLayout layout(1);
    StateVector s = encode_basis(layout, "0");
    // Rotate atom 1 halfway toward |0>: half the weight leaks to |00>.
    s.apply_unitary(std::vector<QubitLabel>{layout.atom(0, 1)},
                    gates::hadamard());
    CHECK(code_leakage(s, layout) == doctest::Approx(0.5));
    const LogicalReadout ro = extract_logical(s, layout, 0);
    CHECK(ro.p_leak00 == doctest::Approx(0.5));
}

TEST_CASE("logical amplitude map covers every code word") {
    const NetworkLayout layout(2);
    Rng rng = make_stream(3, 0);
    const CoeffMap coeffs = dfsnet::testing::random_coeffs(2, rng);
    const StateVector s = logical_superposition(layout, coeffs);
    const auto amps = logical_amplitudes(s, layout);
    REQUIRE(amps.size() == 4);
    for (const auto& [bits, amp] : coeffs) {
        CHECK(std::abs(amps.at(bits) - amp) < 1e-12);
    }
}
