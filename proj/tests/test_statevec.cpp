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
#include <vector>

#include "error.hpp"
#include "helpers.hpp"
#include "statevec.hpp"

using namespace dfsnet;
using dfsnet::testing::max_amplitude_diff;
using dfsnet::testing::random_ops;
using dfsnet::testing::random_state;

namespace {

std::vector<QubitLabel> atoms(int count) {
    std::vector<QubitLabel> reg;
    for (int k = 0; k < count; ++k) {
        reg.push_back(QubitLabel::atom_of(k, 1));
    }
    return reg;
}

}  // namespace

TEST_CASE("basis states put the amplitude at the right index") {
    StateVector s = StateVector::basis(atoms(3), 5);
    CHECK(s.dim() == 8);
    CHECK(s.amplitude(5) == Complex(1.0, 0.0));
    CHECK(s.norm_sq() == doctest::Approx(1.0));
    CHECK(s.bit_probability(QubitLabel::atom_of(0, 1), 1) == doctest::Approx(1.0));
    CHECK(s.bit_probability(QubitLabel::atom_of(1, 1), 0) == doctest::Approx(1.0));
    CHECK(s.bit_probability(QubitLabel::atom_of(2, 1), 1) == doctest::Approx(1.0));
}

TEST_CASE("single-qubit unitaries act on the labeled position") {
    StateVector s = StateVector::basis(atoms(2), 0);
    s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(1, 1)},
                    gates::pauli_x());
    CHECK(std::abs(s.amplitude(2) - Complex(1.0)) < 1e-15);

    s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(0, 1)},
                    gates::hadamard());
    CHECK(std::abs(s.amplitude(2) - Complex(1.0 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(s.amplitude(3) - Complex(1.0 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("two-qubit gate bit order: first target is the low bit") {
    // cnot(): control on bit 1, target on bit 0 of the small index; the
    // first listed register qubit supplies bit 0.
    StateVector s = StateVector::basis(atoms(2), 0);
    const QubitLabel target = QubitLabel::atom_of(0, 1);  // bit 0 of the pair
    const QubitLabel control = QubitLabel::atom_of(1, 1);  // bit 1 of the pair
    s.apply_unitary(std::vector<QubitLabel>{target, control}, gates::cnot());
    CHECK(std::abs(s.amplitude(0) - Complex(1.0)) < 1e-15);  // control 0: no-op

    StateVector t = StateVector::basis(atoms(2), 2);  // control set
    t.apply_unitary(std::vector<QubitLabel>{target, control}, gates::cnot());
    CHECK(std::abs(t.amplitude(3) - Complex(1.0)) < 1e-15);  // target flipped
}

TEST_CASE("controlled phase touches only matching components") {
    StateVector s = StateVector::basis(atoms(2), 0);
    s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(0, 1)},
                    gates::hadamard());
    s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(1, 1)},
                    gates::hadamard());
    const std::vector<BitCondition> conds{{QubitLabel::atom_of(0, 1), 1},
                                          {QubitLabel::atom_of(1, 1), 1}};
    s.controlled_phase(conds, Complex(-1.0, 0.0));
    CHECK(std::abs(s.amplitude(0) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(s.amplitude(1) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(s.amplitude(2) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(s.amplitude(3) - Complex(-0.5)) < 1e-12);
}

TEST_CASE("projection drops the qubit and reports the Born weight") {
    StateVector s = StateVector::basis(atoms(2), 0);
    s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(0, 1)},
                    gates::hadamard());
    const std::array<Complex, 2> plus{Complex(1.0 / std::sqrt(2.0)),
                                      Complex(1.0 / std::sqrt(2.0))};
    const ProjectionResult r = s.project(QubitLabel::atom_of(0, 1), plus);
    CHECK(r.probability == doctest::Approx(1.0));
    REQUIRE(r.post_state.has_value());
    CHECK(r.post_state->num_qubits() == 1);
    CHECK(r.post_state->norm_sq() == doctest::Approx(1.0));

    // Projecting |0> onto |1> is an impossible branch: no post-state.
    StateVector zero = StateVector::basis(atoms(1), 0);
    const std::array<Complex, 2> one{Complex(0.0), Complex(1.0)};
    const ProjectionResult none = zero.project(QubitLabel::atom_of(0, 1), one);
    CHECK(none.probability < 1e-15);
    CHECK_FALSE(none.post_state.has_value());
}

TEST_CASE("measurement on a basis state is deterministic") {
    StateVector s = StateVector::basis(atoms(2), 2);
    Rng rng = make_stream(1, 0);
    const MeasureResult m = s.measure(QubitLabel::atom_of(1, 1), rng);
    CHECK(m.outcome == 1);
    CHECK(m.probability == doctest::Approx(1.0));
    CHECK(s.norm_sq() == doctest::Approx(1.0));
}

TEST_CASE("postselecting an impossible branch throws") {
    StateVector s = StateVector::basis(atoms(1), 0);
    try {
        s.postselect_bit(QubitLabel::atom_of(0, 1), 1);
        FAIL("expected an impossible-branch error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::impossible_branch);
    }
}

TEST_CASE("append_qubit tensors a fresh qubit at the end") {
    StateVector s = StateVector::basis(atoms(1), 1);
    const double inv = 1.0 / std::sqrt(2.0);
    s.append_qubit(QubitLabel::photon(), {Complex(inv), Complex(inv)});
    CHECK(s.num_qubits() == 2);
    CHECK(s.has_photon());
    CHECK(std::abs(s.amplitude(1) - Complex(inv)) < 1e-12);
    CHECK(std::abs(s.amplitude(3) - Complex(inv)) < 1e-12);
    CHECK(s.position_of(QubitLabel::photon()) == 1);
}

TEST_CASE("non-unitary matrices are rejected") {
    StateVector s = StateVector::basis(atoms(1), 0);
    Matrix bad(2);
    bad.at(0, 0) = 2.0;  // not norm preserving
    bad.at(1, 1) = 1.0;
    try {
        s.apply_unitary(std::vector<QubitLabel>{QubitLabel::atom_of(0, 1)}, bad);
        FAIL("expected an invalid-argument error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
    }
}

TEST_CASE("duplicate targets and missing labels are rejected") {
    StateVector s = StateVector::basis(atoms(2), 0);
    const QubitLabel a = QubitLabel::atom_of(0, 1);
    try {
        s.apply_unitary(std::vector<QubitLabel>{a, a}, gates::cnot());
        FAIL("expected an invalid-argument error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
    }
    CHECK(s.position_of(QubitLabel::atom_of(5, 1)) == -1);
    try {
        s.require_position(QubitLabel::atom_of(5, 1));
        FAIL("expected an invalid-argument error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
    }
}

TEST_CASE("register size cap is enforced") {
    std::vector<QubitLabel> reg;
    for (int k = 0; k < kMaxRegisterQubits + 1; ++k) {
        reg.push_back(QubitLabel::atom_of(k, 1));
    }
    CHECK_THROWS_AS(StateVector::basis(reg, 0), Error);
}

TEST_CASE("fidelity and overlap behave like inner products") {
    Rng rng = make_stream(42, 0);
    const StateVector a = random_state(atoms(3), rng);
    const StateVector b = random_state(atoms(3), rng);
    CHECK(fidelity(a, a) == doctest::Approx(1.0));
    CHECK(fidelity(a, b) == doctest::Approx(std::norm(overlap(a, b))));
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)));
}

TEST_CASE("streaming path matches the dense oracle on random sequences") {
    Rng rng = make_stream(7, 0);
    for (int round = 0; round < 25; ++round) {
        const int n = 2 + static_cast<int>(rng() % 4);  // 2..5 qubits
        const std::vector<QubitLabel> reg = atoms(n);
        const std::vector<GateOp> ops = random_ops(reg, 8, rng);
        const StateVector input = random_state(reg, rng);

        const StateVector streamed = apply_ops(input, ops);
        const Matrix u = full_matrix(reg, ops);
        CHECK(u.is_unitary(1e-9));

        StateVector dense = input;
        const std::vector<Complex> out =
            u.apply(std::vector<Complex>(input.amplitudes().begin(),
                                         input.amplitudes().end()));
        for (std::uint64_t k = 0; k < dense.dim(); ++k) {
            dense.amplitude_mut(k) = out[k];
        }
        CHECK(max_amplitude_diff(streamed, dense) < 1e-9);
    }
}

TEST_CASE("dense oracle refuses oversized registers") {
    std::vector<QubitLabel> reg = atoms(kMaxOracleQubits + 1);
    CHECK_THROWS_AS(full_matrix(reg, std::vector<GateOp>{}), Error);
}

TEST_CASE("logical flip network equals the atom swap, photon untouched") {
    // CNOT(2->1), H(2), conditional phase, H(2), CNOT(2->1) acts as a swap
    // of the two atom values when the photon is horizontal, and as the
    // identity when it is vertical.
    const QubitLabel a1 = QubitLabel::atom_of(0, 1);
    const QubitLabel a2 = QubitLabel::atom_of(0, 2);
    const QubitLabel ph = QubitLabel::photon();
    const std::vector<QubitLabel> reg{a1, a2, ph};

    std::vector<GateOp> ops;
    ops.push_back(GateOp::unitary({a1, a2}, gates::cnot()));
    ops.push_back(GateOp::unitary({a2}, gates::hadamard()));
    ops.push_back(GateOp::controlled_phase(
        {BitCondition{a1, 1}, BitCondition{a2, 1}, BitCondition{ph, 0}},
        Complex(-1.0, 0.0)));
    ops.push_back(GateOp::unitary({a2}, gates::hadamard()));
    ops.push_back(GateOp::unitary({a1, a2}, gates::cnot()));
    const Matrix u = full_matrix(reg, ops);

    Matrix expected = Matrix::identity(8);
    // Photon |h> (bit 2 clear): swap atom bits 01 <-> 10.
    expected.at(1, 1) = 0.0;
    expected.at(2, 2) = 0.0;
    expected.at(1, 2) = 1.0;
    expected.at(2, 1) = 1.0;
    CHECK(u.max_abs_diff(expected) < 1e-12);
}
