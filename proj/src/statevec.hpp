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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rng.hpp"

namespace dfsnet {

// Dense state vector over a labeled register of two-level systems.
//
// Register conventions (fixed across the whole library):
//  * the qubit stored at register position k contributes bit k of the
//    basis index (position 0 is the least significant bit);
//  * atoms are ordered node-major with atom 1 before atom 2;
//  * at most one photon exists and it always sits at the last position;
//    photon polarization |h> is bit value 0 and |v> is bit value 1;
//  * the register never exceeds 14 qubits.

inline constexpr int kMaxRegisterQubits = 14;
inline constexpr int kMaxOracleQubits = 9;
inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kImpossibleBranchTol = 1e-12;

struct QubitLabel {
    enum class Kind { Atom, Photon };

    Kind kind = Kind::Atom;
    int node = -1;  // Atom: owning node index
    int atom = 0;   // Atom: 1 or 2 within the node

    static QubitLabel atom_of(int node, int which) {
        return QubitLabel{Kind::Atom, node, which};
    }
    static QubitLabel photon() { return QubitLabel{Kind::Photon, -1, 0}; }

    friend bool operator==(const QubitLabel&, const QubitLabel&) = default;

    std::string str() const;
};

// One clause of a classical control condition: the labeled qubit must hold
// the given bit value (0 or 1).
struct BitCondition {
    QubitLabel qubit;
    int value = 0;
};

class StateVector;

struct ProjectionResult;  // defined after StateVector; see below

struct MeasureResult {
    int outcome = 0;       // realized bit value
    double probability = 0.0;  // Born probability of that outcome
};

class StateVector {
public:
    StateVector() = default;

    // Computational basis state |index> over the given register.
    static StateVector basis(std::vector<QubitLabel> reg, std::uint64_t index);

    int num_qubits() const { return static_cast<int>(register_.size()); }
    std::uint64_t dim() const { return std::uint64_t{1} << register_.size(); }
    const std::vector<QubitLabel>& labels() const { return register_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& amplitude(std::uint64_t index) const { return amps_[index]; }
    Complex& amplitude_mut(std::uint64_t index) { return amps_[index]; }

    // Register position of a label, or -1 when absent.
    int position_of(const QubitLabel& q) const;
    int require_position(const QubitLabel& q) const;
    bool has_photon() const { return position_of(QubitLabel::photon()) >= 0; }

    double norm_sq() const;

    // Applies a 2^k x 2^k unitary to the k listed target qubits; targets[j]
    // supplies bit j of the small-matrix index. The matrix must be unitary
    // within kUnitaryTol and the targets distinct.
    void apply_unitary(std::span<const QubitLabel> targets, const Matrix& u);

    // Multiplies every basis amplitude whose bits satisfy all conditions by
    // `phase` (|phase| must be 1 within kUnitaryTol). At least one condition
    // is required.
    void controlled_phase(std::span<const BitCondition> conditions, Complex phase);

    // Projects one qubit onto the single-qubit state `onto` (must be unit
    // norm). The post-state drops the qubit from the register.
    ProjectionResult project(const QubitLabel& q, const std::array<Complex, 2>& onto) const;

    // Samples a computational-basis measurement of one qubit via the Born
    // rule; collapses in place. The qubit stays in the register.
    MeasureResult measure(const QubitLabel& q, Rng& rng);

    // Forces one qubit to the given bit value, collapsing in place, and
    // returns the Born probability of that branch. Throws an
    // impossible_branch error when the probability is below
    // kImpossibleBranchTol.
    double postselect_bit(const QubitLabel& q, int value);

    // Probability that the qubit reads the given bit value.
    double bit_probability(const QubitLabel& q, int value) const;

    // Tensors a fresh qubit in state amp0|0> + amp1|1> onto the end of the
    // register.
    void append_qubit(const QubitLabel& q, const std::array<Complex, 2>& amp);

    void scale(Complex factor);

private:
    void check_register() const;
    void collapse_to(const QubitLabel& q, int value, double prob);

    std::vector<QubitLabel> register_;
    std::vector<Complex> amps_;
};

struct ProjectionResult {
    // Born probability of the projected branch.
    double probability = 0.0;
    // Renormalized post-state with the projected qubit removed from the
    // register. Absent when probability < kImpossibleBranchTol.
    std::optional<StateVector> post_state;
};

// |<a|b>|^2; the two registers must hold identical labels in identical order.
double fidelity(const StateVector& a, const StateVector& b);

// Inner product <a|b> under the same register requirement.
Complex overlap(const StateVector& a, const StateVector& b);

// One step of a gate sequence, used by the streaming path and the
// full-matrix oracle alike.
struct GateOp {
    enum class Kind { Unitary, ControlledPhase };

    Kind kind = Kind::Unitary;
    std::vector<QubitLabel> targets;       // Unitary
    Matrix u;                              // Unitary
    std::vector<BitCondition> conditions;  // ControlledPhase
    Complex phase{1.0, 0.0};               // ControlledPhase

    static GateOp unitary(std::vector<QubitLabel> targets, Matrix u);
    static GateOp controlled_phase(std::vector<BitCondition> conditions, Complex phase);
};

// Expands a gate sequence into one explicit 2^n x 2^n matrix over the given
// register (n <= kMaxOracleQubits). Within the product, ops[0] acts first.
// Built by per-op tensor embedding and dense multiplication, independent of
// the streaming apply path, so the two can cross-check each other.
Matrix full_matrix(std::span<const QubitLabel> reg, std::span<const GateOp> ops);

// Applies a gate sequence through the streaming path.
StateVector apply_ops(StateVector state, std::span<const GateOp> ops);

}  // namespace dfsnet
