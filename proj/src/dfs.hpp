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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "statevec.hpp"

namespace dfsnet {

// Logical encoding: each node holds two atoms, and one logical qubit lives
// in the single-excitation subspace
//     |0_L> = |1>_atom1 |0>_atom2      |1_L> = |0>_atom1 |1>_atom2.
// The |00> and |11> two-atom states are leakage outside the code space.

inline constexpr int kMaxNodes = 6;

class NetworkLayout {
public:
    explicit NetworkLayout(int node_count);

    int node_count() const { return node_count_; }
    void require_node(int node) const;

    QubitLabel atom(int node, int which) const;
    // All atom labels, node-major, atom 1 before atom 2. This is the
    // canonical photon-free register.
    std::vector<QubitLabel> atom_labels() const;

    std::string port_name(int node) const;
    std::string detector_name(int node) const;

private:
    int node_count_ = 0;
};

// Logical coefficient map keyed by bitstrings of length node_count, most
// significant node first ("01" = node 0 in |0_L>, node 1 in |1_L>).
using CoeffMap = std::map<std::string, Complex>;

// Product code word |b_0 b_1 ...> over all nodes.
StateVector encode_basis(const NetworkLayout& layout, std::string_view bits);

// Normalized superposition of code words. The coefficients must already be
// normalized within norm_tol; they are then renormalized exactly.
StateVector logical_superposition(const NetworkLayout& layout, const CoeffMap& coeffs,
                                  double norm_tol = 1e-9);

enum class CodeClass { Logical0, Logical1, Leak00, Leak11 };

struct LogicalReadout {
    // Dominant two-atom configuration by population.
    CodeClass dominant = CodeClass::Logical0;
    // Logical amplitudes for the node, valid when `entangled` is false.
    // The global phase is fixed by making the largest-magnitude coefficient
    // real and nonnegative.
    Complex alpha{};
    Complex beta{};
    bool entangled = false;
    // Two-atom populations keyed by (atom1, atom2) bits.
    double p_code0 = 0.0;   // |10>
    double p_code1 = 0.0;   // |01>
    double p_leak00 = 0.0;  // |00>
    double p_leak11 = 0.0;  // |11>

    double leakage() const { return p_leak00 + p_leak11; }
};

// Reads one node's logical content out of an arbitrary register state.
// When the node is entangled with the rest of the register only the
// populations are meaningful and `entangled` is set.
LogicalReadout extract_logical(const StateVector& state, const NetworkLayout& layout,
                               int node);

// |<target|state>|^2 against a logical superposition target.
double logical_fidelity(const StateVector& state, const NetworkLayout& layout,
                        const CoeffMap& target);

// Total state weight outside the code space (any node in |00> or |11>).
double code_leakage(const StateVector& state, const NetworkLayout& layout);

// Amplitude of every code word. Requires the photon-free canonical register.
std::map<std::string, Complex> logical_amplitudes(const StateVector& state,
                                                  const NetworkLayout& layout);

}  // namespace dfsnet
