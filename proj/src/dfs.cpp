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

#include "dfs.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace dfsnet {

NetworkLayout::NetworkLayout(int node_count) : node_count_(node_count) {
    if (node_count < 1 || node_count > kMaxNodes) {
        throw_invalid("node count must be between 1 and " + std::to_string(kMaxNodes));
    }
}

void NetworkLayout::require_node(int node) const {
    if (node < 0 || node >= node_count_) {
        throw_invalid("node " + std::to_string(node) + " is outside the layout");
    }
}

QubitLabel NetworkLayout::atom(int node, int which) const {
    require_node(node);
    if (which != 1 && which != 2) throw_invalid("atom index must be 1 or 2");
    return QubitLabel::atom_of(node, which);
}

std::vector<QubitLabel> NetworkLayout::atom_labels() const {
    std::vector<QubitLabel> labels;
    labels.reserve(static_cast<std::size_t>(node_count_) * 2);
    for (int n = 0; n < node_count_; ++n) {
        labels.push_back(QubitLabel::atom_of(n, 1));
        labels.push_back(QubitLabel::atom_of(n, 2));
    }
    return labels;
}

std::string NetworkLayout::port_name(int node) const {
    require_node(node);
    return "port" + std::to_string(node);
}

std::string NetworkLayout::detector_name(int node) const {
    require_node(node);
    return "D" + std::to_string(node);
}

namespace {

void check_bits(const NetworkLayout& layout, std::string_view bits) {
    if (static_cast<int>(bits.size()) != layout.node_count()) {
        throw_invalid("logical bitstring length must equal the node count");
    }
    for (char c : bits) {
        if (c != '0' && c != '1') throw_invalid("logical bitstring may contain only 0/1");
    }
}

// Basis index of the code word, over the canonical atom register.
// Logical 0 excites atom 1 (register position 2n), logical 1 excites
// atom 2 (position 2n + 1).
std::uint64_t codeword_index(const NetworkLayout& layout, std::string_view bits) {
    std::uint64_t index = 0;
    for (int n = 0; n < layout.node_count(); ++n) {
        const int offset = bits[static_cast<std::size_t>(n)] == '0' ? 0 : 1;
        index |= std::uint64_t{1} << (2 * n + offset);
    }
    return index;
}

}  // namespace

StateVector encode_basis(const NetworkLayout& layout, std::string_view bits) {
    check_bits(layout, bits);
    return StateVector::basis(layout.atom_labels(), codeword_index(layout, bits));
}

StateVector logical_superposition(const NetworkLayout& layout, const CoeffMap& coeffs,
                                  double norm_tol) {
    if (coeffs.empty()) throw_invalid("logical superposition requires coefficients");
    double norm = 0.0;
    for (const auto& [bits, amp] : coeffs) {
        check_bits(layout, bits);
        norm += std::norm(amp);
    }
    if (std::abs(norm - 1.0) > norm_tol) {
        throw_validation("logical coefficients are not normalized");
    }
    StateVector state = StateVector::basis(layout.atom_labels(), 0);
    state.amplitude_mut(0) = Complex{};
    const double inv = 1.0 / std::sqrt(norm);
    for (const auto& [bits, amp] : coeffs) {
        state.amplitude_mut(codeword_index(layout, bits)) = amp * inv;
    }
    return state;
}

LogicalReadout extract_logical(const StateVector& state, const NetworkLayout& layout,
                               int node) {
    layout.require_node(node);
    const int p1 = state.require_position(layout.atom(node, 1));
    const int p2 = state.require_position(layout.atom(node, 2));
    const std::uint64_t b1 = std::uint64_t{1} << p1;
    const std::uint64_t b2 = std::uint64_t{1} << p2;

    // Gather the four residual-register blocks, one per two-atom
    // configuration of this node. Block order: 00, 10, 01, 11 keyed by
    // (atom1, atom2).
    const std::uint64_t rest_dim = state.dim() >> 2;
    std::vector<std::vector<Complex>> block(4, std::vector<Complex>(rest_dim));
    for (std::uint64_t i = 0, r = 0; i < state.dim(); ++i) {
        if (i & (b1 | b2)) continue;
        // i iterates the indices whose two node bits are clear; scatter the
        // four node configurations relative to it.
        block[0][r] = state.amplitude(i);
        block[1][r] = state.amplitude(i | b1);
        block[2][r] = state.amplitude(i | b2);
        block[3][r] = state.amplitude(i | b1 | b2);
        ++r;
    }

    LogicalReadout out;
    double pop[4];
    for (int c = 0; c < 4; ++c) {
        double p = 0.0;
        for (const Complex& a : block[c]) p += std::norm(a);
        pop[c] = p;
    }
    out.p_leak00 = pop[0];
    out.p_code0 = pop[1];
    out.p_code1 = pop[2];
    out.p_leak11 = pop[3];

    const CodeClass by_pop[4] = {CodeClass::Leak00, CodeClass::Logical0,
                                 CodeClass::Logical1, CodeClass::Leak11};
    int dominant = 0;
    for (int c = 1; c < 4; ++c) {
        if (pop[c] > pop[dominant]) dominant = c;
    }
    out.dominant = by_pop[dominant];

    // The node factors out iff all nonzero blocks are parallel
    // (Cauchy-Schwarz equality against the dominant block).
    constexpr double tol = 1e-9;
    for (int c = 0; c < 4; ++c) {
        if (c == dominant || pop[c] <= tol * tol) continue;
        Complex inner{};
        for (std::uint64_t r = 0; r < rest_dim; ++r) {
            inner += std::conj(block[dominant][r]) * block[c][r];
        }
        if (std::abs(std::norm(inner) - pop[dominant] * pop[c]) > tol) {
            out.entangled = true;
            break;
        }
    }
    if (out.entangled) return out;

    // Unentangled: coefficients are overlaps with the shared residual
    // factor. Fix the global phase by the largest-magnitude coefficient.
    const double inv = 1.0 / std::sqrt(pop[dominant]);
    Complex z[4];
    for (int c = 0; c < 4; ++c) {
        Complex inner{};
        for (std::uint64_t r = 0; r < rest_dim; ++r) {
            inner += std::conj(block[dominant][r]) * block[c][r];
        }
        z[c] = inner * inv;
    }
    int largest = 0;
    for (int c = 1; c < 4; ++c) {
        if (std::abs(z[c]) > std::abs(z[largest]) + 1e-15) largest = c;
    }
    Complex rotate{1.0, 0.0};
    if (std::abs(z[largest]) > 0.0) {
        rotate = std::abs(z[largest]) / z[largest];
    }
    out.alpha = z[1] * rotate;
    out.beta = z[2] * rotate;
    return out;
}

double logical_fidelity(const StateVector& state, const NetworkLayout& layout,
                        const CoeffMap& target) {
    return fidelity(logical_superposition(layout, target), state);
}

double code_leakage(const StateVector& state, const NetworkLayout& layout) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> node_bits;
    for (int n = 0; n < layout.node_count(); ++n) {
        const int p1 = state.require_position(layout.atom(n, 1));
        const int p2 = state.require_position(layout.atom(n, 2));
        node_bits.emplace_back(std::uint64_t{1} << p1, std::uint64_t{1} << p2);
    }
    double in_code = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        bool ok = true;
        for (const auto& [b1, b2] : node_bits) {
            if (((i & b1) != 0) == ((i & b2) != 0)) {
                ok = false;
                break;
            }
        }
        if (ok) in_code += std::norm(state.amplitude(i));
    }
    return std::max(0.0, state.norm_sq() - in_code);
}

std::map<std::string, Complex> logical_amplitudes(const StateVector& state,
                                                  const NetworkLayout& layout) {
    if (state.labels() != layout.atom_labels()) {
        throw_invalid("logical amplitudes require the canonical photon-free register");
    }
    std::map<std::string, Complex> out;
    const int n = layout.node_count();
    for (std::uint64_t logical = 0; logical < (std::uint64_t{1} << n); ++logical) {
        std::string bits(static_cast<std::size_t>(n), '0');
        for (int k = 0; k < n; ++k) {
            if (logical & (std::uint64_t{1} << k)) bits[static_cast<std::size_t>(k)] = '1';
        }
        out[bits] = state.amplitude(codeword_index(layout, bits));
    }
    return out;
}

}  // namespace dfsnet
