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

// Shared generators for tests: random register states, random gate
// sequences for the streaming-vs-dense cross-check, and random logical
// payloads.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dfs.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace dfsnet::testing {

// Haar-ish random state over the given register (Gaussian components,
// normalized).
inline StateVector random_state(std::vector<QubitLabel> reg, Rng& rng) {
    StateVector state = StateVector::basis(std::move(reg), 0);
    double norm_sq = 0.0;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        const Complex a(gaussian(rng, 1.0), gaussian(rng, 1.0));
        state.amplitude_mut(k) = a;
        norm_sq += std::norm(a);
    }
    state.scale(1.0 / std::sqrt(norm_sq));
    return state;
}

// Random normalized single-qubit pair (alpha, beta).
inline std::pair<Complex, Complex> random_payload(Rng& rng) {
    const Complex a(gaussian(rng, 1.0), gaussian(rng, 1.0));
    const Complex b(gaussian(rng, 1.0), gaussian(rng, 1.0));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

// Random CoeffMap over all logical words of `nodes` nodes.
inline CoeffMap random_coeffs(int nodes, Rng& rng) {
    CoeffMap coeffs;
    double norm_sq = 0.0;
    const std::uint64_t count = std::uint64_t{1} << nodes;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::string bits(static_cast<std::size_t>(nodes), '0');
        for (int n = 0; n < nodes; ++n) {
            if ((idx >> (nodes - 1 - n)) & 1u) bits[static_cast<std::size_t>(n)] = '1';
        }
        const Complex a(gaussian(rng, 1.0), gaussian(rng, 1.0));
        coeffs[bits] = a;
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& [bits, amp] : coeffs) amp *= scale;
    return coeffs;
}

// Random single-qubit unitary: e^{i a Z} e^{i b X} rotation composed from
// elementary blocks (exactly unitary up to rounding).
inline Matrix random_unitary1(Rng& rng) {
    const double a = uniform_angle(rng);
    const double b = uniform_angle(rng);
    const double c = uniform_angle(rng);
    const Complex i(0.0, 1.0);
    Matrix u(2);
    // Rz(a) * Ry(b) * Rz(c) Euler decomposition.
    const Complex e_a = std::exp(i * (a / 2.0));
    const Complex e_c = std::exp(i * (c / 2.0));
    const double cb = std::cos(b / 2.0);
    const double sb = std::sin(b / 2.0);
    u.at(0, 0) = std::conj(e_a) * std::conj(e_c) * cb;
    u.at(0, 1) = -std::conj(e_a) * e_c * sb;
    u.at(1, 0) = e_a * std::conj(e_c) * sb;
    u.at(1, 1) = e_a * e_c * cb;
    return u;
}

// Random gate sequence of `count` ops over the register: single-qubit
// unitaries, adjacent-pair entanglers, and multi-controlled phases.
inline std::vector<GateOp> random_ops(const std::vector<QubitLabel>& reg, int count,
                                      Rng& rng) {
    std::vector<GateOp> ops;
    ops.reserve(static_cast<std::size_t>(count));
    const int n = static_cast<int>(reg.size());
    for (int k = 0; k < count; ++k) {
        const double pick = uniform01(rng);
        if (pick < 0.4 || n < 2) {
            const int q = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            ops.push_back(GateOp::unitary({reg[static_cast<std::size_t>(q)]},
                                          random_unitary1(rng)));
        } else if (pick < 0.75) {
            const int q = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
            const Matrix u = uniform01(rng) < 0.5 ? gates::cnot() : gates::swap2();
            ops.push_back(GateOp::unitary({reg[static_cast<std::size_t>(q)],
                                           reg[static_cast<std::size_t>(q + 1)]},
                                          u));
        } else {
            const int conds = 1 + static_cast<int>(rng() % 2);
            std::vector<BitCondition> conditions;
            int q = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            for (int c = 0; c < conds; ++c) {
                conditions.push_back(BitCondition{
                    reg[static_cast<std::size_t>((q + c) % n)],
                    static_cast<int>(rng() % 2)});
            }
            const double theta = uniform_angle(rng);
            ops.push_back(GateOp::controlled_phase(
                std::move(conditions), std::exp(Complex(0.0, theta))));
        }
    }
    return ops;
}

// Largest per-amplitude deviation between two states over one register.
inline double max_amplitude_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < a.dim(); ++k) {
        worst = std::max(worst, std::abs(a.amplitude(k) - b.amplitude(k)));
    }
    return worst;
}

}  // namespace dfsnet::testing
