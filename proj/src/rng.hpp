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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dfsnet {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
// Avoids std::uniform_real_distribution so that streams are reproducible
// across standard library implementations.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_angle(Rng& rng) {
    return uniform01(rng) * 2.0 * std::numbers::pi;
}

// Box-Muller with a fixed draw order; one sample per call (the sine twin is
// discarded to keep the stream layout independent of call parity).
inline double gaussian(Rng& rng, double sigma) {
    double u1 = 0.0;
    do {
        u1 = uniform01(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform01(rng);
    return sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// Deterministic sub-stream for (seed, stream index); used to give every
// Monte Carlo trial its own independent generator.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

}  // namespace dfsnet
