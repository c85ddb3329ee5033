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

#include <cstdint>
#include <functional>
#include <vector>

#include "dfs.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace dfsnet {

// ---------------------------------------------------------------------------
// Noise model
// ---------------------------------------------------------------------------

enum class DephasingKind { Off, Uniform, Gaussian };

// Whether each node draws its own phase or all nodes share one.
enum class DephasingScope { PerNode, Global };

// When the phase kicks strike during a protocol: once before it starts,
// between consecutive photon pulses, or both.
enum class DephasingEpoch { Before, Between, Both };

// Trajectory-level noise knobs. All default to the ideal (noiseless) model.
struct NoiseSpec {
    DephasingKind dephasing = DephasingKind::Off;
    double dephasing_sigma = 0.0;  // radians; Gaussian width
    DephasingScope scope = DephasingScope::PerNode;
    DephasingEpoch epoch = DephasingEpoch::Between;
    double loss_reflection = 0.0;  // photon-loss probability per cavity reflection
    double loss_hop = 0.0;         // photon-loss probability per inter-node hop
    double cpf_phase_error = 0.0;  // the conditional phase becomes pi + this (radians)
    std::uint64_t seed = 0;

    bool any_dephasing() const { return dephasing != DephasingKind::Off; }
    bool any_loss() const { return loss_reflection > 0.0 || loss_hop > 0.0; }
    void validate() const;
};

// ---------------------------------------------------------------------------
// Collective dephasing
// ---------------------------------------------------------------------------

// Applies the collective phase e^{i*phi} to the |1> level of BOTH atoms of
// the node (the same phi — the atoms share the environment). On a code word
// this is a single global factor e^{i*phi}: exactly one atom is excited.
void collective_dephasing(StateVector& state, const NetworkLayout& layout, int node,
                          double phi);

// One phase per node drawn from the configured distribution (Global scope
// draws a single shared value).
std::vector<double> draw_dephasing_phases(const NoiseSpec& spec, const NetworkLayout& layout,
                                          Rng& rng);

// Draws fresh phases and applies them to every node.
void apply_dephasing_draw(StateVector& state, const NetworkLayout& layout,
                          const NoiseSpec& spec, Rng& rng);

// Control experiment: the same phase channel on a bare one-atom qubit
// prepared in (|0>+|1>)/sqrt(2). Returns the mean fidelity against the
// initial state over `trials` draws (analytically: 1/2 for Uniform).
double bare_qubit_control_mean(const NoiseSpec& spec, std::int64_t trials,
                               std::uint64_t seed);

// ---------------------------------------------------------------------------
// Ensemble statistics and the Monte Carlo harness
// ---------------------------------------------------------------------------

// Online mean/variance accumulator (Welford).
class RunningStat {
public:
    void add(double x);
    std::int64_t count() const { return n_; }
    double mean() const { return n_ > 0 ? mean_ : 0.0; }
    double variance() const;  // sample variance (n-1 denominator)
    double stddev() const;
    double std_error() const;  // stddev / sqrt(n)

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct EnsembleStats {
    std::int64_t trials = 0;
    std::int64_t herald_count = 0;
    double herald_rate = 0.0;
    double herald_stderr = 0.0;
    // Mean over heralded (successful) trials only.
    double conditional_fidelity = 0.0;
    double fidelity_stderr = 0.0;
    double leakage_rate = 0.0;
};

struct TrialResult {
    bool heralded = false;
    double fidelity = 0.0;  // meaningful when heralded
    double leakage = 0.0;
};

using TrialFn = std::function<TrialResult(Rng& rng, std::int64_t trial_index)>;

// Runs `trials` independent trials, each on its own RNG sub-stream derived
// from (seed, trial index); deterministic for a fixed seed.
EnsembleStats monte_carlo(std::int64_t trials, std::uint64_t seed, const TrialFn& fn);

}  // namespace dfsnet
