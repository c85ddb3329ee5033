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

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "dfs.hpp"
#include "noise.hpp"
#include "statevec.hpp"

namespace dfsnet {

// How heralded branches are resolved:
//  - PostSelect: condition on every herald succeeding; probabilities are
//    computed exactly and the post-state is the renormalized success branch.
//  - Sample: draw each herald (and each loss event) from the RNG; failures
//    return success=false with the physical failure-branch state.
enum class HeraldMode { PostSelect, Sample };

struct ExecOptions {
    HeraldMode mode = HeraldMode::PostSelect;
    NoiseSpec noise;
};

// Owns the layout, the noise/mode options, and the RNG used for sampled
// heralds and noise draws. One context drives one sequential execution at a
// time; use separate contexts (with separate streams) for parallel work.
class GateContext {
public:
    explicit GateContext(NetworkLayout layout, ExecOptions opts = {});

    const NetworkLayout& layout() const { return layout_; }
    const ExecOptions& options() const { return opts_; }
    HeraldMode mode() const { return opts_.mode; }
    const NoiseSpec& noise() const { return opts_.noise; }
    Rng& rng() { return rng_; }

    // Rebases the RNG on a fresh sub-stream (e.g. one per Monte Carlo trial).
    void reseed(std::uint64_t seed, std::uint64_t stream = 0);

private:
    friend struct ProtocolScope;
    friend struct PulseSetup;

    NetworkLayout layout_;
    ExecOptions opts_;
    Rng rng_;
    int depth_ = 0;               // nesting depth of composite protocols
    std::int64_t pulses_emitted_ = 0;
};

// Result of one heralded protocol (elementary or composite).
struct HeraldedOutcome {
    bool success = false;
    std::string detector;        // detector that heralds success (e.g. "D1")
    // Born probability of everything that happened: heralding projections,
    // photon-survival factors, and (in Sample mode) the realized branch.
    double probability = 1.0;
    StateVector post_state;      // photon-free; normalized
    int photons_used = 0;
    int cavity_reflections = 0;
    int channel_hops = 0;
    double leakage = 0.0;        // code-space leakage of post_state
    bool photon_lost = false;
    std::string failure_stage;   // empty on success
};

// Deterministic logical flip: photon-assisted, always heralded under ideal
// parameters (the |h> ancilla photon is detected with certainty).
HeraldedOutcome logical_x(GateContext& ctx, const StateVector& state, int node);

// Deterministic logical phase flip: |0~> -> |0~>, |1~> -> -|1~>.
HeraldedOutcome logical_z(GateContext& ctx, const StateVector& state, int node);

// Heralded logical Hadamard; success probability 1/2 ideal, detector D(node).
// On success: |0~> -> (|0~>+|1~>)/sqrt(2), |1~> -> (|0~>-|1~>)/sqrt(2).
HeraldedOutcome hadamard_gate(GateContext& ctx, const StateVector& state, int node);

// Heralded controlled-Z between the logical qubits of two nodes; success
// probability 1/2 ideal, detector D(node_j).
HeraldedOutcome cz_gate(GateContext& ctx, const StateVector& state, int node_i, int node_j);

// CNOT = H(target) . CZ(control, target) . H(target); probability (1/2)^3.
HeraldedOutcome cnot_gate(GateContext& ctx, const StateVector& state, int control,
                          int target);

// SWAP = CNOT(i,j) . CNOT(j,i) . CNOT(i,j); probability (1/2)^9.
HeraldedOutcome swap_gate(GateContext& ctx, const StateVector& state, int i, int j);

// (|0~0~> + |1~1~>)/sqrt(2) on nodes (j,k) from |0~0~>: H(j) then CNOT(j,k).
HeraldedOutcome bell_prep(GateContext& ctx, const StateVector& state, int j, int k);

// Forces the four-atom measurement of bell_measure onto a chosen branch
// (conditioning instead of sampling), so every branch is reachable
// deterministically.
struct ForcedBranch {
    int m_i = 0;
    int m_j = 0;
};

struct BellMeasurement {
    bool success = false;
    int m_i = -1;  // logical outcome at node i
    int m_j = -1;  // logical outcome at node j
    bool leaked = false;  // a measured node was outside the code space
    // Joint Born probability of the four atom outcomes (1/4 per branch ideal).
    double branch_probability = 0.0;
    // Product of the photonic herald probabilities of the sub-gates.
    double herald_probability = 1.0;
    StateVector post_state;
    int photons_used = 0;
    int cavity_reflections = 0;
    int channel_hops = 0;
    std::string failure_stage;
};

// Logical Bell measurement on nodes (i, j): CNOT(i,j), then H(i), then
// measure both atoms of i and j (atom 1 before atom 2, node i before j).
BellMeasurement bell_measure(GateContext& ctx, const StateVector& state, int node_i,
                             int node_j, std::optional<ForcedBranch> forced = {});

enum class Correction { Identity, X, Z, ZX };
const char* correction_name(Correction c);  // "I", "X", "Z", "ZX"

// Correction table keyed by the Bell-measurement outcomes (m_i, m_j):
// (0,0) -> I, (0,1) -> X, (1,0) -> Z, (1,1) -> ZX (X applied first).
Correction table_correction(int m_i, int m_j);

struct TeleportResult {
    bool success = false;
    int m_i = -1;
    int m_j = -1;
    Correction correction = Correction::Identity;
    StateVector final_state;
    double branch_probability = 0.0;  // of the (m_i, m_j) outcome, 1/4 ideal
    double herald_probability = 1.0;  // photonic heralds across all sub-gates
    double total_success_probability = 0.0;  // herald x branch
    int photons_used = 0;
    int cavity_reflections = 0;
    int channel_hops = 0;
    double leakage = 0.0;
    std::string failure_stage;
};

// Teleports the logical state of node i onto node k: Bell pair on (j,k),
// Bell measurement on (i,j), correction on k per the table above. Nodes j
// and k must start in |0~0~>.
TeleportResult teleport(GateContext& ctx, const StateVector& state, int node_i, int node_j,
                        int node_k, std::optional<ForcedBranch> forced = {});

// ---------------------------------------------------------------------------
// Protocol catalog, budgets, and timing
// ---------------------------------------------------------------------------

enum class Protocol { XGate, ZGate, Hadamard, CZ, CNOT, Swap, BellPrep, Teleport };

struct ProtocolStats {
    int photons = 0;
    int cavity_reflections = 0;
    int channel_hops = 0;
    double herald_probability = 1.0;  // ideal
};

ProtocolStats protocol_stats(Protocol p);
const char* protocol_name(Protocol p);
std::optional<Protocol> protocol_from_name(std::string_view name);

struct ExperimentalParams {
    double kappa_mhz = 4.0;  // cavity linewidth kappa/2pi
    double g_mhz = 30.0;     // atom-cavity coupling g/2pi
    double gamma_mhz = 2.6;  // atomic linewidth Gamma/2pi
    double t_us = 5.0;       // duration of one reflection pulse

    void validate() const;
};

struct GateTimeEstimate {
    double seconds = 0.0;
    double kappa_t = 0.0;        // kappa * T (dimensionless; want >= 50)
    double cooperativity = 0.0;  // g^2 / (kappa * Gamma)
    bool regime_ok = false;
};

// Wall-clock estimate: cavity reflections x pulse duration, with the
// long-pulse regime check (kappa*T >= 50).
GateTimeEstimate estimate_gate_time(const ExperimentalParams& params, Protocol p);

// ---------------------------------------------------------------------------
// Repeat-until-success
// ---------------------------------------------------------------------------

struct RepeatResult {
    HeraldedOutcome outcome;  // first success, or the last failure if exhausted
    int attempts = 0;
    bool exhausted = false;
};

// Re-prepares and retries a heralded gate until it succeeds (geometric
// attempt count in Sample mode; PostSelect always succeeds on the first try).
RepeatResult repeat_until_success(
    GateContext& ctx, const std::function<StateVector()>& prepare,
    const std::function<HeraldedOutcome(GateContext&, const StateVector&)>& gate,
    int max_attempts);

}  // namespace dfsnet
