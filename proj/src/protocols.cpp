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

#include "protocols.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "error.hpp"
#include "matrix.hpp"
#include "optics.hpp"
#include "rng.hpp"

namespace dfsnet {

namespace {

const std::array<Complex, 2> kPhotonH{Complex(1.0, 0.0), Complex(0.0, 0.0)};
const std::array<Complex, 2> kPhotonDiag{Complex(1.0 / std::numbers::sqrt2, 0.0),
                                         Complex(1.0 / std::numbers::sqrt2, 0.0)};

}  // namespace

// Counts the nesting of protocol invocations so that the per-protocol pulse
// counter resets only when the outermost protocol begins: composite gates
// dephase between all of their pulses, not per sub-gate.
struct ProtocolScope {
    explicit ProtocolScope(GateContext& ctx) : ctx_(ctx) {
        if (ctx_.depth_ == 0) ctx_.pulses_emitted_ = 0;
        ++ctx_.depth_;
    }
    ~ProtocolScope() { --ctx_.depth_; }
    ProtocolScope(const ProtocolScope&) = delete;
    ProtocolScope& operator=(const ProtocolScope&) = delete;

    GateContext& ctx_;
};

// Applies the configured collective-dephasing channel ahead of a photon
// injection, depending on where in the pulse train the channel acts.
struct PulseSetup {
    static void before_injection(GateContext& ctx, StateVector& state) {
        const NoiseSpec& noise = ctx.options().noise;
        const bool first = (ctx.pulses_emitted_ == 0);
        bool act = false;
        switch (noise.epoch) {
            case DephasingEpoch::Before:
                act = first;
                break;
            case DephasingEpoch::Between:
                act = !first;
                break;
            case DephasingEpoch::Both:
                act = true;
                break;
        }
        if (act && noise.any_dephasing()) {
            apply_dephasing_draw(state, ctx.layout(), noise, ctx.rng());
        }
        ++ctx.pulses_emitted_;
    }
};

GateContext::GateContext(NetworkLayout layout, ExecOptions opts)
    : layout_(std::move(layout)), opts_(opts), rng_(make_stream(opts.noise.seed, 0)) {
    opts_.noise.validate();
}

void GateContext::reseed(std::uint64_t seed, std::uint64_t stream) {
    rng_ = make_stream(seed, stream);
}

namespace {

// Drives a single photonic pulse through a gate sequence. Atom pulses are
// pre-programmed laboratory operations and always run; photon steps are
// skipped once the photon has been lost, so the atoms still complete their
// sandwiching pulses and return to the code space on a lost-photon branch.
class Pulse {
public:
    Pulse(GateContext& ctx, StateVector state) : ctx_(ctx), state_(std::move(state)) {}

    void inject(const std::array<Complex, 2>& polarization) {
        PulseSetup::before_injection(ctx_, state_);
        state_.append_qubit(QubitLabel::photon(), polarization);
        ++photons_;
        alive_ = true;
    }

    void reflect(int node) {
        ++reflections_;
        if (!alive_) return;
        if (!survive(ctx_.noise().loss_reflection, "cavity reflection")) return;
        cavity_reflect(state_, ctx_.layout(), node, ctx_.noise().cpf_phase_error);
    }

    void hop() {
        ++hops_;
        if (!alive_) return;
        survive(ctx_.noise().loss_hop, "channel hop");
    }

    void hwp(double angle_deg) {
        if (!alive_) return;
        const std::array<QubitLabel, 1> target{QubitLabel::photon()};
        state_.apply_unitary(target, hwp_unitary(angle_deg));
    }

    void cnot21(int node) {
        const std::array<QubitLabel, 2> targets{ctx_.layout().atom(node, 1),
                                                ctx_.layout().atom(node, 2)};
        state_.apply_unitary(targets, gates::cnot());
    }

    void h2(int node) {
        const std::array<QubitLabel, 1> target{ctx_.layout().atom(node, 2)};
        state_.apply_unitary(target, gates::hadamard());
    }

    void sx1(int node) {
        const std::array<QubitLabel, 1> target{ctx_.layout().atom(node, 1)};
        state_.apply_unitary(target, gates::pauli_x());
    }

    void sx2(int node) {
        const std::array<QubitLabel, 1> target{ctx_.layout().atom(node, 2)};
        state_.apply_unitary(target, gates::pauli_x());
    }

    // Polarization-insensitive detector: a click heralds success whenever the
    // photon arrives, irrespective of its polarization.
    void detect_plain(const std::string& detector) {
        detector_ = detector;
        if (!alive_) return;  // lost photon: no click, failure already recorded
        const QubitLabel photon = QubitLabel::photon();
        const double p1 = state_.bit_probability(photon, 1);
        if (ctx_.mode() == HeraldMode::Sample) {
            int outcome;
            if (p1 < kImpossibleBranchTol) {
                outcome = 0;
            } else if (1.0 - p1 < kImpossibleBranchTol) {
                outcome = 1;
            } else {
                outcome = (uniform01(ctx_.rng()) < p1) ? 1 : 0;
            }
            drop_photon(outcome);
            return;
        }
        // A pure-state post-selected description can only discard the photon
        // when the click carries no which-polarization information.
        if (p1 >= kImpossibleBranchTol && 1.0 - p1 >= kImpossibleBranchTol) {
            throw_validation(
                "polarization-insensitive detection of a photon entangled with "
                "the register cannot be post-selected");
        }
        drop_photon(p1 > 0.5 ? 1 : 0);
    }

    // Polarizer at +45 degrees followed by the detector: the click heralds
    // the (h+v)/sqrt(2) branch; the orthogonal branch is absorbed.
    void herald_p45(const std::string& detector) {
        detector_ = detector;
        if (!alive_) return;
        ProjectionResult pass = polarizer_project(state_, 45.0);
        if (ctx_.mode() == HeraldMode::PostSelect) {
            if (!pass.post_state) {
                throw Error(ErrorCode::impossible_branch,
                            "herald branch has vanishing probability");
            }
            probability_ *= pass.probability;
            state_ = std::move(*pass.post_state);
            alive_ = false;
            return;
        }
        bool click;
        if (!pass.post_state) {
            click = false;
        } else if (pass.probability >= 1.0 - kImpossibleBranchTol) {
            click = true;
        } else {
            click = uniform01(ctx_.rng()) < pass.probability;
        }
        if (click) {
            probability_ *= pass.probability;
            state_ = std::move(*pass.post_state);
        } else {
            ProjectionResult blocked = polarizer_project(state_, -45.0);
            probability_ *= blocked.probability;
            state_ = std::move(*blocked.post_state);
            failed_ = true;
            failure_stage_ = "polarizer";
        }
        alive_ = false;
    }

    HeraldedOutcome finish() {
        HeraldedOutcome out;
        out.success = !failed_;
        out.detector = detector_;
        out.probability = probability_;
        out.photons_used = photons_;
        out.cavity_reflections = reflections_;
        out.channel_hops = hops_;
        out.photon_lost = lost_;
        out.failure_stage = failure_stage_;
        out.post_state = std::move(state_);
        out.leakage = code_leakage(out.post_state, ctx_.layout());
        return out;
    }

private:
    // Applies a loss channel of strength p_loss. Post-selection folds the
    // survival probability into the branch weight; sampling draws the event.
    bool survive(double p_loss, const char* stage) {
        if (p_loss <= 0.0) return true;
        if (ctx_.mode() == HeraldMode::PostSelect) {
            probability_ *= 1.0 - p_loss;
            return true;
        }
        if (uniform01(ctx_.rng()) < p_loss) {
            probability_ *= p_loss;
            lose_photon(stage);
            return false;
        }
        probability_ *= 1.0 - p_loss;
        return true;
    }

    // The environment absorbs the photon, decohering it in the h/v basis;
    // the register drops it and the trial becomes a heralded failure.
    void lose_photon(const char* stage) {
        const QubitLabel photon = QubitLabel::photon();
        const double p1 = state_.bit_probability(photon, 1);
        int outcome;
        if (p1 < kImpossibleBranchTol) {
            outcome = 0;
        } else if (1.0 - p1 < kImpossibleBranchTol) {
            outcome = 1;
        } else {
            outcome = (uniform01(ctx_.rng()) < p1) ? 1 : 0;
        }
        drop_photon(outcome);
        alive_ = false;
        lost_ = true;
        failed_ = true;
        failure_stage_ = stage;
    }

    void drop_photon(int outcome) {
        std::array<Complex, 2> basis{Complex(0.0, 0.0), Complex(0.0, 0.0)};
        basis[static_cast<std::size_t>(outcome)] = Complex(1.0, 0.0);
        ProjectionResult res = state_.project(QubitLabel::photon(), basis);
        probability_ *= res.probability;
        state_ = std::move(*res.post_state);
        alive_ = false;
    }

    GateContext& ctx_;
    StateVector state_;
    double probability_ = 1.0;
    int photons_ = 0;
    int reflections_ = 0;
    int hops_ = 0;
    bool alive_ = false;
    bool lost_ = false;
    bool failed_ = false;
    std::string detector_;
    std::string failure_stage_;
};

// Folds one sub-gate outcome into a running composite outcome. Returns false
// when the sub-gate failed and the composite must stop.
bool merge_step(HeraldedOutcome& total, HeraldedOutcome step) {
    total.probability *= step.probability;
    total.photons_used += step.photons_used;
    total.cavity_reflections += step.cavity_reflections;
    total.channel_hops += step.channel_hops;
    total.detector = step.detector;
    total.post_state = std::move(step.post_state);
    total.leakage = step.leakage;
    total.photon_lost = step.photon_lost;
    if (!step.success) {
        total.success = false;
        total.failure_stage = step.failure_stage;
        return false;
    }
    return true;
}

void require_distinct(const char* what, int a, int b) {
    if (a == b) {
        throw_validation(std::string(what) + " requires two distinct nodes");
    }
}

}  // namespace

HeraldedOutcome logical_x(GateContext& ctx, const StateVector& state, int node) {
    ctx.layout().require_node(node);
    ProtocolScope scope(ctx);
    Pulse pulse(ctx, state);
    pulse.inject(kPhotonH);
    pulse.cnot21(node);
    pulse.h2(node);
    pulse.reflect(node);
    pulse.h2(node);
    pulse.cnot21(node);
    pulse.detect_plain(ctx.layout().detector_name(node));
    return pulse.finish();
}

HeraldedOutcome logical_z(GateContext& ctx, const StateVector& state, int node) {
    ctx.layout().require_node(node);
    ProtocolScope scope(ctx);
    Pulse pulse(ctx, state);
    pulse.inject(kPhotonH);
    pulse.sx1(node);
    pulse.reflect(node);
    pulse.sx1(node);
    pulse.detect_plain(ctx.layout().detector_name(node));
    return pulse.finish();
}

HeraldedOutcome hadamard_gate(GateContext& ctx, const StateVector& state, int node) {
    ctx.layout().require_node(node);
    ProtocolScope scope(ctx);
    Pulse pulse(ctx, state);
    pulse.inject(kPhotonDiag);
    // h-polarized component: logical flip.
    pulse.cnot21(node);
    pulse.h2(node);
    pulse.reflect(node);
    pulse.h2(node);
    pulse.cnot21(node);
    // Exchange the flipped and unflipped branches.
    pulse.hwp(45.0);
    // h-polarized component: logical phase flip.
    pulse.sx1(node);
    pulse.reflect(node);
    pulse.sx1(node);
    pulse.herald_p45(ctx.layout().detector_name(node));
    return pulse.finish();
}

HeraldedOutcome cz_gate(GateContext& ctx, const StateVector& state, int node_i,
                        int node_j) {
    ctx.layout().require_node(node_i);
    ctx.layout().require_node(node_j);
    require_distinct("cz", node_i, node_j);
    ProtocolScope scope(ctx);
    Pulse pulse(ctx, state);
    pulse.inject(kPhotonDiag);
    // At node i the h component picks up -1 on logical 0.
    pulse.sx2(node_i);
    pulse.reflect(node_i);
    pulse.sx2(node_i);
    pulse.hwp(45.0);
    pulse.hop();
    pulse.hwp(22.5);
    // After the two wave plates the polarization encodes node i's logical
    // value; at node j the h component picks up -1 on logical 1.
    pulse.sx1(node_j);
    pulse.reflect(node_j);
    pulse.sx1(node_j);
    pulse.herald_p45(ctx.layout().detector_name(node_j));
    return pulse.finish();
}

HeraldedOutcome cnot_gate(GateContext& ctx, const StateVector& state, int control,
                          int target) {
    ctx.layout().require_node(control);
    ctx.layout().require_node(target);
    require_distinct("cnot", control, target);
    ProtocolScope scope(ctx);
    HeraldedOutcome total;
    total.success = true;
    total.post_state = state;
    if (!merge_step(total, hadamard_gate(ctx, total.post_state, target))) return total;
    if (!merge_step(total, cz_gate(ctx, total.post_state, control, target))) return total;
    merge_step(total, hadamard_gate(ctx, total.post_state, target));
    return total;
}

HeraldedOutcome swap_gate(GateContext& ctx, const StateVector& state, int i, int j) {
    ctx.layout().require_node(i);
    ctx.layout().require_node(j);
    require_distinct("swap", i, j);
    ProtocolScope scope(ctx);
    HeraldedOutcome total;
    total.success = true;
    total.post_state = state;
    if (!merge_step(total, cnot_gate(ctx, total.post_state, i, j))) return total;
    if (!merge_step(total, cnot_gate(ctx, total.post_state, j, i))) return total;
    merge_step(total, cnot_gate(ctx, total.post_state, i, j));
    return total;
}

HeraldedOutcome bell_prep(GateContext& ctx, const StateVector& state, int j, int k) {
    ctx.layout().require_node(j);
    ctx.layout().require_node(k);
    require_distinct("bell_prep", j, k);
    ProtocolScope scope(ctx);
    HeraldedOutcome total;
    total.success = true;
    total.post_state = state;
    if (!merge_step(total, hadamard_gate(ctx, total.post_state, j))) return total;
    merge_step(total, cnot_gate(ctx, total.post_state, j, k));
    return total;
}

namespace {

void require_branch_bit(int value) {
    if (value != 0 && value != 1) {
        throw_validation("forced branch outcomes must be 0 or 1");
    }
}

}  // namespace

BellMeasurement bell_measure(GateContext& ctx, const StateVector& state, int node_i,
                             int node_j, std::optional<ForcedBranch> forced) {
    ctx.layout().require_node(node_i);
    ctx.layout().require_node(node_j);
    require_distinct("bell_measure", node_i, node_j);
    if (forced) {
        require_branch_bit(forced->m_i);
        require_branch_bit(forced->m_j);
    }
    ProtocolScope scope(ctx);

    BellMeasurement result;
    StateVector current = state;

    auto absorb = [&](HeraldedOutcome step) {
        result.herald_probability *= step.probability;
        result.photons_used += step.photons_used;
        result.cavity_reflections += step.cavity_reflections;
        result.channel_hops += step.channel_hops;
        current = std::move(step.post_state);
        if (!step.success) {
            result.failure_stage = step.failure_stage;
            return false;
        }
        return true;
    };

    if (!absorb(cnot_gate(ctx, current, node_i, node_j))) {
        result.post_state = std::move(current);
        return result;
    }
    if (!absorb(hadamard_gate(ctx, current, node_i))) {
        result.post_state = std::move(current);
        return result;
    }

    // Read out both atoms of node i, then node j (atom 1 before atom 2 each).
    result.branch_probability = 1.0;
    int bits[2][2];
    const int nodes[2] = {node_i, node_j};
    for (int n = 0; n < 2; ++n) {
        const int forced_m = forced ? (n == 0 ? forced->m_i : forced->m_j) : -1;
        for (int which = 1; which <= 2; ++which) {
            const QubitLabel atom = ctx.layout().atom(nodes[n], which);
            if (forced) {
                // In the code space atom 1 carries the complement of the
                // logical value and atom 2 carries the value itself.
                const int want = (which == 1) ? 1 - forced_m : forced_m;
                result.branch_probability *= current.postselect_bit(atom, want);
                bits[n][which - 1] = want;
            } else {
                MeasureResult m = current.measure(atom, ctx.rng());
                result.branch_probability *= m.probability;
                bits[n][which - 1] = m.outcome;
            }
        }
    }

    result.m_i = bits[0][1];
    result.m_j = bits[1][1];
    result.leaked = (bits[0][0] == bits[0][1]) || (bits[1][0] == bits[1][1]);
    result.post_state = std::move(current);
    if (result.leaked) {
        result.failure_stage = "code-space leakage at readout";
        return result;
    }
    result.success = true;
    return result;
}

const char* correction_name(Correction c) {
    switch (c) {
        case Correction::Identity:
            return "I";
        case Correction::X:
            return "X";
        case Correction::Z:
            return "Z";
        case Correction::ZX:
            return "ZX";
    }
    return "?";
}

Correction table_correction(int m_i, int m_j) {
    require_branch_bit(m_i);
    require_branch_bit(m_j);
    if (m_i == 0 && m_j == 0) return Correction::Identity;
    if (m_i == 0 && m_j == 1) return Correction::X;
    if (m_i == 1 && m_j == 0) return Correction::Z;
    return Correction::ZX;
}

TeleportResult teleport(GateContext& ctx, const StateVector& state, int node_i,
                        int node_j, int node_k, std::optional<ForcedBranch> forced) {
    ctx.layout().require_node(node_i);
    ctx.layout().require_node(node_j);
    ctx.layout().require_node(node_k);
    require_distinct("teleport", node_i, node_j);
    require_distinct("teleport", node_j, node_k);
    require_distinct("teleport", node_i, node_k);
    ProtocolScope scope(ctx);

    TeleportResult result;
    StateVector current = state;

    auto absorb = [&](HeraldedOutcome step) {
        result.herald_probability *= step.probability;
        result.photons_used += step.photons_used;
        result.cavity_reflections += step.cavity_reflections;
        result.channel_hops += step.channel_hops;
        current = std::move(step.post_state);
        if (!step.success) {
            result.failure_stage = step.failure_stage;
            return false;
        }
        return true;
    };

    if (!absorb(bell_prep(ctx, current, node_j, node_k))) {
        result.final_state = std::move(current);
        return result;
    }

    BellMeasurement bsm = bell_measure(ctx, current, node_i, node_j, forced);
    result.m_i = bsm.m_i;
    result.m_j = bsm.m_j;
    result.herald_probability *= bsm.herald_probability;
    result.branch_probability = bsm.branch_probability;
    result.photons_used += bsm.photons_used;
    result.cavity_reflections += bsm.cavity_reflections;
    result.channel_hops += bsm.channel_hops;
    current = std::move(bsm.post_state);
    if (!bsm.success) {
        result.failure_stage = bsm.failure_stage;
        result.final_state = std::move(current);
        return result;
    }

    result.correction = table_correction(bsm.m_i, bsm.m_j);
    if (bsm.m_j == 1) {
        if (!absorb(logical_x(ctx, current, node_k))) {
            result.final_state = std::move(current);
            return result;
        }
    }
    if (bsm.m_i == 1) {
        if (!absorb(logical_z(ctx, current, node_k))) {
            result.final_state = std::move(current);
            return result;
        }
    }

    result.success = true;
    result.final_state = std::move(current);
    result.leakage = code_leakage(result.final_state, ctx.layout());
    result.total_success_probability =
        result.herald_probability * result.branch_probability;
    return result;
}

ProtocolStats protocol_stats(Protocol p) {
    switch (p) {
        case Protocol::XGate:
            return {1, 1, 0, 1.0};
        case Protocol::ZGate:
            return {1, 1, 0, 1.0};
        case Protocol::Hadamard:
            return {1, 2, 0, 0.5};
        case Protocol::CZ:
            return {1, 2, 1, 0.5};
        case Protocol::CNOT:
            return {3, 6, 1, 1.0 / 8.0};
        case Protocol::Swap:
            return {9, 18, 3, 1.0 / 512.0};
        case Protocol::BellPrep:
            return {4, 8, 1, 1.0 / 16.0};
        case Protocol::Teleport:
            return {8, 16, 2, 1.0 / 256.0};
    }
    throw_invalid("unknown protocol");
}

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::XGate:
            return "x";
        case Protocol::ZGate:
            return "z";
        case Protocol::Hadamard:
            return "hadamard";
        case Protocol::CZ:
            return "cz";
        case Protocol::CNOT:
            return "cnot";
        case Protocol::Swap:
            return "swap";
        case Protocol::BellPrep:
            return "bell_prep";
        case Protocol::Teleport:
            return "teleport";
    }
    return "?";
}

std::optional<Protocol> protocol_from_name(std::string_view name) {
    if (name == "x" || name == "xgate") return Protocol::XGate;
    if (name == "z" || name == "zgate") return Protocol::ZGate;
    if (name == "hadamard" || name == "h") return Protocol::Hadamard;
    if (name == "cz") return Protocol::CZ;
    if (name == "cnot") return Protocol::CNOT;
    if (name == "swap") return Protocol::Swap;
    if (name == "bell_prep" || name == "bellprep") return Protocol::BellPrep;
    if (name == "teleport") return Protocol::Teleport;
    return std::nullopt;
}

void ExperimentalParams::validate() const {
    if (!(std::isfinite(kappa_mhz) && kappa_mhz > 0.0)) {
        throw_validation("kappa_mhz must be positive");
    }
    if (!(std::isfinite(g_mhz) && g_mhz > 0.0)) {
        throw_validation("g_mhz must be positive");
    }
    if (!(std::isfinite(gamma_mhz) && gamma_mhz > 0.0)) {
        throw_validation("gamma_mhz must be positive");
    }
    if (!(std::isfinite(t_us) && t_us > 0.0)) {
        throw_validation("t_us must be positive");
    }
}

GateTimeEstimate estimate_gate_time(const ExperimentalParams& params, Protocol p) {
    params.validate();
    const ProtocolStats stats = protocol_stats(p);
    GateTimeEstimate est;
    est.seconds = static_cast<double>(stats.cavity_reflections) * params.t_us * 1e-6;
    // kappa is quoted as kappa/2pi, so the angular linewidth carries a 2pi.
    est.kappa_t = 2.0 * std::numbers::pi * params.kappa_mhz * params.t_us;
    est.cooperativity = params.g_mhz * params.g_mhz / (params.kappa_mhz * params.gamma_mhz);
    est.regime_ok = est.kappa_t >= 50.0;
    return est;
}

RepeatResult repeat_until_success(
    GateContext& ctx, const std::function<StateVector()>& prepare,
    const std::function<HeraldedOutcome(GateContext&, const StateVector&)>& gate,
    int max_attempts) {
    if (max_attempts <= 0) throw_invalid("max_attempts must be positive");
    RepeatResult result;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        result.outcome = gate(ctx, prepare());
        result.attempts = attempt;
        if (result.outcome.success) return result;
    }
    result.exhausted = true;
    return result;
}

}  // namespace dfsnet
