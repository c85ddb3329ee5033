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

#include "noise.hpp"

#include <cmath>
#include <complex>

#include "error.hpp"

namespace dfsnet {

void NoiseSpec::validate() const {
    if (loss_reflection < 0.0 || loss_reflection > 1.0) {
        throw_validation("loss_reflection must be in [0, 1]");
    }
    if (loss_hop < 0.0 || loss_hop > 1.0) {
        throw_validation("loss_hop must be in [0, 1]");
    }
    if (dephasing == DephasingKind::Gaussian && dephasing_sigma < 0.0) {
        throw_validation("dephasing_sigma must be >= 0");
    }
    if (!std::isfinite(cpf_phase_error)) {
        throw_validation("cpf_phase_error must be finite");
    }
}

void collective_dephasing(StateVector& state, const NetworkLayout& layout, int node,
                          double phi) {
    layout.require_node(node);
    if (phi == 0.0) return;
    const Complex factor = std::polar(1.0, phi);
    // e^{i*phi*(n1+n2)} factorizes into one diagonal phase per atom.
    for (int which = 1; which <= 2; ++which) {
        const BitCondition cond[] = {BitCondition{layout.atom(node, which), 1}};
        state.controlled_phase(cond, factor);
    }
}

namespace {

double draw_phase(const NoiseSpec& spec, Rng& rng) {
    switch (spec.dephasing) {
        case DephasingKind::Off: return 0.0;
        case DephasingKind::Uniform: return uniform_angle(rng);
        case DephasingKind::Gaussian: return gaussian(rng, spec.dephasing_sigma);
    }
    throw_validation("unreachable dephasing kind");
}

}  // namespace

std::vector<double> draw_dephasing_phases(const NoiseSpec& spec, const NetworkLayout& layout,
                                          Rng& rng) {
    std::vector<double> phases(static_cast<std::size_t>(layout.node_count()), 0.0);
    if (!spec.any_dephasing()) return phases;
    if (spec.scope == DephasingScope::Global) {
        const double phi = draw_phase(spec, rng);
        for (auto& p : phases) p = phi;
    } else {
        for (auto& p : phases) p = draw_phase(spec, rng);
    }
    return phases;
}

void apply_dephasing_draw(StateVector& state, const NetworkLayout& layout,
                          const NoiseSpec& spec, Rng& rng) {
    const auto phases = draw_dephasing_phases(spec, layout, rng);
    for (int node = 0; node < layout.node_count(); ++node) {
        collective_dephasing(state, layout, node, phases[static_cast<std::size_t>(node)]);
    }
}

double bare_qubit_control_mean(const NoiseSpec& spec, std::int64_t trials,
                               std::uint64_t seed) {
    if (trials < 1) throw_invalid("bare_qubit_control_mean: trials must be >= 1");
    const QubitLabel atom = QubitLabel::atom_of(0, 1);
    StateVector initial = StateVector::basis({atom}, 0);
    {
        const QubitLabel t[] = {atom};
        initial.apply_unitary(t, gates::hadamard());  // (|0> + |1>)/sqrt(2)
    }

    RunningStat stat;
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
        const double phi = draw_phase(spec, rng);
        StateVector s = initial;
        const BitCondition cond[] = {BitCondition{atom, 1}};
        s.controlled_phase(cond, std::polar(1.0, phi));
        stat.add(fidelity(initial, s));
    }
    return stat.mean();
}

void RunningStat::add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningStat::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStat::stddev() const { return std::sqrt(variance()); }

double RunningStat::std_error() const {
    return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
}

EnsembleStats monte_carlo(std::int64_t trials, std::uint64_t seed, const TrialFn& fn) {
    if (trials < 1) throw_invalid("monte_carlo: trials must be >= 1");
    RunningStat herald;
    RunningStat fidelity_stat;
    RunningStat leakage_stat;
    std::int64_t herald_count = 0;
    for (std::int64_t k = 0; k < trials; ++k) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
        const TrialResult r = fn(rng, k);
        herald.add(r.heralded ? 1.0 : 0.0);
        if (r.heralded) {
            ++herald_count;
            fidelity_stat.add(r.fidelity);
            leakage_stat.add(r.leakage);
        }
    }
    EnsembleStats out;
    out.trials = trials;
    out.herald_count = herald_count;
    out.herald_rate = herald.mean();
    out.herald_stderr = herald.std_error();
    out.conditional_fidelity = fidelity_stat.mean();
    out.fidelity_stderr = fidelity_stat.std_error();
    out.leakage_rate = leakage_stat.mean();
    return out;
}

}  // namespace dfsnet
