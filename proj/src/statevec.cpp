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

#include "statevec.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace dfsnet {

std::string QubitLabel::str() const {
    if (kind == Kind::Photon) return "photon";
    return "atom" + std::to_string(atom) + "@node" + std::to_string(node);
}

StateVector StateVector::basis(std::vector<QubitLabel> reg, std::uint64_t index) {
    StateVector s;
    s.register_ = std::move(reg);
    if (s.register_.size() > kMaxRegisterQubits) {
        throw_invalid("register exceeds " + std::to_string(kMaxRegisterQubits) + " qubits");
    }
    s.check_register();
    if (index >= (std::uint64_t{1} << s.register_.size())) {
        throw_invalid("basis index out of range for register");
    }
    s.amps_.assign(std::size_t{1} << s.register_.size(), Complex{});
    s.amps_[index] = 1.0;
    return s;
}

void StateVector::check_register() const {
    int photons = 0;
    for (std::size_t i = 0; i < register_.size(); ++i) {
        if (register_[i].kind == QubitLabel::Kind::Photon) ++photons;
        for (std::size_t j = i + 1; j < register_.size(); ++j) {
            if (register_[i] == register_[j]) {
                throw_invalid("duplicate register label " + register_[i].str());
            }
        }
    }
    if (photons > 1) throw_invalid("at most one photon may be in flight");
    if (photons == 1 && register_.back().kind != QubitLabel::Kind::Photon) {
        throw_invalid("the photon must occupy the last register position");
    }
}

int StateVector::position_of(const QubitLabel& q) const {
    for (std::size_t i = 0; i < register_.size(); ++i) {
        if (register_[i] == q) return static_cast<int>(i);
    }
    return -1;
}

int StateVector::require_position(const QubitLabel& q) const {
    const int p = position_of(q);
    if (p < 0) throw_invalid("qubit " + q.str() + " is not in the register");
    return p;
}

double StateVector::norm_sq() const {
    double n = 0.0;
    for (const Complex& a : amps_) n += std::norm(a);
    return n;
}

void StateVector::apply_unitary(std::span<const QubitLabel> targets, const Matrix& u) {
    const int k = static_cast<int>(targets.size());
    if (k == 0) throw_invalid("apply_unitary requires at least one target");
    if (u.size() != (1 << k)) {
        throw_invalid("matrix dimension does not match target count");
    }
    if (!u.is_unitary(kUnitaryTol)) throw_invalid("matrix is not unitary");

    std::vector<int> pos(targets.size());
    std::uint64_t mask = 0;
    for (int j = 0; j < k; ++j) {
        pos[j] = require_position(targets[j]);
        const std::uint64_t bit = std::uint64_t{1} << pos[j];
        if (mask & bit) throw_invalid("duplicate target " + targets[j].str());
        mask |= bit;
    }

    const int sub = 1 << k;
    std::vector<std::uint64_t> offset(sub);
    for (int m = 0; m < sub; ++m) {
        std::uint64_t o = 0;
        for (int j = 0; j < k; ++j) {
            if (m & (1 << j)) o |= std::uint64_t{1} << pos[j];
        }
        offset[m] = o;
    }

    std::vector<Complex> in(sub), out(sub);
    for (std::uint64_t base = 0; base < dim(); ++base) {
        if (base & mask) continue;
        for (int m = 0; m < sub; ++m) in[m] = amps_[base | offset[m]];
        for (int r = 0; r < sub; ++r) {
            Complex acc{};
            for (int c = 0; c < sub; ++c) acc += u.at(r, c) * in[c];
            out[r] = acc;
        }
        for (int m = 0; m < sub; ++m) amps_[base | offset[m]] = out[m];
    }
}

void StateVector::controlled_phase(std::span<const BitCondition> conditions, Complex phase) {
    if (conditions.empty()) {
        throw_invalid("controlled_phase requires at least one condition");
    }
    if (std::abs(std::abs(phase) - 1.0) > kUnitaryTol) {
        throw_invalid("controlled phase factor must have unit modulus");
    }
    std::uint64_t mask = 0, want = 0;
    for (const BitCondition& c : conditions) {
        if (c.value != 0 && c.value != 1) throw_invalid("condition bit must be 0 or 1");
        const int p = require_position(c.qubit);
        const std::uint64_t bit = std::uint64_t{1} << p;
        if (mask & bit) throw_invalid("duplicate condition on " + c.qubit.str());
        mask |= bit;
        if (c.value) want |= bit;
    }
    for (std::uint64_t i = 0; i < dim(); ++i) {
        if ((i & mask) == want) amps_[i] *= phase;
    }
}

ProjectionResult StateVector::project(const QubitLabel& q,
                                      const std::array<Complex, 2>& onto) const {
    const double onto_norm = std::norm(onto[0]) + std::norm(onto[1]);
    if (std::abs(onto_norm - 1.0) > kUnitaryTol) {
        throw_invalid("projection target must be a unit vector");
    }
    const int p = require_position(q);
    const std::uint64_t bit = std::uint64_t{1} << p;
    const std::uint64_t low = bit - 1;

    std::vector<Complex> reduced(dim() >> 1);
    double prob = 0.0;
    for (std::uint64_t r = 0; r < reduced.size(); ++r) {
        const std::uint64_t base = ((r & ~low) << 1) | (r & low);
        const Complex a = std::conj(onto[0]) * amps_[base] +
                          std::conj(onto[1]) * amps_[base | bit];
        reduced[r] = a;
        prob += std::norm(a);
    }

    ProjectionResult result;
    result.probability = prob;
    if (prob >= kImpossibleBranchTol) {
        StateVector post;
        post.register_ = register_;
        post.register_.erase(post.register_.begin() + p);
        const double inv = 1.0 / std::sqrt(prob);
        for (Complex& a : reduced) a *= inv;
        post.amps_ = std::move(reduced);
        result.post_state = std::move(post);
    }
    return result;
}

double StateVector::bit_probability(const QubitLabel& q, int value) const {
    if (value != 0 && value != 1) throw_invalid("bit value must be 0 or 1");
    const int p = require_position(q);
    const std::uint64_t bit = std::uint64_t{1} << p;
    double prob = 0.0;
    for (std::uint64_t i = 0; i < dim(); ++i) {
        if (((i & bit) != 0) == (value != 0)) prob += std::norm(amps_[i]);
    }
    return prob;
}

MeasureResult StateVector::measure(const QubitLabel& q, Rng& rng) {
    const double p1 = bit_probability(q, 1);
    const int outcome = uniform01(rng) < p1 ? 1 : 0;
    const double prob = outcome ? p1 : 1.0 - p1;
    // The sampled branch always has nonzero probability, but guard against
    // degenerate states anyway.
    if (prob < kImpossibleBranchTol) {
        throw Error(ErrorCode::impossible_branch, "measurement branch has zero weight");
    }
    collapse_to(q, outcome, prob);
    return MeasureResult{outcome, prob};
}

double StateVector::postselect_bit(const QubitLabel& q, int value) {
    const double prob = bit_probability(q, value);
    if (prob < kImpossibleBranchTol) {
        throw Error(ErrorCode::impossible_branch,
                    "conditioned branch " + q.str() + "=" + std::to_string(value) +
                        " has probability below 1e-12");
    }
    collapse_to(q, value, prob);
    return prob;
}

void StateVector::collapse_to(const QubitLabel& q, int value, double prob) {
    const int p = require_position(q);
    const std::uint64_t bit = std::uint64_t{1} << p;
    const double inv = 1.0 / std::sqrt(prob);
    for (std::uint64_t i = 0; i < dim(); ++i) {
        if (((i & bit) != 0) == (value != 0)) {
            amps_[i] *= inv;
        } else {
            amps_[i] = Complex{};
        }
    }
}

void StateVector::append_qubit(const QubitLabel& q, const std::array<Complex, 2>& amp) {
    if (position_of(q) >= 0) throw_invalid("qubit " + q.str() + " already present");
    if (q.kind == QubitLabel::Kind::Photon && has_photon()) {
        throw_invalid("at most one photon may be in flight");
    }
    if (q.kind == QubitLabel::Kind::Atom && has_photon()) {
        throw_invalid("the photon must stay at the last register position");
    }
    if (register_.size() + 1 > kMaxRegisterQubits) {
        throw_invalid("register exceeds " + std::to_string(kMaxRegisterQubits) + " qubits");
    }
    const double n = std::norm(amp[0]) + std::norm(amp[1]);
    if (std::abs(n - 1.0) > kUnitaryTol) {
        throw_invalid("appended qubit state must be normalized");
    }
    const std::uint64_t old_dim = dim();
    std::vector<Complex> next(old_dim << 1);
    for (std::uint64_t i = 0; i < old_dim; ++i) {
        next[i] = amps_[i] * amp[0];
        next[i | old_dim] = amps_[i] * amp[1];
    }
    register_.push_back(q);
    amps_ = std::move(next);
}

void StateVector::scale(Complex factor) {
    for (Complex& a : amps_) a *= factor;
}

Complex overlap(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) {
        throw_invalid("fidelity requires identical registers");
    }
    Complex acc{};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

GateOp GateOp::unitary(std::vector<QubitLabel> targets, Matrix u) {
    GateOp op;
    op.kind = Kind::Unitary;
    op.targets = std::move(targets);
    op.u = std::move(u);
    return op;
}

GateOp GateOp::controlled_phase(std::vector<BitCondition> conditions, Complex phase) {
    GateOp op;
    op.kind = Kind::ControlledPhase;
    op.conditions = std::move(conditions);
    op.phase = phase;
    return op;
}

namespace {

int position_in(std::span<const QubitLabel> reg, const QubitLabel& q) {
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i] == q) return static_cast<int>(i);
    }
    throw_invalid("qubit " + q.str() + " is not in the register");
}

Matrix embed_unitary(std::span<const QubitLabel> reg, const GateOp& op) {
    const int n = static_cast<int>(reg.size());
    const int k = static_cast<int>(op.targets.size());
    if (op.u.size() != (1 << k)) {
        throw_invalid("matrix dimension does not match target count");
    }
    std::vector<int> pos(op.targets.size());
    std::uint64_t mask = 0;
    for (int j = 0; j < k; ++j) {
        pos[j] = position_in(reg, op.targets[j]);
        mask |= std::uint64_t{1} << pos[j];
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    Matrix full(static_cast<int>(dim));
    for (std::uint64_t r = 0; r < dim; ++r) {
        int mr = 0;
        for (int j = 0; j < k; ++j) {
            if (r & (std::uint64_t{1} << pos[j])) mr |= 1 << j;
        }
        const std::uint64_t rest = r & ~mask;
        for (int mc = 0; mc < (1 << k); ++mc) {
            std::uint64_t c = rest;
            for (int j = 0; j < k; ++j) {
                if (mc & (1 << j)) c |= std::uint64_t{1} << pos[j];
            }
            full.at(static_cast<int>(r), static_cast<int>(c)) = op.u.at(mr, mc);
        }
    }
    return full;
}

Matrix embed_phase(std::span<const QubitLabel> reg, const GateOp& op) {
    std::uint64_t mask = 0, want = 0;
    for (const BitCondition& c : op.conditions) {
        const int p = position_in(reg, c.qubit);
        mask |= std::uint64_t{1} << p;
        if (c.value) want |= std::uint64_t{1} << p;
    }
    const std::uint64_t dim = std::uint64_t{1} << reg.size();
    Matrix full(static_cast<int>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        full.at(static_cast<int>(i), static_cast<int>(i)) =
            ((i & mask) == want) ? op.phase : Complex{1.0, 0.0};
    }
    return full;
}

}  // namespace

Matrix full_matrix(std::span<const QubitLabel> reg, std::span<const GateOp> ops) {
    if (reg.size() > kMaxOracleQubits) {
        throw_invalid("full_matrix supports at most " +
                      std::to_string(kMaxOracleQubits) + " qubits");
    }
    Matrix acc = Matrix::identity(1 << reg.size());
    for (const GateOp& op : ops) {
        const Matrix step = op.kind == GateOp::Kind::Unitary ? embed_unitary(reg, op)
                                                             : embed_phase(reg, op);
        acc = step * acc;
    }
    return acc;
}

StateVector apply_ops(StateVector state, std::span<const GateOp> ops) {
    for (const GateOp& op : ops) {
        if (op.kind == GateOp::Kind::Unitary) {
            state.apply_unitary(op.targets, op.u);
        } else {
            state.controlled_phase(op.conditions, op.phase);
        }
    }
    return state;
}

}  // namespace dfsnet
