// Copyright 2026 The twistlab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twistlab/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace twistlab {

namespace {

constexpr double kTol = 1e-9;

uint64_t low_mask(const BitVec &v) {
    return v.num_words() ? v.words()[0] : 0;
}

}  // namespace

StateVector::StateVector(size_t n) : n_(n), amps_(size_t{1} << n, 0.0) {
    if (n > kMaxQubits) {
        throw std::invalid_argument("state vector limited to " + std::to_string(kMaxQubits) + " qubits");
    }
    amps_[0] = 1.0;
}

std::complex<double> StateVector::pauli_bra_ket(const PauliOperator &p) const {
    // <psi| i^phase X^x Z^z |psi>, where P|b> = i^phase (-1)^{b.z} |b ^ x>.
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    uint64_t xm = low_mask(p.x);
    uint64_t zm = low_mask(p.z);
    std::complex<double> acc = 0.0;
    for (uint64_t b = 0; b < amps_.size(); b++) {
        double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
        acc += std::conj(amps_[b ^ xm]) * sign * amps_[b];
    }
    return acc * i_pow[p.phase & 3];
}

int StateVector::expectation(const PauliOperator &p) const {
    if (p.n != n_) {
        throw std::invalid_argument("state vector size mismatch");
    }
    std::complex<double> e = pauli_bra_ket(p);
    if (std::abs(e.imag()) > kTol) {
        throw std::logic_error("non-real Pauli expectation; observable not Hermitian?");
    }
    double r = e.real();
    if (std::abs(r - 1.0) < kTol) {
        return +1;
    }
    if (std::abs(r + 1.0) < kTol) {
        return -1;
    }
    if (std::abs(r) < kTol) {
        return 0;
    }
    throw std::logic_error("non-stabilizer expectation value " + std::to_string(r));
}

double StateVector::project(const PauliOperator &p, int outcome) {
    int e = expectation(p);
    double prob = (1.0 + (outcome >= 0 ? 1.0 : -1.0) * e) / 2.0;
    if (prob < kTol) {
        throw std::invalid_argument("projection onto a zero-probability outcome");
    }
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    uint64_t xm = low_mask(p.x);
    uint64_t zm = low_mask(p.z);
    std::complex<double> ph = i_pow[p.phase & 3] * (outcome >= 0 ? 1.0 : -1.0);
    std::vector<std::complex<double>> next(amps_.size());
    for (uint64_t b = 0; b < amps_.size(); b++) {
        double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
        // (I + o*P)/2 acting on |b> contributes to |b> and |b ^ x>.
        next[b ^ xm] += 0.5 * ph * sign * amps_[b];
        next[b] += 0.5 * amps_[b];
    }
    double norm = 0.0;
    for (auto &a : next) {
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto &a : next) {
        a /= norm;
    }
    amps_ = std::move(next);
    return prob;
}

MeasurementRecord StateVector::measure(const PauliOperator &p, OutcomePolicy policy, std::mt19937_64 &rng) {
    MeasurementRecord rec;
    rec.observable = p;
    rec.frame_update = PauliOperator::identity(n_);
    int e = expectation(p);
    if (e == +1 || e == -1) {
        rec.outcome = e;
        rec.was_random = false;
        if ((policy.kind == OutcomePolicy::ForcedPlus && e == -1) ||
            (policy.kind == OutcomePolicy::ForcedMinus && e == +1)) {
            throw ContradictionError("forced outcome contradicts deterministic dense value");
        }
        return rec;
    }
    rec.was_random = true;
    switch (policy.kind) {
        case OutcomePolicy::ForcedPlus:
            rec.outcome = +1;
            break;
        case OutcomePolicy::ForcedMinus:
            rec.outcome = -1;
            break;
        default:
            rec.outcome = (rng() & 1) ? -1 : +1;
            break;
    }
    project(p, rec.outcome);
    return rec;
}

StateVector StateVector::stabilized_by(const StabilizerTableau &t, std::mt19937_64 &rng) {
    StateVector sv(t.num_qubits());
    for (const auto &g : t.generators()) {
        // The sign lives inside g, so the +1 outcome of g is the stabilized one.
        sv.measure(g, OutcomePolicy::forced(+1), rng);
    }
    for (const auto &g : t.generators()) {
        if (!sv.fixes_state(g)) {
            throw std::logic_error("failed to prepare common +1 eigenstate");
        }
    }
    return sv;
}

}  // namespace twistlab
