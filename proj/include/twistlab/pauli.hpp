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

#ifndef TWISTLAB_PAULI_HPP
#define TWISTLAB_PAULI_HPP

#include <string>
#include <vector>

#include "twistlab/bitvec.hpp"

namespace twistlab {

/// A signed n-qubit Pauli operator in binary symplectic form.
///
/// The stored value is i^phase * prod_j X_j^{x[j]} Z_j^{z[j]} with the X part
/// written to the left of the Z part on every qubit. A qubit with x=z=1
/// carries the letter Y = i*X*Z, so the letter-level sign prefix of the
/// operator is i^(phase - #Y) rather than i^phase. All arithmetic tracks the
/// phase exactly; "sign_exponent" exposes the letter-level prefix.
struct PauliOperator {
    size_t n = 0;
    BitVec x;
    BitVec z;
    uint8_t phase = 0;  // exponent of i, mod 4, in XZ-ordered form

    PauliOperator() = default;
    explicit PauliOperator(size_t n_qubits) : n(n_qubits), x(n_qubits), z(n_qubits) {}

    static PauliOperator identity(size_t n_qubits) {
        return PauliOperator(n_qubits);
    }
    /// Single-qubit operator; `which` is one of 'X', 'Y', 'Z', 'I'.
    static PauliOperator single(size_t n_qubits, size_t qubit, char which);
    /// Parses the text form, e.g. "-YIZ", "+iXX", "ZZ".
    static PauliOperator from_string(const std::string &text);

    std::string str() const;

    size_t num_y() const {
        return BitVec::popcount_and(x, z);
    }
    /// Letter-level prefix exponent: value = i^sign_exponent * (letter string).
    /// 0 -> "+", 1 -> "+i", 2 -> "-", 3 -> "-i".
    uint8_t sign_exponent() const {
        return (uint8_t)((phase + 4 * num_y() - num_y()) & 3);
    }
    bool is_hermitian() const {
        return (sign_exponent() & 1) == 0;
    }
    /// +1 or -1; requires a Hermitian operator.
    int sign() const;
    /// Forces the letter-level sign prefix, keeping the letters.
    void set_sign(int s);

    bool is_identity_up_to_phase() const {
        return !x.any() && !z.any();
    }
    bool is_identity() const {
        return is_identity_up_to_phase() && phase == 0;
    }

    size_t weight() const;

    void mul_inplace(const PauliOperator &other);
    PauliOperator times(const PauliOperator &other) const {
        PauliOperator r = *this;
        r.mul_inplace(other);
        return r;
    }

    bool commutes_with(const PauliOperator &other) const;

    /// Support zeroed outside `keep`; sign prefix reset to "+".
    PauliOperator restricted(const BitVec &keep) const;
    PauliOperator restricted(const std::vector<size_t> &qubits) const;

    /// True when either x or z touches qubit q.
    bool touches(size_t q) const {
        return x.get(q) || z.get(q);
    }
    BitVec support() const {
        BitVec s = x;
        s.or_with(z);
        return s;
    }

    bool operator==(const PauliOperator &other) const = default;
    /// Deterministic ordering on (support bits, phase); used for tie-breaking.
    bool bits_less(const PauliOperator &other) const {
        if (x != other.x) {
            return x < other.x;
        }
        if (z != other.z) {
            return z < other.z;
        }
        return phase < other.phase;
    }
};

void check_same_size(const PauliOperator &a, const PauliOperator &b);

}  // namespace twistlab

#endif
