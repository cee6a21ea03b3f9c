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

#include "twistlab/pauli.hpp"

#include <stdexcept>

namespace twistlab {

void check_same_size(const PauliOperator &a, const PauliOperator &b) {
    if (a.n != b.n) {
        throw std::invalid_argument(
            "Pauli operator size mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
    }
}

PauliOperator PauliOperator::single(size_t n_qubits, size_t qubit, char which) {
    if (qubit >= n_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    PauliOperator p(n_qubits);
    switch (which) {
        case 'I':
            break;
        case 'X':
            p.x.set(qubit, true);
            break;
        case 'Z':
            p.z.set(qubit, true);
            break;
        case 'Y':
            p.x.set(qubit, true);
            p.z.set(qubit, true);
            p.phase = 1;  // Y = i*X*Z
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + which + "'");
    }
    return p;
}

PauliOperator PauliOperator::from_string(const std::string &text) {
    size_t k = 0;
    uint8_t sign_exp = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        sign_exp = text[k] == '-' ? 2 : 0;
        k++;
        if (k < text.size() && text[k] == 'i') {
            sign_exp = (uint8_t)((sign_exp + 1) & 3);
            k++;
        }
    }
    size_t n = text.size() - k;
    PauliOperator p(n);
    size_t num_y = 0;
    for (size_t q = 0; q < n; q++) {
        char c = text[k + q];
        switch (c) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x.set(q, true);
                break;
            case 'Z':
                p.z.set(q, true);
                break;
            case 'Y':
                p.x.set(q, true);
                p.z.set(q, true);
                num_y++;
                break;
            default:
                throw std::invalid_argument("invalid Pauli string character: " + std::string(1, c));
        }
    }
    p.phase = (uint8_t)((sign_exp + num_y) & 3);
    return p;
}

std::string PauliOperator::str() const {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string s = prefixes[sign_exponent()];
    for (size_t q = 0; q < n; q++) {
        bool xb = x.get(q);
        bool zb = z.get(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

int PauliOperator::sign() const {
    uint8_t se = sign_exponent();
    if (se & 1) {
        throw std::logic_error("sign() on a non-Hermitian Pauli operator: " + str());
    }
    return se == 0 ? +1 : -1;
}

void PauliOperator::set_sign(int s) {
    phase = (uint8_t)((num_y() + (s < 0 ? 2 : 0)) & 3);
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    const auto &xw = x.words();
    const auto &zw = z.words();
    for (size_t i = 0; i < xw.size(); i++) {
        w += (size_t)std::popcount(xw[i] | zw[i]);
    }
    return w;
}

void PauliOperator::mul_inplace(const PauliOperator &other) {
    check_same_size(*this, other);
    // (i^p X^a Z^b)(i^q X^c Z^d) = i^{p+q} (-1)^{|b&c|} X^{a^c} Z^{b^d}
    size_t cross = BitVec::popcount_and(z, other.x);
    phase = (uint8_t)((phase + other.phase + 2 * cross) & 3);
    x.xor_with(other.x);
    z.xor_with(other.z);
}

bool PauliOperator::commutes_with(const PauliOperator &other) const {
    check_same_size(*this, other);
    return BitVec::parity_and(x, other.z) == BitVec::parity_and(z, other.x);
}

PauliOperator PauliOperator::restricted(const BitVec &keep) const {
    PauliOperator p(n);
    p.x = x;
    p.x.and_with(keep);
    p.z = z;
    p.z.and_with(keep);
    p.phase = (uint8_t)(p.num_y() & 3);  // restriction is defined up to phase; reset to "+"
    return p;
}

PauliOperator PauliOperator::restricted(const std::vector<size_t> &qubits) const {
    BitVec keep(n);
    for (size_t q : qubits) {
        if (q >= n) {
            throw std::out_of_range("restriction qubit index out of range");
        }
        keep.set(q, true);
    }
    return restricted(keep);
}

}  // namespace twistlab
