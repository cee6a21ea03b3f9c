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

#include "twistlab/clifford_map.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace twistlab {

LogicalCliffordMap LogicalCliffordMap::identity(size_t k) {
    LogicalCliffordMap m;
    m.k = k;
    for (size_t j = 0; j < k; j++) {
        m.images.push_back(PauliOperator::single(k, j, 'X'));
        m.images.push_back(PauliOperator::single(k, j, 'Z'));
    }
    return m;
}

PauliOperator LogicalCliffordMap::apply(const PauliOperator &p) const {
    if (p.n != k) {
        throw std::invalid_argument("map arity mismatch");
    }
    PauliOperator out(k);
    out.phase = p.phase;
    for (size_t j = 0; j < k; j++) {
        if (p.x.get(j)) {
            out.mul_inplace(image_x(j));
        }
        if (p.z.get(j)) {
            out.mul_inplace(image_z(j));
        }
    }
    return out;
}

bool LogicalCliffordMap::preserves_symplectic_form() const {
    for (size_t a = 0; a < 2 * k; a++) {
        for (size_t b = a + 1; b < 2 * k; b++) {
            bool want = (a / 2 == b / 2);  // conjugate pair anticommutes
            if (images[a].commutes_with(images[b]) == want) {
                return false;
            }
        }
    }
    return true;
}

bool LogicalCliffordMap::is_pauli() const {
    LogicalCliffordMap id = identity(k);
    for (size_t j = 0; j < 2 * k; j++) {
        if (images[j].x != id.images[j].x || images[j].z != id.images[j].z) {
            return false;
        }
    }
    return true;
}

std::vector<int> LogicalCliffordMap::sign_vector() const {
    std::vector<int> v;
    for (const auto &img : images) {
        v.push_back(img.sign());
    }
    return v;
}

bool LogicalCliffordMap::same_symplectic(const LogicalCliffordMap &other) const {
    if (k != other.k) {
        return false;
    }
    for (size_t j = 0; j < 2 * k; j++) {
        if (images[j].x != other.images[j].x || images[j].z != other.images[j].z) {
            return false;
        }
    }
    return true;
}

std::string LogicalCliffordMap::str() const {
    std::ostringstream out;
    for (size_t j = 0; j < k; j++) {
        out << "X" << j << "->" << image_x(j).str() << " Z" << j << "->" << image_z(j).str();
        if (j + 1 < k) {
            out << " ";
        }
    }
    return out.str();
}

LogicalCliffordMap compose(const LogicalCliffordMap &a, const LogicalCliffordMap &b) {
    if (a.k != b.k) {
        throw std::invalid_argument("compose arity mismatch");
    }
    LogicalCliffordMap m;
    m.k = a.k;
    for (const auto &img : a.images) {
        m.images.push_back(b.apply(img));
    }
    return m;
}

LogicalCliffordMap LogicalCliffordMap::inverse() const {
    // Invert the symplectic matrix by Gaussian elimination over the basis,
    // then fix each preimage's phase by evaluating forward.
    size_t dim = 2 * k;
    std::vector<BitVec> rows(dim, BitVec(dim));  // row j: bits of image j
    for (size_t j = 0; j < dim; j++) {
        for (size_t q = 0; q < k; q++) {
            if (images[j].x.get(q)) {
                rows[j].set(2 * q, true);
            }
            if (images[j].z.get(q)) {
                rows[j].set(2 * q + 1, true);
            }
        }
    }
    std::vector<BitVec> inv(dim, BitVec(dim));
    for (size_t j = 0; j < dim; j++) {
        inv[j].set(j, true);
    }
    for (size_t col = 0; col < dim; col++) {
        size_t hit = dim;
        for (size_t r = col; r < dim; r++) {
            if (rows[r].get(col)) {
                hit = r;
                break;
            }
        }
        if (hit == dim) {
            throw std::logic_error("map is singular; not a Clifford action");
        }
        std::swap(rows[col], rows[hit]);
        std::swap(inv[col], inv[hit]);
        for (size_t r = 0; r < dim; r++) {
            if (r != col && rows[r].get(col)) {
                rows[r].xor_with(rows[col]);
                inv[r].xor_with(inv[col]);
            }
        }
    }
    // inv[j] now expresses basis op j as a combination of images, i.e. the
    // bits of the preimage of basis op j.
    LogicalCliffordMap out;
    out.k = k;
    for (size_t j = 0; j < dim; j++) {
        PauliOperator pre(k);
        for (size_t q = 0; q < k; q++) {
            if (inv[j].get(2 * q)) {
                pre.x.set(q, true);
            }
            if (inv[j].get(2 * q + 1)) {
                pre.z.set(q, true);
            }
        }
        pre.phase = 0;
        PauliOperator forward = apply(pre);
        // forward = i^t * basis_j; cancel the phase so inverse(basis_j) is exact.
        pre.phase = (uint8_t)((4 - forward.phase) & 3);
        out.images.push_back(pre);
    }
    return out;
}

namespace {

LogicalCliffordMap one_qubit_map(const PauliOperator &img_x, const PauliOperator &img_z) {
    LogicalCliffordMap m;
    m.k = 1;
    m.images = {img_x, img_z};
    return m;
}

}  // namespace

LogicalCliffordMap map_identity(size_t k) {
    return LogicalCliffordMap::identity(k);
}

LogicalCliffordMap map_S() {
    return one_qubit_map(PauliOperator::from_string("+Y"), PauliOperator::from_string("+Z"));
}

LogicalCliffordMap map_H() {
    return one_qubit_map(PauliOperator::from_string("+Z"), PauliOperator::from_string("+X"));
}

LogicalCliffordMap map_pauli(const PauliOperator &p) {
    LogicalCliffordMap m = LogicalCliffordMap::identity(p.n);
    for (size_t j = 0; j < 2 * p.n; j++) {
        if (!m.images[j].commutes_with(p)) {
            m.images[j].set_sign(-m.images[j].sign());
        }
    }
    return m;
}

LogicalCliffordMap map_XS() {
    return compose(map_S(), map_pauli(PauliOperator::from_string("+X")));
}

LogicalCliffordMap map_YH() {
    return compose(map_H(), map_pauli(PauliOperator::from_string("+Y")));
}

LogicalCliffordMap map_cnot(size_t control, size_t target, size_t k) {
    LogicalCliffordMap m = LogicalCliffordMap::identity(k);
    // X_c -> X_c X_t, Z_t -> Z_c Z_t, others fixed.
    m.images[2 * control].mul_inplace(PauliOperator::single(k, target, 'X'));
    m.images[2 * target + 1].mul_inplace(PauliOperator::single(k, control, 'Z'));
    return m;
}

LogicalCliffordMap extract_logical_map(
    const StabilizerTableau &final_state, const std::vector<LogicalPair> &tracked,
    const std::vector<LogicalPair> &output_basis) {
    size_t k = tracked.size();
    if (output_basis.size() != k) {
        throw std::invalid_argument("tracked/output basis arity mismatch");
    }
    size_t n = final_state.num_qubits();

    // Canonical coset reps of the output basis, echelonized over GF(2)^{2n}
    // so tracked reps can be decomposed.
    struct BasisRow {
        BitVec x, z;
        BitVec combo;  // which of the 2k output ops are multiplied in
        size_t pivot;
    };
    std::vector<BasisRow> rows;
    auto pivot_of = [&](const BitVec &x, const BitVec &z) {
        size_t px = x.lowest_set_bit();
        if (px < n) {
            return px;
        }
        size_t pz = z.lowest_set_bit();
        return pz < n ? n + pz : 2 * n;
    };
    for (size_t j = 0; j < 2 * k; j++) {
        const PauliOperator &rep = (j & 1) ? output_basis[j / 2].z_rep : output_basis[j / 2].x_rep;
        PauliOperator red = final_state.reduce_mod_group(rep);
        BasisRow row{red.x, red.z, BitVec(2 * k), 0};
        row.combo.set(j, true);
        for (const auto &r : rows) {
            bool bit = r.pivot < n ? row.x.get(r.pivot) : row.z.get(r.pivot - n);
            if (bit) {
                row.x.xor_with(r.x);
                row.z.xor_with(r.z);
                row.combo.xor_with(r.combo);
            }
        }
        row.pivot = pivot_of(row.x, row.z);
        if (row.pivot >= 2 * n) {
            throw std::logic_error("output basis is not independent modulo the stabilizer group");
        }
        rows.push_back(std::move(row));
        std::sort(rows.begin(), rows.end(), [](const BasisRow &a, const BasisRow &b) {
            return a.pivot < b.pivot;
        });
    }

    auto concrete = [&](const BitVec &combo) {
        // XZ-ordered product per logical qubit index, matching apply().
        PauliOperator p = PauliOperator::identity(n);
        for (size_t j = 0; j < k; j++) {
            if (combo.get(2 * j)) {
                p.mul_inplace(output_basis[j].x_rep);
            }
            if (combo.get(2 * j + 1)) {
                p.mul_inplace(output_basis[j].z_rep);
            }
        }
        return p;
    };

    LogicalCliffordMap m;
    m.k = k;
    for (size_t j = 0; j < 2 * k; j++) {
        const PauliOperator &rep = (j & 1) ? tracked[j / 2].z_rep : tracked[j / 2].x_rep;
        PauliOperator red = final_state.reduce_mod_group(rep);
        BitVec combo(2 * k);
        BitVec x = red.x, z = red.z;
        for (const auto &r : rows) {
            bool bit = r.pivot < n ? x.get(r.pivot) : z.get(r.pivot - n);
            if (bit) {
                x.xor_with(r.x);
                z.xor_with(r.z);
                combo.xor_with(r.combo);
            }
        }
        if (x.any() || z.any()) {
            throw std::logic_error("tracked logical leaves the span of the output basis");
        }
        // rep = i^t * concrete(combo) * (group element); recover t exactly.
        PauliOperator c = concrete(combo);
        PauliOperator cadj = c;
        cadj.phase = (uint8_t)((4 - c.phase + 2 * BitVec::popcount_and(c.x, c.z)) & 3);
        PauliOperator res = final_state.reduce_mod_group(cadj.times(rep));
        if (res.x.any() || res.z.any()) {
            throw std::logic_error("logical decomposition failed");
        }
        PauliOperator img(k);
        for (size_t q = 0; q < k; q++) {
            if (combo.get(2 * q)) {
                img.x.set(q, true);
            }
            if (combo.get(2 * q + 1)) {
                img.z.set(q, true);
            }
        }
        img.phase = res.phase;
        m.images.push_back(img);
    }
    return m;
}

size_t generated_group_order(const std::vector<LogicalCliffordMap> &gens, size_t cap) {
    if (gens.empty()) {
        return 1;
    }
    auto key = [](const LogicalCliffordMap &m) {
        std::string s;
        for (const auto &img : m.images) {
            s += img.str();
            s += '|';
        }
        return s;
    };
    std::set<std::string> seen;
    std::vector<LogicalCliffordMap> frontier{LogicalCliffordMap::identity(gens[0].k)};
    seen.insert(key(frontier[0]));
    while (!frontier.empty() && seen.size() <= cap) {
        std::vector<LogicalCliffordMap> next;
        for (const auto &m : frontier) {
            for (const auto &g : gens) {
                LogicalCliffordMap c = compose(m, g);
                if (seen.insert(key(c)).second) {
                    next.push_back(c);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace twistlab
