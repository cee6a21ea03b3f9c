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

#ifndef TWISTLAB_CLIFFORD_MAP_HPP
#define TWISTLAB_CLIFFORD_MAP_HPP

#include <string>
#include <vector>

#include "twistlab/tableau.hpp"

namespace twistlab {

/// The induced action of a Clifford channel on k logical qubits: the image of
/// each logical basis generator as an abstract signed k-qubit Pauli. Basis
/// ordering is X_0, Z_0, X_1, Z_1, ...; images carry exact phases, so the
/// symplectic matrix and the sign vector are both recoverable.
struct LogicalCliffordMap {
    size_t k = 0;
    std::vector<PauliOperator> images;  // 2k abstract k-qubit Paulis

    static LogicalCliffordMap identity(size_t k);

    const PauliOperator &image_x(size_t j) const {
        return images[2 * j];
    }
    const PauliOperator &image_z(size_t j) const {
        return images[2 * j + 1];
    }

    /// Applies the map to an abstract Pauli by substitution, with exact phase.
    PauliOperator apply(const PauliOperator &p) const;

    bool preserves_symplectic_form() const;
    bool is_pauli() const;  // symplectic part is the identity (sign-only map)
    /// Sign vector entries, +1/-1 per basis image (requires Hermitian images).
    std::vector<int> sign_vector() const;

    LogicalCliffordMap inverse() const;

    bool operator==(const LogicalCliffordMap &other) const = default;
    /// Equal symplectic action, signs ignored.
    bool same_symplectic(const LogicalCliffordMap &other) const;
    std::string str() const;
};

/// b after a.
LogicalCliffordMap compose(const LogicalCliffordMap &a, const LogicalCliffordMap &b);

/// Conjugation maps of the standard gates, in the convention S = diag(1, i),
/// H = (X + Z)/sqrt(2), Y = i X Z.
LogicalCliffordMap map_identity(size_t k);
LogicalCliffordMap map_S();                     // X -> Y, Z -> Z
LogicalCliffordMap map_H();                     // X -> Z, Z -> X
LogicalCliffordMap map_XS();                    // conjugation by X*S (B2 target up to phase)
LogicalCliffordMap map_YH();                    // conjugation by Y*H (B1 B2 B1 target up to phase)
LogicalCliffordMap map_pauli(const PauliOperator &abstract_pauli);  // conjugation by a logical Pauli
LogicalCliffordMap map_cnot(size_t control, size_t target, size_t k);

/// Expresses each tracked logical representative in the given output basis
/// modulo the final stabilizer group, with exact signs. `tracked` and
/// `output_basis` must have equal length; reps live in `final_state`'s frame.
LogicalCliffordMap extract_logical_map(
    const StabilizerTableau &final_state, const std::vector<LogicalPair> &tracked,
    const std::vector<LogicalPair> &output_basis);

/// Size of the group generated by the given maps under composition, capped.
size_t generated_group_order(const std::vector<LogicalCliffordMap> &gens, size_t cap);

}  // namespace twistlab

#endif
