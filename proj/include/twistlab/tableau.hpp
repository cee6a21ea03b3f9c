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

#ifndef TWISTLAB_TABLEAU_HPP
#define TWISTLAB_TABLEAU_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twistlab/pauli.hpp"

namespace twistlab {

struct LogicalPair {
    PauliOperator x_rep;
    PauliOperator z_rep;
    std::string label;
};

/// How a measurement outcome is chosen when the observable is not determined
/// by the current stabilizer group.
struct OutcomePolicy {
    enum Kind { Random, ForcedPlus, ForcedMinus } kind = ForcedPlus;

    static OutcomePolicy random() {
        return {Random};
    }
    static OutcomePolicy forced(int sign) {
        return {sign >= 0 ? ForcedPlus : ForcedMinus};
    }
};

struct MeasurementRecord {
    PauliOperator observable;
    int outcome = +1;
    bool was_random = false;
    PauliOperator frame_update;  // repair operator multiplied into damaged logical reps
};

enum class Membership { NotMember, PlusMember, MinusMember };

struct ContradictionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoRepresentativeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stabilizer code state: independent commuting Hermitian generators plus
/// tracked logical operator representatives. Mutating operations keep the
/// logicals repaired so their cosets follow the state through deformations.
class StabilizerTableau {
  public:
    StabilizerTableau() = default;
    explicit StabilizerTableau(size_t n) : n_(n) {}

    size_t num_qubits() const {
        return n_;
    }
    size_t num_generators() const {
        return generators_.size();
    }
    size_t num_logical_pairs() const {
        return logicals_.size();
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }
    const std::vector<LogicalPair> &logicals() const {
        return logicals_;
    }
    std::vector<LogicalPair> &mutable_logicals() {
        return logicals_;
    }

    /// Appends a generator without any checks beyond size/Hermiticity.
    void add_generator(const PauliOperator &g);
    void add_logical(const LogicalPair &pair);

    /// Projective measurement of a Hermitian observable, following the code
    /// deformation rule: anticommuting generators are replaced by adjacent
    /// pairwise products plus the signed observable, and tracked logicals are
    /// repaired with the first anticommuting generator.
    MeasurementRecord measure(const PauliOperator &observable, OutcomePolicy policy, std::mt19937_64 *rng = nullptr);

    /// Decides membership of +/-p in the generated group, sign included.
    Membership contains(const PauliOperator &p) const;

    /// Outcome of measuring `p` if it is deterministic, else nullopt.
    std::optional<int> deterministic_outcome(const PauliOperator &p) const;

    /// Returns p multiplied by group elements so that its support avoids the
    /// given qubits. Throws NoRepresentativeError when infeasible.
    PauliOperator clean(const PauliOperator &p, const std::vector<size_t> &avoid) const;
    PauliOperator clean(const PauliOperator &p, const BitVec &avoid) const;

    /// Canonical form: row-reduced generators plus coset-canonicalized
    /// logical representatives. Equal strings iff equal states (including
    /// the chosen logical frame).
    std::string fingerprint() const;
    /// Canonical form of the stabilizer group alone (ignores logicals).
    std::string group_fingerprint() const;

    /// True iff the two generator sets span the same subspace of GF(2)^{2n},
    /// ignoring signs.
    static bool same_row_space(const StabilizerTableau &a, const StabilizerTableau &b);

    /// Rank of the generator rows over GF(2).
    size_t rank() const;

    /// Removes a generator equal (up to sign) to `stabilized` from the
    /// generating set and registers (x_rep=stabilized, z_rep=partner) as a new
    /// logical pair. Returns the sign with which `stabilized` was in the
    /// group. Used when a deformation gives birth to a fresh logical qubit in
    /// a known eigenstate.
    int unfix_to_logical(const PauliOperator &stabilized, const PauliOperator &partner, const std::string &label);

    /// Throws std::logic_error when any structural invariant is violated:
    /// pairwise commutation, independence, Hermitian signs, logical algebra,
    /// and n - #generators - #logical_pairs == 0.
    void check_invariants() const;

    /// Canonical coset representative of p modulo the generator group
    /// (bits reduced against the cached echelon form, exact phase kept).
    PauliOperator reduce_mod_group(const PauliOperator &p) const;

  private:
    struct Echelon {
        std::vector<PauliOperator> rows;  // in row echelon order
        std::vector<size_t> pivots;       // pivot column of each row (x cols then z cols)
        bool valid = false;
    };

    size_t n_ = 0;
    std::vector<PauliOperator> generators_;
    std::vector<LogicalPair> logicals_;
    mutable Echelon echelon_;

    void invalidate_cache() {
        echelon_.valid = false;
    }
    const Echelon &echelon() const;
    void repair_logicals(const PauliOperator &observable, const PauliOperator &repair, PauliOperator *frame_update);
    void absorb_logical_measurement(const PauliOperator &observable, int outcome);
};

/// Serializes measurement records as JSON lines and parses them back.
std::string transcript_to_json_lines(const std::vector<MeasurementRecord> &records);
std::vector<MeasurementRecord> transcript_from_json_lines(const std::string &text);

}  // namespace twistlab

#endif
