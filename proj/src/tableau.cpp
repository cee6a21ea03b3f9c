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

#include "twistlab/tableau.hpp"

#include <algorithm>
#include <sstream>

namespace twistlab {

namespace {

// Symplectic column accessor: columns [0, n) are x bits, [n, 2n) are z bits.
bool sym_bit(const PauliOperator &p, size_t col) {
    return col < p.n ? p.x.get(col) : p.z.get(col - p.n);
}

size_t leading_col(const PauliOperator &p) {
    size_t cx = p.x.lowest_set_bit();
    if (cx < p.n) {
        return cx;
    }
    size_t cz = p.z.lowest_set_bit();
    if (cz < p.n) {
        return p.n + cz;
    }
    return 2 * p.n;
}

}  // namespace

void StabilizerTableau::add_generator(const PauliOperator &g) {
    if (g.n != n_) {
        throw std::invalid_argument("generator size mismatch");
    }
    if (!g.is_hermitian()) {
        throw std::invalid_argument("generator must be Hermitian: " + g.str());
    }
    generators_.push_back(g);
    invalidate_cache();
}

void StabilizerTableau::add_logical(const LogicalPair &pair) {
    if (pair.x_rep.n != n_ || pair.z_rep.n != n_) {
        throw std::invalid_argument("logical size mismatch");
    }
    logicals_.push_back(pair);
}

const StabilizerTableau::Echelon &StabilizerTableau::echelon() const {
    if (echelon_.valid) {
        return echelon_;
    }
    echelon_.rows = generators_;
    echelon_.pivots.clear();
    auto &rows = echelon_.rows;
    size_t done = 0;
    for (size_t col = 0; col < 2 * n_ && done < rows.size(); col++) {
        size_t hit = rows.size();
        for (size_t r = done; r < rows.size(); r++) {
            if (sym_bit(rows[r], col)) {
                hit = r;
                break;
            }
        }
        if (hit == rows.size()) {
            continue;
        }
        std::swap(rows[done], rows[hit]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != done && sym_bit(rows[r], col)) {
                rows[r].mul_inplace(rows[done]);
            }
        }
        echelon_.pivots.push_back(col);
        done++;
    }
    // Dependent generators reduce to (+/-)identity; they are not allowed by
    // the invariants but rank() still reports correctly if present.
    while (rows.size() > done) {
        rows.pop_back();
    }
    echelon_.valid = true;
    return echelon_;
}

size_t StabilizerTableau::rank() const {
    return echelon().rows.size();
}

PauliOperator StabilizerTableau::reduce_mod_group(const PauliOperator &p) const {
    const Echelon &e = echelon();
    PauliOperator r = p;
    for (size_t i = 0; i < e.rows.size(); i++) {
        if (sym_bit(r, e.pivots[i])) {
            r.mul_inplace(e.rows[i]);
        }
    }
    return r;
}

Membership StabilizerTableau::contains(const PauliOperator &p) const {
    if (p.n != n_) {
        throw std::invalid_argument("contains: size mismatch");
    }
    PauliOperator r = reduce_mod_group(p);
    if (r.x.any() || r.z.any()) {
        return Membership::NotMember;
    }
    if (r.phase & 1) {
        throw std::logic_error("contains: +/-i multiple of identity reached; non-Hermitian input?");
    }
    return r.phase == 0 ? Membership::PlusMember : Membership::MinusMember;
}

std::optional<int> StabilizerTableau::deterministic_outcome(const PauliOperator &p) const {
    for (const auto &g : generators_) {
        if (!p.commutes_with(g)) {
            return std::nullopt;
        }
    }
    switch (contains(p)) {
        case Membership::PlusMember:
            return +1;
        case Membership::MinusMember:
            return -1;
        default:
            return std::nullopt;
    }
}

void StabilizerTableau::repair_logicals(
    const PauliOperator &observable, const PauliOperator &repair, PauliOperator *frame_update) {
    bool used = false;
    auto fix = [&](PauliOperator *rep) {
        rep->mul_inplace(repair);
        if (rep->sign_exponent() & 1) {
            rep->phase = (uint8_t)((rep->phase + 3) & 3);  // Hermitian convention: +i -> +
        }
        used = true;
    };
    for (auto &pair : logicals_) {
        if (!pair.x_rep.commutes_with(observable)) {
            fix(&pair.x_rep);
        }
        if (!pair.z_rep.commutes_with(observable)) {
            fix(&pair.z_rep);
        }
    }
    *frame_update = used ? repair : PauliOperator::identity(n_);
}

void StabilizerTableau::absorb_logical_measurement(const PauliOperator &observable, int outcome) {
    // The observable commutes with every generator and is not in the group,
    // so it acts on the logical algebra. Rewrite the logical basis so exactly
    // one representative anticommutes with it, then retire that pair.
    std::vector<PauliOperator *> hit;
    for (auto &pair : logicals_) {
        if (!pair.x_rep.commutes_with(observable)) {
            hit.push_back(&pair.x_rep);
        }
        if (!pair.z_rep.commutes_with(observable)) {
            hit.push_back(&pair.z_rep);
        }
    }
    if (hit.empty()) {
        throw std::logic_error("measured operator is outside the tracked logical algebra");
    }
    PauliOperator pivot = *hit[0];
    for (size_t i = 1; i < hit.size(); i++) {
        hit[i]->mul_inplace(pivot);
        if (hit[i]->sign_exponent() & 1) {
            hit[i]->phase = (uint8_t)((hit[i]->phase + 3) & 3);
        }
    }
    size_t pair_index = logicals_.size();
    for (size_t i = 0; i < logicals_.size(); i++) {
        if (&logicals_[i].x_rep == hit[0] || &logicals_[i].z_rep == hit[0]) {
            pair_index = i;
            break;
        }
    }
    logicals_.erase(logicals_.begin() + (ptrdiff_t)pair_index);
    PauliOperator g = observable;
    if (outcome < 0) {
        g.set_sign(-g.sign());
    }
    generators_.push_back(g);
    invalidate_cache();
}

MeasurementRecord StabilizerTableau::measure(
    const PauliOperator &observable, OutcomePolicy policy, std::mt19937_64 *rng) {
    if (observable.n != n_) {
        throw std::invalid_argument("measure: size mismatch");
    }
    if (!observable.is_hermitian()) {
        throw std::invalid_argument("measure: observable is not Hermitian: " + observable.str());
    }

    MeasurementRecord rec;
    rec.observable = observable;
    rec.frame_update = PauliOperator::identity(n_);

    std::vector<size_t> anti;
    for (size_t i = 0; i < generators_.size(); i++) {
        if (!generators_[i].commutes_with(observable)) {
            anti.push_back(i);
        }
    }

    auto choose_outcome = [&]() -> int {
        switch (policy.kind) {
            case OutcomePolicy::ForcedPlus:
                return +1;
            case OutcomePolicy::ForcedMinus:
                return -1;
            default:
                if (rng == nullptr) {
                    throw std::invalid_argument("random outcome policy requires a PRNG");
                }
                return ((*rng)() & 1) ? -1 : +1;
        }
    };

    if (!anti.empty()) {
        rec.was_random = true;
        rec.outcome = choose_outcome();
        PauliOperator repair = generators_[anti[0]];
        std::vector<PauliOperator> replacements;
        replacements.reserve(anti.size());
        for (size_t j = 0; j + 1 < anti.size(); j++) {
            replacements.push_back(generators_[anti[j]].times(generators_[anti[j + 1]]));
        }
        PauliOperator fixed = observable;
        if (rec.outcome < 0) {
            fixed.set_sign(-fixed.sign());
        }
        replacements.push_back(fixed);
        for (size_t j = 0; j < anti.size(); j++) {
            generators_[anti[j]] = replacements[j];
        }
        invalidate_cache();
        repair_logicals(observable, repair, &rec.frame_update);
        return rec;
    }

    Membership m = contains(observable);
    if (m != Membership::NotMember) {
        rec.was_random = false;
        rec.outcome = m == Membership::PlusMember ? +1 : -1;
        if ((policy.kind == OutcomePolicy::ForcedPlus && rec.outcome == -1) ||
            (policy.kind == OutcomePolicy::ForcedMinus && rec.outcome == +1)) {
            throw ContradictionError("forced outcome contradicts deterministic value of " + observable.str());
        }
        return rec;
    }

    // Logical observable: the state is a superposition over its eigenspaces.
    rec.was_random = true;
    rec.outcome = choose_outcome();
    absorb_logical_measurement(observable, rec.outcome);
    return rec;
}

PauliOperator StabilizerTableau::clean(const PauliOperator &p, const std::vector<size_t> &avoid) const {
    BitVec mask(n_);
    for (size_t q : avoid) {
        if (q >= n_) {
            throw std::out_of_range("clean: qubit out of range");
        }
        mask.set(q, true);
    }
    return clean(p, mask);
}

PauliOperator StabilizerTableau::clean(const PauliOperator &p, const BitVec &avoid) const {
    if (p.n != n_) {
        throw std::invalid_argument("clean: size mismatch");
    }
    std::vector<size_t> cols;
    avoid.for_each_set_bit([&](size_t q) {
        cols.push_back(q);
    });
    if (cols.empty()) {
        return p;
    }
    size_t m = generators_.size();
    // One equation per (avoid qubit, x/z half): the combination must cancel
    // p's bits there. Row layout: m coefficient columns plus RHS column.
    std::vector<BitVec> eqs;
    eqs.reserve(2 * cols.size());
    for (size_t half = 0; half < 2; half++) {
        for (size_t q : cols) {
            BitVec row(m + 1);
            bool rhs = half == 0 ? p.x.get(q) : p.z.get(q);
            for (size_t i = 0; i < m; i++) {
                bool b = half == 0 ? generators_[i].x.get(q) : generators_[i].z.get(q);
                row.set(i, b);
            }
            row.set(m, rhs);
            eqs.push_back(std::move(row));
        }
    }
    // Gaussian elimination over the coefficient columns.
    std::vector<size_t> pivot_col;
    size_t done = 0;
    for (size_t col = 0; col < m && done < eqs.size(); col++) {
        size_t hit = eqs.size();
        for (size_t r = done; r < eqs.size(); r++) {
            if (eqs[r].get(col)) {
                hit = r;
                break;
            }
        }
        if (hit == eqs.size()) {
            continue;
        }
        std::swap(eqs[done], eqs[hit]);
        for (size_t r = 0; r < eqs.size(); r++) {
            if (r != done && eqs[r].get(col)) {
                eqs[r].xor_with(eqs[done]);
            }
        }
        pivot_col.push_back(col);
        done++;
    }
    for (size_t r = done; r < eqs.size(); r++) {
        if (eqs[r].get(m)) {
            throw NoRepresentativeError("no representative avoiding the requested qubits exists for " + p.str());
        }
    }
    PauliOperator result = p;
    for (size_t r = 0; r < done; r++) {
        if (eqs[r].get(m)) {
            result.mul_inplace(generators_[pivot_col[r]]);
        }
    }
    if (result.sign_exponent() & 1) {
        result.phase = (uint8_t)((result.phase + 3) & 3);
    }
    return result;
}

std::string StabilizerTableau::fingerprint() const {
    std::ostringstream out;
    out << group_fingerprint();
    for (const auto &pair : logicals_) {
        out << "L " << pair.label << " " << reduce_mod_group(pair.x_rep).str() << " "
            << reduce_mod_group(pair.z_rep).str() << "\n";
    }
    return out.str();
}

std::string StabilizerTableau::group_fingerprint() const {
    const Echelon &e = echelon();
    std::ostringstream out;
    out << "n=" << n_ << " m=" << e.rows.size() << "\n";
    for (const auto &row : e.rows) {
        out << row.str() << "\n";
    }
    return out.str();
}

namespace {

size_t bit_rank(std::vector<std::pair<BitVec, BitVec>> rows, size_t n) {
    size_t done = 0;
    for (size_t col = 0; col < 2 * n && done < rows.size(); col++) {
        bool in_x = col < n;
        size_t idx = in_x ? col : col - n;
        size_t hit = rows.size();
        for (size_t r = done; r < rows.size(); r++) {
            const BitVec &half = in_x ? rows[r].first : rows[r].second;
            if (half.get(idx)) {
                hit = r;
                break;
            }
        }
        if (hit == rows.size()) {
            continue;
        }
        std::swap(rows[done], rows[hit]);
        for (size_t r = done + 1; r < rows.size(); r++) {
            const BitVec &half = in_x ? rows[r].first : rows[r].second;
            if (half.get(idx)) {
                rows[r].first.xor_with(rows[done].first);
                rows[r].second.xor_with(rows[done].second);
            }
        }
        done++;
    }
    return done;
}

}  // namespace

bool StabilizerTableau::same_row_space(const StabilizerTableau &a, const StabilizerTableau &b) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    std::vector<std::pair<BitVec, BitVec>> ra, rb, rab;
    for (const auto &g : a.generators()) {
        ra.push_back({g.x, g.z});
        rab.push_back({g.x, g.z});
    }
    for (const auto &g : b.generators()) {
        rb.push_back({g.x, g.z});
        rab.push_back({g.x, g.z});
    }
    size_t n = a.num_qubits();
    size_t k1 = bit_rank(ra, n);
    size_t k2 = bit_rank(rb, n);
    if (k1 != k2) {
        return false;
    }
    return bit_rank(rab, n) == k1;
}

int StabilizerTableau::unfix_to_logical(
    const PauliOperator &stabilized, const PauliOperator &partner, const std::string &label) {
    Membership m = contains(stabilized);
    if (m == Membership::NotMember) {
        throw std::invalid_argument("unfix_to_logical: operator is not in the stabilizer group");
    }
    int born_sign = m == Membership::PlusMember ? +1 : -1;

    // Track which original generators combine to the operator.
    size_t count = generators_.size();
    std::vector<PauliOperator> rows = generators_;
    std::vector<BitVec> combos(count, BitVec(count));
    for (size_t i = 0; i < count; i++) {
        combos[i].set(i, true);
    }
    PauliOperator r = stabilized;
    BitVec rc(count);
    size_t done = 0;
    for (size_t col = 0; col < 2 * n_ && done < count; col++) {
        size_t hit = count;
        for (size_t i = done; i < count; i++) {
            if (sym_bit(rows[i], col)) {
                hit = i;
                break;
            }
        }
        if (hit == count) {
            continue;
        }
        std::swap(rows[done], rows[hit]);
        std::swap(combos[done], combos[hit]);
        for (size_t i = done + 1; i < count; i++) {
            if (sym_bit(rows[i], col)) {
                rows[i].mul_inplace(rows[done]);
                combos[i].xor_with(combos[done]);
            }
        }
        if (sym_bit(r, col)) {
            r.mul_inplace(rows[done]);
            rc.xor_with(combos[done]);
        }
        done++;
    }
    if (r.x.any() || r.z.any()) {
        throw std::logic_error("unfix_to_logical: reduction failed");
    }
    std::vector<size_t> used;
    rc.for_each_set_bit([&](size_t i) {
        used.push_back(i);
    });
    if (used.empty()) {
        throw std::invalid_argument("unfix_to_logical: operator is the identity");
    }
    // Keep the span of the others: replace chained pairs, drop the first.
    std::vector<PauliOperator> next;
    next.reserve(count - 1);
    for (size_t i = 0; i < count; i++) {
        if (std::find(used.begin(), used.end(), i) == used.end()) {
            next.push_back(generators_[i]);
        }
    }
    for (size_t j = 0; j + 1 < used.size(); j++) {
        next.push_back(generators_[used[j]].times(generators_[used[j + 1]]));
    }
    generators_ = std::move(next);
    invalidate_cache();

    LogicalPair pair;
    pair.x_rep = stabilized;
    pair.z_rep = partner;
    pair.label = label;
    if (pair.x_rep.commutes_with(pair.z_rep)) {
        throw std::invalid_argument("unfix_to_logical: partner must anticommute with the unfixed operator");
    }
    logicals_.push_back(pair);
    return born_sign;
}

void StabilizerTableau::check_invariants() const {
    for (size_t i = 0; i < generators_.size(); i++) {
        if (!generators_[i].is_hermitian()) {
            throw std::logic_error("generator not Hermitian: " + generators_[i].str());
        }
        for (size_t j = i + 1; j < generators_.size(); j++) {
            if (!generators_[i].commutes_with(generators_[j])) {
                throw std::logic_error(
                    "generators anticommute: " + generators_[i].str() + " vs " + generators_[j].str());
            }
        }
    }
    if (rank() != generators_.size()) {
        throw std::logic_error(
            "generators are dependent: rank " + std::to_string(rank()) + " of " +
            std::to_string(generators_.size()));
    }
    for (size_t a = 0; a < logicals_.size(); a++) {
        const auto &pa = logicals_[a];
        for (const PauliOperator *rep : {&pa.x_rep, &pa.z_rep}) {
            for (const auto &g : generators_) {
                if (!rep->commutes_with(g)) {
                    throw std::logic_error("logical rep anticommutes with a generator: " + rep->str());
                }
            }
            if (contains(*rep) != Membership::NotMember) {
                throw std::logic_error("logical rep is in the stabilizer group: " + rep->str());
            }
        }
        if (pa.x_rep.commutes_with(pa.z_rep)) {
            throw std::logic_error("logical pair fails to anticommute: " + pa.label);
        }
        for (size_t b = a + 1; b < logicals_.size(); b++) {
            const auto &pb = logicals_[b];
            if (!pa.x_rep.commutes_with(pb.x_rep) || !pa.x_rep.commutes_with(pb.z_rep) ||
                !pa.z_rep.commutes_with(pb.x_rep) || !pa.z_rep.commutes_with(pb.z_rep)) {
                throw std::logic_error("cross-pair logical commutation violated: " + pa.label + " vs " + pb.label);
            }
        }
    }
    if (n_ != generators_.size() + logicals_.size()) {
        throw std::logic_error(
            "qubit bookkeeping broken: n=" + std::to_string(n_) + " generators=" +
            std::to_string(generators_.size()) + " pairs=" + std::to_string(logicals_.size()));
    }
}

}  // namespace twistlab
