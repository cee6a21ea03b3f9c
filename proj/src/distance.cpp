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

#include "twistlab/distance.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace twistlab {

int resolve_thread_count(int requested) {
    int hw = (int)std::thread::hardware_concurrency();
    if (hw <= 0) {
        hw = 1;
    }
    int n = requested > 0 ? requested : std::min(hw, 8);
    if (const char *env = std::getenv("TWISTLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) {
            n = std::min(n, cap);
        }
    }
    return std::max(1, n);
}

namespace {

/// The distance problem restricted to unpinned qubits. Weight-one generators
/// freeze their qubit: no logical representative can touch it.
struct ActiveProblem {
    size_t n_act = 0;
    std::vector<size_t> act_to_full;
    std::vector<PauliOperator> gens;          // reindexed, pins removed
    std::vector<PauliOperator> logical_reps;  // 2k reindexed coset reps
    size_t k = 0;
};

ActiveProblem project_to_active(const StabilizerTableau &t) {
    size_t n = t.num_qubits();
    std::vector<char> pinned(n, 0);
    for (const auto &g : t.generators()) {
        if (g.weight() == 1) {
            pinned[g.support().lowest_set_bit()] = 1;
        }
    }
    ActiveProblem prob;
    std::vector<size_t> full_to_act(n, SIZE_MAX);
    for (size_t q = 0; q < n; q++) {
        if (!pinned[q]) {
            full_to_act[q] = prob.act_to_full.size();
            prob.act_to_full.push_back(q);
        }
    }
    prob.n_act = prob.act_to_full.size();
    auto reindex = [&](const PauliOperator &p) {
        PauliOperator out(prob.n_act);
        p.x.for_each_set_bit([&](size_t q) {
            if (full_to_act[q] != SIZE_MAX) {
                out.x.set(full_to_act[q], true);
            }
        });
        p.z.for_each_set_bit([&](size_t q) {
            if (full_to_act[q] != SIZE_MAX) {
                out.z.set(full_to_act[q], true);
            }
        });
        out.phase = (uint8_t)(out.num_y() & 3);
        return out;
    };
    for (const auto &g : t.generators()) {
        if (g.weight() == 1) {
            continue;
        }
        PauliOperator r = reindex(g);
        if (r.x.any() || r.z.any()) {
            prob.gens.push_back(r);
        }
    }
    prob.k = t.num_logical_pairs();
    for (const auto &pair : t.logicals()) {
        prob.logical_reps.push_back(reindex(t.reduce_mod_group(pair.x_rep)));
        prob.logical_reps.push_back(reindex(t.reduce_mod_group(pair.z_rep)));
    }
    return prob;
}

PauliOperator embed_full(const PauliOperator &p, const ActiveProblem &prob, size_t n_full) {
    PauliOperator out(n_full);
    p.x.for_each_set_bit([&](size_t q) {
        out.x.set(prob.act_to_full[q], true);
    });
    p.z.for_each_set_bit([&](size_t q) {
        out.z.set(prob.act_to_full[q], true);
    });
    out.phase = (uint8_t)(out.num_y() & 3);
    return out;
}

struct Best {
    size_t weight = SIZE_MAX;
    PauliOperator op;
    void offer(const PauliOperator &p, size_t w) {
        if (w < weight || (w == weight && p.bits_less(op))) {
            weight = w;
            op = p;
        }
    }
    void merge(const Best &other) {
        if (other.weight != SIZE_MAX) {
            offer(other.op, other.weight);
        }
    }
};

// Sweeps every logical coset rep * <generators> by Gray code.
Best exhaustive_sweep(const ActiveProblem &prob, int threads) {
    size_t m = prob.gens.size();
    size_t classes = (size_t{1} << (2 * prob.k)) - 1;
    std::vector<PauliOperator> reps;
    for (size_t cls = 1; cls <= classes; cls++) {
        PauliOperator rep(prob.n_act);
        for (size_t j = 0; j < 2 * prob.k; j++) {
            if ((cls >> j) & 1) {
                rep.mul_inplace(prob.logical_reps[j]);
            }
        }
        reps.push_back(rep);
    }
    auto sweep_one = [&](const PauliOperator &rep, Best *best) {
        PauliOperator cur = rep;
        best->offer(cur, cur.weight());
        uint64_t total = uint64_t{1} << m;
        for (uint64_t i = 1; i < total; i++) {
            size_t bit = (size_t)std::countr_zero(i);
            cur.x.xor_with(prob.gens[bit].x);
            cur.z.xor_with(prob.gens[bit].z);
            size_t w = cur.weight();
            if (w <= best->weight) {
                best->offer(cur, w);
            }
        }
    };
    int nthreads = std::min<int>(resolve_thread_count(threads), (int)reps.size());
    std::vector<Best> partial(reps.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= reps.size()) {
                return;
            }
            sweep_one(reps[i], &partial[i]);
        }
    };
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; i++) {
            pool.emplace_back(work);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    Best best;
    for (const auto &p : partial) {
        best.merge(p);
    }
    return best;
}

/// Shared read-only tables for the weight-bounded search. Two qubits are
/// adjacent when some generator supports both; a minimal logical is connected
/// under this adjacency, otherwise one of its components would itself be a
/// smaller logical or a group element.
struct SearchTables {
    const ActiveProblem &prob;
    std::vector<std::vector<uint32_t>> adj;
    std::vector<std::vector<uint32_t>> gens_at;
    std::vector<std::pair<size_t, std::pair<BitVec, BitVec>>> ech;

    explicit SearchTables(const ActiveProblem &p) : prob(p) {
        size_t n = prob.n_act;
        adj.resize(n);
        gens_at.resize(n);
        std::vector<std::vector<uint32_t>> members(prob.gens.size());
        for (size_t gi = 0; gi < prob.gens.size(); gi++) {
            prob.gens[gi].support().for_each_set_bit([&](size_t q) {
                members[gi].push_back((uint32_t)q);
                gens_at[q].push_back((uint32_t)gi);
            });
        }
        std::vector<char> mark(n, 0);
        for (size_t q = 0; q < n; q++) {
            std::vector<uint32_t> touched;
            for (uint32_t gi : gens_at[q]) {
                for (uint32_t p2 : members[gi]) {
                    if (p2 != q && !mark[p2]) {
                        mark[p2] = 1;
                        touched.push_back(p2);
                        adj[q].push_back(p2);
                    }
                }
            }
            for (uint32_t t : touched) {
                mark[t] = 0;
            }
            std::sort(adj[q].begin(), adj[q].end());
        }
        for (const auto &g : prob.gens) {
            std::pair<BitVec, BitVec> row{g.x, g.z};
            reduce_row(&row);
            size_t piv = pivot_of(row);
            if (piv < 2 * prob.n_act) {
                ech.push_back({piv, row});
                std::sort(ech.begin(), ech.end(), [](const auto &a, const auto &b) {
                    return a.first < b.first;
                });
            }
        }
    }

    size_t pivot_of(const std::pair<BitVec, BitVec> &row) const {
        size_t px = row.first.lowest_set_bit();
        if (px < prob.n_act) {
            return px;
        }
        size_t pz = row.second.lowest_set_bit();
        return pz < prob.n_act ? prob.n_act + pz : 2 * prob.n_act;
    }
    void reduce_row(std::pair<BitVec, BitVec> *row) const {
        for (const auto &[piv, e] : ech) {
            bool bit = piv < prob.n_act ? row->first.get(piv) : row->second.get(piv - prob.n_act);
            if (bit) {
                row->first.xor_with(e.first);
                row->second.xor_with(e.second);
            }
        }
    }
    bool in_group_bits(const PauliOperator &p) const {
        std::pair<BitVec, BitVec> row{p.x, p.z};
        reduce_row(&row);
        return pivot_of(row) >= 2 * prob.n_act;
    }

    /// Logical operators supported on exactly `qs`: solve the local
    /// commutation system and keep full-support non-group solutions.
    void check_support(const std::vector<uint32_t> &qs, Best *best) const {
        size_t w = qs.size();
        std::vector<uint32_t> gset;
        for (uint32_t q : qs) {
            gset.insert(gset.end(), gens_at[q].begin(), gens_at[q].end());
        }
        std::sort(gset.begin(), gset.end());
        gset.erase(std::unique(gset.begin(), gset.end()), gset.end());
        size_t vars = 2 * w;  // x vars then z vars, w <= 16
        std::vector<uint64_t> red;
        std::vector<size_t> pivs;
        for (uint32_t gi : gset) {
            const PauliOperator &g = prob.gens[gi];
            uint64_t row = 0;
            for (size_t j = 0; j < w; j++) {
                if (g.z.get(qs[j])) {
                    row |= uint64_t{1} << j;
                }
                if (g.x.get(qs[j])) {
                    row |= uint64_t{1} << (w + j);
                }
            }
            for (size_t i = 0; i < red.size(); i++) {
                if ((row >> pivs[i]) & 1) {
                    row ^= red[i];
                }
            }
            if (row) {
                pivs.push_back((size_t)std::countr_zero(row));
                red.push_back(row);
            }
        }
        if (red.size() >= vars) {
            return;  // only the trivial solution
        }
        // Nullspace basis from the free variables (full back-substitution).
        for (size_t i = 0; i < red.size(); i++) {
            for (size_t j = 0; j < red.size(); j++) {
                if (i != j && ((red[j] >> pivs[i]) & 1)) {
                    red[j] ^= red[i];
                }
            }
        }
        std::vector<char> is_piv(vars, 0);
        for (size_t p : pivs) {
            is_piv[p] = 1;
        }
        std::vector<uint64_t> basis;
        for (size_t v = 0; v < vars; v++) {
            if (is_piv[v]) {
                continue;
            }
            uint64_t sol = uint64_t{1} << v;
            for (size_t i = 0; i < red.size(); i++) {
                if ((red[i] >> v) & 1) {
                    sol ^= uint64_t{1} << pivs[i];
                }
            }
            basis.push_back(sol);
        }
        if (basis.size() > 20) {
            return;  // pathological; not reachable for surface-code layouts
        }
        uint64_t count = uint64_t{1} << basis.size();
        uint64_t sol = 0;
        for (uint64_t i = 1; i < count; i++) {
            sol ^= basis[(size_t)std::countr_zero(i)];
            bool full = true;
            for (size_t j = 0; j < w; j++) {
                if (!((sol >> j) & 1) && !((sol >> (w + j)) & 1)) {
                    full = false;
                    break;
                }
            }
            if (!full) {
                continue;
            }
            PauliOperator cand(prob.n_act);
            for (size_t j = 0; j < w; j++) {
                if ((sol >> j) & 1) {
                    cand.x.set(qs[j], true);
                }
                if ((sol >> (w + j)) & 1) {
                    cand.z.set(qs[j], true);
                }
            }
            if (in_group_bits(cand)) {
                continue;
            }
            cand.phase = (uint8_t)(cand.num_y() & 3);
            best->offer(cand, w);
        }
    }
};

/// ESU-style enumeration: every connected subset of size w is visited exactly
/// once, rooted at its smallest vertex.
struct ConnectedEnumerator {
    const SearchTables &tables;
    size_t target;
    Best *best;
    std::vector<char> in_nbr;  // subset or neighbour-of-subset marker
    std::vector<uint32_t> subset;
    uint32_t root = 0;

    ConnectedEnumerator(const SearchTables &t, size_t w, Best *b)
        : tables(t), target(w), best(b), in_nbr(t.prob.n_act, 0) {}

    void run(uint32_t r) {
        root = r;
        subset.assign(1, r);
        std::fill(in_nbr.begin(), in_nbr.end(), 0);
        in_nbr[r] = 1;
        std::vector<uint32_t> ext;
        for (uint32_t u : tables.adj[r]) {
            if (u > r) {
                in_nbr[u] = 1;
                ext.push_back(u);
            }
        }
        extend(std::move(ext));
    }

    void extend(std::vector<uint32_t> ext) {
        if (subset.size() == target) {
            tables.check_support(subset, best);
            return;
        }
        while (!ext.empty()) {
            uint32_t v = ext.back();
            ext.pop_back();
            std::vector<uint32_t> fresh;
            for (uint32_t u : tables.adj[v]) {
                if (u > root && !in_nbr[u]) {
                    in_nbr[u] = 1;
                    fresh.push_back(u);
                }
            }
            std::vector<uint32_t> next_ext = ext;
            next_ext.insert(next_ext.end(), fresh.begin(), fresh.end());
            subset.push_back(v);
            extend(std::move(next_ext));
            subset.pop_back();
            for (uint32_t u : fresh) {
                in_nbr[u] = 0;
            }
        }
    }
};

}  // namespace

std::optional<PauliOperator> find_logical_witness(
    const StabilizerTableau &t, int weight, const std::vector<size_t> &hint_qubits) {
    ActiveProblem prob = project_to_active(t);
    SearchTables tables(prob);
    std::vector<size_t> full_to_act(t.num_qubits(), SIZE_MAX);
    for (size_t i = 0; i < prob.act_to_full.size(); i++) {
        full_to_act[prob.act_to_full[i]] = i;
    }
    for (size_t hint : hint_qubits) {
        if (hint >= full_to_act.size() || full_to_act[hint] == SIZE_MAX) {
            continue;
        }
        Best best;
        // Roots must be subset minima in the ESU scheme; to guarantee the
        // hint appears in some enumerated subset, try every root at or below
        // it and stop at the first witness containing progress.
        ConnectedEnumerator en(tables, (size_t)weight, &best);
        en.run((uint32_t)full_to_act[hint]);
        if (best.weight == (size_t)weight) {
            return embed_full(best.op, prob, t.num_qubits());
        }
    }
    return std::nullopt;
}

DistanceReport code_distance(const StabilizerTableau &t, int max_weight, int threads) {
    if (t.num_logical_pairs() == 0) {
        throw std::invalid_argument("code_distance requires at least one logical qubit");
    }
    ActiveProblem prob = project_to_active(t);
    DistanceReport rep;

    if (prob.gens.size() <= 26 && prob.k <= 3) {
        Best best = exhaustive_sweep(prob, threads);
        rep.method = "exhaustive";
        rep.found = best.weight != SIZE_MAX;
        if (rep.found) {
            rep.d = (int)best.weight;
            rep.witness = embed_full(best.op, prob, t.num_qubits());
        }
        return rep;
    }

    rep.method = "weight-bounded";
    SearchTables tables(prob);
    for (int w = 1; w <= max_weight; w++) {
        int nthreads = resolve_thread_count(threads);
        std::vector<Best> partial((size_t)nthreads);
        std::atomic<uint32_t> next{0};
        auto work = [&](int tix) {
            ConnectedEnumerator en(tables, (size_t)w, &partial[(size_t)tix]);
            while (true) {
                uint32_t root = next.fetch_add(1);
                if (root >= prob.n_act) {
                    return;
                }
                en.run(root);
            }
        };
        if (nthreads <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < nthreads; i++) {
                pool.emplace_back(work, i);
            }
            for (auto &th : pool) {
                th.join();
            }
        }
        Best best;
        for (auto &p : partial) {
            best.merge(p);
        }
        if (best.weight != SIZE_MAX) {
            rep.found = true;
            rep.d = (int)best.weight;
            rep.witness = embed_full(best.op, prob, t.num_qubits());
            return rep;
        }
    }
    rep.found = false;
    rep.d = max_weight + 1;
    return rep;
}

}  // namespace twistlab
