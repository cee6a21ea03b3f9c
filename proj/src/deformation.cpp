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

#include "twistlab/deformation.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace twistlab {

DeformationEngine::DeformationEngine(CompiledCode code, uint64_t seed, OutcomePolicy default_policy)
    : code_(std::move(code)), state_(code_.tableau), default_policy_(default_policy), rng_(seed),
      dirty_(code_.tableau.num_qubits()) {}

MeasurementRecord DeformationEngine::measure_observable(
    const PauliOperator &obs, std::optional<OutcomePolicy> policy) {
    OutcomePolicy pol = policy.value_or(default_policy_);
    auto det = state_.deterministic_outcome(obs);
    if (det) {
        pol = OutcomePolicy::forced(*det);
    }
    MeasurementRecord rec = state_.measure(obs, pol, &rng_);
    transcript_.push_back(rec);
    dirty_.or_with(obs.support());
    max_measured_weight_ = std::max(max_measured_weight_, obs.weight());
    return rec;
}

void DeformationEngine::clean_logicals_off(const PauliOperator &obs) {
    BitVec sup = obs.support();
    for (auto &pair : state_.mutable_logicals()) {
        for (PauliOperator *rep : {&pair.x_rep, &pair.z_rep}) {
            if (!BitVec::intersects(rep->support(), sup)) {
                continue;
            }
            try {
                *rep = state_.clean(*rep, sup);
            } catch (const NoRepresentativeError &) {
                // No avoiding representative; the measurement-time repair
                // keeps the coset tracked exactly.
            }
        }
    }
}

void DeformationEngine::deform_to(
    const LatticeLayout &next_layout, const std::vector<LogicalPair> &expected_births, const std::string &step_name) {
    CompiledCode next = compile_layout(next_layout);
    size_t n = state_.num_qubits();
    if (next.tableau.num_qubits() != n) {
        throw std::invalid_argument("deform_to cannot change the lattice extents");
    }

    // Plan: new or re-based pins first, then the changed target stabilizers.
    std::vector<PauliOperator> plan;
    for (const auto &[q, basis] : next.pins) {
        auto it = code_.pins.find(q);
        if (it == code_.pins.end() || it->second != basis) {
            plan.push_back(PauliOperator::single(n, next.layout.qubit_index(q), pin_char(basis)));
        }
    }
    std::set<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>> old_gens;
    for (const auto &g : code_.tableau.generators()) {
        if (g.weight() > 1) {
            old_gens.insert({g.x.words(), g.z.words()});
        }
    }
    for (const auto &g : next.tableau.generators()) {
        if (g.weight() <= 1) {
            continue;  // pins handled above
        }
        if (!old_gens.count({g.x.words(), g.z.words()}) || BitVec::intersects(g.support(), dirty_)) {
            plan.push_back(g);
        }
    }

    for (const auto &obs : plan) {
        clean_logicals_off(obs);
        measure_observable(obs);
    }
    for (const auto &birth : expected_births) {
        state_.unfix_to_logical(birth.x_rep, birth.z_rep, birth.label);
    }
    if (check_each_step_) {
        if (!StabilizerTableau::same_row_space(state_, next.tableau)) {
            throw std::logic_error("deformation did not land on the target stabilizer group: " + step_name);
        }
        if (state_.num_logical_pairs() != next.tableau.num_logical_pairs()) {
            throw std::logic_error(
                "logical qubit count mismatch after deformation: " + step_name + " have " +
                std::to_string(state_.num_logical_pairs()) + " want " +
                std::to_string(next.tableau.num_logical_pairs()));
        }
        state_.check_invariants();
    }
    code_ = std::move(next);
    dirty_ = BitVec(state_.num_qubits());
    audit_step(step_name.empty() ? "deform" : step_name);
}

void DeformationEngine::move_twist(size_t line_index, const std::vector<Coord> &extension, const std::string &step_name) {
    if (line_index >= code_.layout.defect_lines.size()) {
        throw std::invalid_argument("no such defect line");
    }
    if (extension.empty()) {
        audit_step(step_name.empty() ? "move_twist(noop)" : step_name);
        return;
    }
    for (Coord q : extension) {
        if (!code_.layout.active(q)) {
            throw SchedulingError("twist path collides with a defect or leaves the lattice");
        }
    }
    LatticeLayout next = code_.layout;
    auto &path = next.defect_lines[line_index].path;
    auto adjacent = [](Coord a, Coord b) {
        return std::abs(a.r - b.r) + std::abs(a.c - b.c) == 1;
    };
    if (adjacent(extension.front(), path.back())) {
        path.insert(path.end(), extension.begin(), extension.end());
    } else if (adjacent(extension.front(), path.front())) {
        path.insert(path.begin(), extension.begin(), extension.end());
        std::reverse(path.begin(), path.begin() + (ptrdiff_t)extension.size());
    } else {
        throw SchedulingError("twist extension does not touch either end of the line");
    }
    deform_to(next, {}, step_name.empty() ? "move_twist" : step_name);
}

void DeformationEngine::create_line(const std::vector<Coord> &path, int sign, const std::string &step_name) {
    for (Coord q : path) {
        if (!code_.layout.active(q)) {
            throw SchedulingError("new defect line collides with existing structure");
        }
    }
    deform_to(code_.layout.with_defect_line({path, sign}), {}, step_name.empty() ? "create_line" : step_name);
}

void DeformationEngine::move_hole(size_t hole_index, Coord dir, int steps, const std::string &step_name) {
    if (hole_index >= code_.layout.holes.size()) {
        throw std::invalid_argument("no such hole");
    }
    if (std::abs(dir.r) + std::abs(dir.c) != 1) {
        throw std::invalid_argument("hole steps are unit translations");
    }
    for (int s = 0; s < steps; s++) {
        // A crossing jump sweeps several cells at once; count them all so a
        // leg's step budget is a net displacement.
        LatticeLayout next = code_.layout;
        Hole &h = next.holes[hole_index];
        auto translated = [&](int j) {
            std::vector<Coord> region;
            for (Coord q : h.region) {
                region.push_back({q.r + dir.r * j, q.c + dir.c * j});
            }
            return region;
        };
        // A hole may not sit against a defect line; a step entering the
        // line's margin commits to the full crossing.
        auto too_close = [&](const std::vector<Coord> &region) {
            for (const auto &l : next.defect_lines) {
                for (Coord q : region) {
                    for (Coord p : l.path) {
                        if (separation(p, q) <= 1) {
                            return true;
                        }
                    }
                }
            }
            return false;
        };
        int jump = 1;
        while (too_close(translated(jump))) {
            jump++;
            if (jump > std::max(next.rows, next.cols)) {
                throw SchedulingError("hole cannot clear the defect line");
            }
        }
        // Count the lines crossed by the swept corridor; each flips the type.
        std::set<const DefectLine *> crossed;
        for (int j = 1; j <= jump; j++) {
            for (Coord q : translated(j)) {
                for (const auto &l : next.defect_lines) {
                    if (std::find(l.path.begin(), l.path.end(), q) != l.path.end()) {
                        crossed.insert(&l);
                    }
                }
                for (const auto &t : code_.twists) {
                    if (!t.at_boundary && t.pos == q) {
                        throw SchedulingError("hole path crosses a twist endpoint");
                    }
                }
            }
        }
        // Grow through the corridor first: each swept cell is measured out in
        // the basis of the hole side it lies on, so the loop class is carried
        // across before the vacated tail is healed.
        BoundaryType sweep_type = h.boundary_type;
        std::set<const DefectLine *> crossed_so_far;
        for (int j = 1; j < jump; j++) {
            for (Coord q : translated(j)) {
                for (const auto &l : next.defect_lines) {
                    if (std::find(l.path.begin(), l.path.end(), q) != l.path.end()) {
                        if (crossed_so_far.insert(&l).second) {
                            sweep_type = flipped(sweep_type);
                        }
                    }
                }
            }
            for (Coord q : translated(j)) {
                if (!code_.layout.active(q)) {
                    continue;
                }
                char basis = sweep_type == BoundaryType::Rough ? 'Z' : 'X';
                PauliOperator pin = PauliOperator::single(state_.num_qubits(), code_.layout.qubit_index(q), basis);
                clean_logicals_off(pin);
                measure_observable(pin);
            }
        }
        h.region = translated(jump);
        if (crossed.size() % 2 == 1) {
            h.boundary_type = flipped(h.boundary_type);
        }
        deform_to(next, {}, step_name.empty() ? "move_hole" : step_name);
        s += jump - 1;
        if (s >= steps) {
            if (s + 1 != steps + jump - 1 && jump > 1) {
                // the jump consumed more cells than the leg had left
                if (s + 1 > steps) {
                    throw SchedulingError("hole route leg ends inside a crossing jump");
                }
            }
        }
    }
}

void DeformationEngine::audit_step(const std::string &description) {
    StepAudit audit;
    audit.description = description;
    for (const auto &t : code_.twists) {
        audit.twist_positions.push_back(t.pos);
    }
    int best = 0;
    for (size_t a = 0; a < audit.twist_positions.size(); a++) {
        for (size_t b = a + 1; b < audit.twist_positions.size(); b++) {
            int s = separation(audit.twist_positions[a], audit.twist_positions[b]);
            if (s > 0 && (best == 0 || s < best)) {
                best = s;
            }
        }
    }
    audit.min_twist_separation = best;
    size_t start = audits_.empty() ? 0 : audits_.back().max_observable_weight;
    (void)start;
    audit.max_observable_weight = max_measured_weight_;
    if (audit_distance_ && state_.num_logical_pairs() > 0) {
        int cap = audit_distance_cap_ > 0 ? audit_distance_cap_ : std::max(4, code_.distance_hint + 2);
        audit.distance = code_distance(state_, cap);
    }
    audits_.push_back(std::move(audit));
}

namespace {

std::vector<Coord> straight(Coord from, Coord to) {
    std::vector<Coord> path;
    int dr = (to.r > from.r) - (to.r < from.r);
    int dc = (to.c > from.c) - (to.c < from.c);
    Coord q = from;
    path.push_back(q);
    while (!(q == to)) {
        q = {q.r + dr, q.c + dc};
        path.push_back(q);
    }
    return path;
}

std::vector<Coord> concat(std::initializer_list<std::vector<Coord>> parts) {
    std::vector<Coord> out;
    for (const auto &p : parts) {
        for (Coord q : p) {
            if (out.empty() || !(out.back() == q)) {
                out.push_back(q);
            }
        }
    }
    return out;
}

Coord rot90(Coord q, int L) {
    return {q.c, L - 1 - q.r};
}

std::vector<Coord> map_path(const std::vector<Coord> &path, const std::function<Coord(Coord)> &f) {
    std::vector<Coord> out;
    out.reserve(path.size());
    for (Coord q : path) {
        out.push_back(f(q));
    }
    return out;
}

struct SquareRoutes {
    std::vector<Coord> b_slide1;   // first twist slides along the side
    std::vector<Coord> a_partial;  // second twist into the bulk, short of landing
    std::vector<Coord> landing;    // closes the arc onto the vacated corner
    std::vector<Coord> b_slide2;   // first twist finishes its slide
};

// Bottom-pair exchange on the L x L planar code: the SE twist slides along
// the bottom row to the middle, the SW twist travels up the left edge and
// across the middle row, then descends onto the vacated corner. Landing
// fuses the two defect lines into one (the junction qubits become corner
// turns of the merged line and are re-pinned accordingly, which is where the
// exchange picks up its braiding action); the parked twist finishes its
// slide and the heal removes the trail.
SquareRoutes square_bottom_routes(int L) {
    int mid = L / 2;
    SquareRoutes r;
    r.b_slide1 = straight({L - 1, L - 1}, {L - 1, std::max(1, mid + 1)});
    std::vector<Coord> up = straight({L - 1, 0}, {mid, 0});
    std::vector<Coord> across = straight({mid, 1}, {mid, L - 2});
    r.a_partial = concat({up, across});
    r.landing = straight({mid, L - 1}, {L - 2, L - 1});
    if (mid >= 1 && mid <= L - 2) {
        r.b_slide2 = straight({L - 1, mid}, {L - 1, 1});
    }
    return r;
}

// Replaces lines a and b by the single path a + landing + b (b optionally
// losing its first cells, which return to the lattice).
void merge_lines_step(
    DeformationEngine &e, size_t idx_a, size_t idx_b, const std::vector<Coord> &landing, size_t drop_from_b) {
    LatticeLayout lay = e.code().layout;
    DefectLine merged;
    merged.sign = lay.defect_lines[idx_a].sign;
    merged.path = lay.defect_lines[idx_a].path;
    for (Coord q : landing) {
        merged.path.push_back(q);
    }
    const auto &bp = lay.defect_lines[idx_b].path;
    for (size_t i = drop_from_b; i < bp.size(); i++) {
        merged.path.push_back(bp[i]);
    }
    std::vector<DefectLine> keep;
    for (size_t i = 0; i < lay.defect_lines.size(); i++) {
        if (i != idx_a && i != idx_b) {
            keep.push_back(lay.defect_lines[i]);
        }
    }
    keep.push_back(merged);
    lay.defect_lines = std::move(keep);
    e.deform_to(lay, {}, "land on the vacated corner");
}

}  // namespace

ExchangePlan schedule_route(const LatticeLayout &layout, ExchangeKind kind, Geometry geometry) {
    ExchangePlan plan;
    auto idx = std::make_shared<std::pair<size_t, size_t>>(0, 0);  // (line B, line A)

    if (geometry == Geometry::Square) {
        int L = layout.rows;
        if (layout.rows != layout.cols || !layout.mask.empty()) {
            throw std::invalid_argument("square exchange requires an unmasked L x L lattice");
        }
        SquareRoutes routes = square_bottom_routes(L);
        std::function<Coord(Coord)> xf = [](Coord q) {
            return q;
        };
        if (kind == ExchangeKind::LeftPair) {
            xf = [L](Coord q) {
                return rot90(q, L);
            };
        }
        auto b1 = map_path(routes.b_slide1, xf);
        auto ap = map_path(routes.a_partial, xf);
        auto land = map_path(routes.landing, xf);
        auto b2 = map_path(routes.b_slide2, xf);
        plan.legs.push_back([idx, b1](DeformationEngine &e) {
            idx->first = e.code().layout.defect_lines.size();
            e.create_line(b1, +1, "slide first twist");
        });
        plan.leg_names.push_back("slide first twist");
        plan.legs.push_back([idx, ap](DeformationEngine &e) {
            idx->second = e.code().layout.defect_lines.size();
            e.create_line(ap, +1, "carry second twist across");
        });
        plan.leg_names.push_back("carry second twist across");
        plan.legs.push_back([idx, land](DeformationEngine &e) {
            size_t merged_index = e.code().layout.defect_lines.size() - 2;
            merge_lines_step(e, idx->second, idx->first, land, 0);
            idx->first = merged_index;
        });
        plan.leg_names.push_back("land on the vacated corner");
        if (!b2.empty()) {
            plan.legs.push_back([idx, b2](DeformationEngine &e) {
                e.move_twist(idx->first, b2, "finish first twist slide");
            });
            plan.leg_names.push_back("finish first twist slide");
        }
        int mid = L / 2;
        plan.guarantee = std::max(1, mid - 1);
        plan.reported_c = std::max(0, mid - plan.guarantee);
    } else {
        int m = (layout.rows - 1) / 2;  // rows = 2d-1, tips at distance m from centre
        if (layout.mask.empty()) {
            throw std::invalid_argument("rotated exchange requires the diamond mask");
        }
        if (m < 3) {
            throw std::invalid_argument("rotated exchange needs distance >= 4");
        }
        // Exchange the S and E tips (bottom pair) or W and S tips (left pair).
        std::function<Coord(Coord)> xf = [](Coord q) {
            return q;
        };
        if (kind == ExchangeKind::LeftPair) {
            int L = layout.rows;
            xf = [L](Coord q) {
                return rot90(q, L);
            };
        }
        // B: the E tip slides along the inside of the SE boundary toward S
        // (staircase on the two outermost diagonals, consuming the tip cell).
        std::vector<Coord> hug;
        {
            hug.push_back({m, 2 * m});
            Coord q{m, 2 * m - 1};
            hug.push_back(q);
            while (q.r < 2 * m - 1) {
                q = {q.r + 1, q.c};
                hug.push_back(q);
                if (q.r < 2 * m - 1) {
                    q = {q.r, q.c - 1};
                    hug.push_back(q);
                }
            }
            while (q.c > m + 1) {
                q = {q.r, q.c - 1};
                hug.push_back(q);
            }
        }
        size_t half = hug.size() / 2;
        std::vector<Coord> b1(hug.begin(), hug.begin() + (ptrdiff_t)half);
        std::vector<Coord> b2(hug.begin() + (ptrdiff_t)half, hug.end());
        // A: S tip through the centre, then east; landing fuses it with the
        // first tip's trail just inside the vacated tip, whose cell returns
        // to the lattice.
        std::vector<Coord> up = straight({2 * m, m}, {m, m});
        std::vector<Coord> east = straight({m, m + 1}, {m, 2 * m - 3});
        std::vector<Coord> ap = concat({up, east});
        std::vector<Coord> land{{m, 2 * m - 2}};
        auto B1 = map_path(b1, xf), B2 = map_path(b2, xf), AP = map_path(ap, xf), LAND = map_path(land, xf);
        plan.legs.push_back([idx, B1](DeformationEngine &e) {
            idx->first = e.code().layout.defect_lines.size();
            e.create_line(B1, +1, "slide first tip");
        });
        plan.leg_names.push_back("slide first tip");
        plan.legs.push_back([idx, AP](DeformationEngine &e) {
            idx->second = e.code().layout.defect_lines.size();
            e.create_line(AP, +1, "carry second tip across");
        });
        plan.leg_names.push_back("carry second tip across");
        plan.legs.push_back([idx, LAND](DeformationEngine &e) {
            size_t merged_index = e.code().layout.defect_lines.size() - 2;
            merge_lines_step(e, idx->second, idx->first, LAND, 1);
            idx->first = merged_index;
        });
        plan.leg_names.push_back("land at the vacated tip");
        if (!B2.empty()) {
            plan.legs.push_back([idx, B2](DeformationEngine &e) {
                e.move_twist(idx->first, B2, "finish first tip slide");
            });
            plan.leg_names.push_back("finish first tip slide");
        }
        plan.guarantee = std::max(1, m - 2);
        plan.reported_c = std::max(0, (m + 1) - plan.guarantee);
    }
    return plan;
}

void exchange_corners(DeformationEngine &engine, ExchangeKind kind, Geometry geometry) {
    LatticeLayout original = engine.code().layout;
    size_t base_lines = original.defect_lines.size();
    ExchangePlan plan = schedule_route(original, kind, geometry);
    for (auto &leg : plan.legs) {
        leg(engine);
    }
    // Heal the trails one line at a time; a joint heal can transiently push a
    // measured face into the logical coset on small lattices.
    while (engine.code().layout.defect_lines.size() > base_lines) {
        LatticeLayout lay = engine.code().layout;
        lay.defect_lines.pop_back();
        engine.deform_to(lay, {}, "heal trail");
    }
    engine.deform_to(original, {}, "heal done");
}

}  // namespace twistlab
