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

#include "doctest.h"
#include "twistlab/protocols.hpp"
#include "twistlab/statevector.hpp"

using namespace twistlab;

TEST_CASE("creating and retracting a twist line is the identity") {
    auto code = compile_layout(LatticeLayout::all_rough(9));
    DeformationEngine engine(code, 42, OutcomePolicy::forced(+1));
    std::string before = engine.state().fingerprint();
    DefectLine l;
    l.path = {{4, 3}, {4, 4}, {4, 5}};
    engine.create_line(l.path, +1, "create");
    CHECK(engine.state().num_logical_pairs() == 0);
    engine.deform_to(code.layout, {}, "retract");
    CHECK(engine.state().fingerprint() == before);
}

TEST_CASE("drag a twist out and back: identity on the planar code") {
    auto code = build_planar(5);
    DeformationEngine engine(code, 7, OutcomePolicy::forced(+1));
    std::string before = engine.state().fingerprint();
    // Pull the bottom-left corner twist three cells into the bulk.
    engine.create_line({{4, 0}, {3, 0}, {3, 1}, {3, 2}}, +1, "drag corner");
    CHECK(engine.state().num_logical_pairs() == 1);
    // Endpoint stabilizer of the dragged twist has weight five and belongs
    // to the deformed group.
    bool found_w5 = false;
    for (const auto &g : engine.code().tableau.generators()) {
        if (g.weight() == 5 && g.num_y() == 1 && g.touches(code.layout.qubit_index({3, 3}))) {
            found_w5 = true;
            CHECK(engine.state().contains(g) != Membership::NotMember);
        }
    }
    CHECK(found_w5);
    engine.deform_to(code.layout, {}, "return");
    CHECK(engine.state().fingerprint() == before);
    // The induced map of out-and-back is the identity.
    auto map = extract_logical_map(engine.state(), engine.state().logicals(), code.tableau.logicals());
    CHECK(map == LogicalCliffordMap::identity(1));
}

TEST_CASE("B1 exchange on the planar code preserves the code and maps Z to +/-Y") {
    for (int L : {3, 5}) {
        CAPTURE(L);
        auto r = gate_B1(L);
        // X is fixed up to sign; Z maps to +/-Y.
        CHECK(r.map.image_x(0).x.get(0));
        CHECK_FALSE(r.map.image_x(0).z.get(0));
        CHECK(r.map.image_z(0).x.get(0));
        CHECK(r.map.image_z(0).z.get(0));
        CHECK(r.map.preserves_symplectic_form());
    }
}

TEST_CASE("B2 exchange maps X to +/-Y and fixes Z up to sign") {
    auto r = gate_B2(5);
    CHECK(r.map.image_z(0).z.get(0));
    CHECK_FALSE(r.map.image_z(0).x.get(0));
    CHECK(r.map.image_x(0).x.get(0));
    CHECK(r.map.image_x(0).z.get(0));
}

TEST_CASE("exchange and its reverse compose to the identity map") {
    auto code = build_planar(5);
    DeformationEngine engine(code, 3, OutcomePolicy::forced(+1));
    exchange_corners(engine, ExchangeKind::BottomPair, Geometry::Square);
    exchange_corners(engine, ExchangeKind::BottomPair, Geometry::Square);
    auto map = extract_logical_map(engine.state(), engine.state().logicals(), code.tableau.logicals());
    // B1 twice: the symplectic part returns to the identity (Pauli map).
    CHECK(map.is_pauli());
}

TEST_CASE("dense-state replay of the full B1 transcript at L=3") {
    auto code = build_planar(3);
    DeformationEngine engine(code, 5, OutcomePolicy::forced(+1));
    // Dense state: code space with the logical fixed to |0> (the tableau
    // keeps tracking the logical pair).
    auto zbar = code.tableau.logicals()[0].z_rep;
    std::mt19937_64 rng(77);
    StabilizerTableau fixed = engine.state();
    fixed.measure(zbar, OutcomePolicy::forced(+1));
    auto sv = StateVector::stabilized_by(fixed, rng);
    exchange_corners(engine, ExchangeKind::BottomPair, Geometry::Square);
    for (const auto &rec : engine.transcript()) {
        auto dense_rec = sv.measure(rec.observable, OutcomePolicy::forced(rec.outcome), rng);
        CHECK(dense_rec.outcome == rec.outcome);
    }
    for (const auto &g : engine.state().generators()) {
        CHECK(sv.fixes_state(g));
    }
    // The final dense state carries the mapped logical: Z-bar evolved into
    // the tracked representative with its exact sign.
    CHECK(sv.fixes_state(engine.state().logicals()[0].z_rep));
}

TEST_CASE("hole translation preserves the code and the logical class") {
    auto lay = LatticeLayout::all_rough(9).with_hole(Hole{{{4, 3}}, BoundaryType::Rough});
    auto code = compile_layout(lay);
    DeformationEngine engine(code, 9, OutcomePolicy::forced(+1));
    CHECK(engine.state().num_logical_pairs() == 1);
    engine.move_hole(0, {0, 1}, 2, "east two");
    CHECK(engine.code().layout.holes[0].region[0] == Coord{4, 5});
    CHECK(engine.state().num_logical_pairs() == 1);
    engine.move_hole(0, {0, -1}, 2, "west two");
    // Closed path: identity channel on the hole qubit.
    auto map = extract_logical_map(engine.state(), engine.state().logicals(), code.tableau.logicals());
    CHECK(map.is_pauli());
}

TEST_CASE("hole crossing a defect line flips its boundary type") {
    auto lay = LatticeLayout::all_rough(11)
                   .with_defect_line({{{5, 2}, {5, 3}, {5, 4}, {5, 5}, {5, 6}, {5, 7}, {5, 8}}, +1})
                   .with_hole(Hole{{{7, 5}}, BoundaryType::Rough});
    auto code = compile_layout(lay);
    DeformationEngine engine(code, 11, OutcomePolicy::forced(+1));
    engine.move_hole(0, {-1, 0}, 1, "cross the line");
    CHECK(engine.code().layout.holes[0].boundary_type == BoundaryType::Smooth);
    CHECK(engine.code().layout.holes[0].region[0].r < 5);
    engine.move_hole(0, {1, 0}, 1, "cross back");
    CHECK(engine.code().layout.holes[0].boundary_type == BoundaryType::Rough);
}

TEST_CASE("hole stepping onto a twist endpoint is a scheduling error") {
    auto lay = LatticeLayout::all_rough(11)
                   .with_defect_line({{{5, 4}, {5, 5}}, +1})
                   .with_hole(Hole{{{8, 3}}, BoundaryType::Rough});
    auto code = compile_layout(lay);
    DeformationEngine engine(code, 1, OutcomePolicy::forced(+1));
    CHECK_THROWS_AS(engine.move_hole(0, {-1, 0}, 3, "into the twist"), SchedulingError);
}

TEST_CASE("scheduler reports separations within the claimed slack") {
    for (int L : {5, 7}) {
        auto plan = schedule_route(LatticeLayout::planar(L), ExchangeKind::BottomPair, Geometry::Square);
        CHECK(plan.reported_c <= 2);
        CHECK(plan.guarantee >= L / 2 - plan.reported_c);
    }
}
