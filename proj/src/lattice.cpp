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

#include "twistlab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace twistlab {

namespace {

// A face is the unit square whose upper-left vertex is (fr, fc); it touches
// qubits (fr,fc), (fr,fc+1), (fr+1,fc), (fr+1,fc+1). Row indices grow
// downward. White faces, even (fr+fc), carry the X-type operator A_f and pad
// smooth boundaries; black faces carry B_f and pad rough boundaries.
struct FaceId {
    int fr;
    int fc;
    auto operator<=>(const FaceId &) const = default;
};

bool face_is_white(FaceId f) {
    return ((f.fr + f.fc) & 1) == 0;
}

BoundaryType face_pad_type(FaceId f) {
    return face_is_white(f) ? BoundaryType::Smooth : BoundaryType::Rough;
}

std::array<Coord, 4> face_qubits(FaceId f) {
    return {Coord{f.fr, f.fc}, Coord{f.fr, f.fc + 1}, Coord{f.fr + 1, f.fc}, Coord{f.fr + 1, f.fc + 1}};
}

std::optional<BoundaryType> segment_type_at(const std::vector<BoundarySegment> &segs, int pos) {
    for (const auto &s : segs) {
        if (pos >= s.from && pos <= s.to) {
            return s.type;
        }
    }
    return std::nullopt;
}

std::optional<BoundaryType> segment_type_spanning(const std::vector<BoundarySegment> &segs, int a, int b) {
    for (const auto &s : segs) {
        if (a >= s.from && b <= s.to) {
            return s.type;
        }
    }
    return std::nullopt;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), size_t{0});
    }
    size_t find(size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(size_t a, size_t b) {
        parent[find(a)] = find(b);
    }
};

}  // namespace

LatticeLayout LatticeLayout::rectangle(
    int rows, int cols, BoundaryType top, BoundaryType bottom, BoundaryType left, BoundaryType right) {
    LatticeLayout lay;
    lay.rows = rows;
    lay.cols = cols;
    lay.boundary[(size_t)Side::Top] = {{0, cols - 1, top}};
    lay.boundary[(size_t)Side::Bottom] = {{0, cols - 1, bottom}};
    lay.boundary[(size_t)Side::Left] = {{0, rows - 1, left}};
    lay.boundary[(size_t)Side::Right] = {{0, rows - 1, right}};
    return lay;
}

LatticeLayout LatticeLayout::planar(int L) {
    return rectangle(L, L, BoundaryType::Rough, BoundaryType::Rough, BoundaryType::Smooth, BoundaryType::Smooth);
}
LatticeLayout LatticeLayout::all_rough(int L) {
    return rectangle(L, L, BoundaryType::Rough, BoundaryType::Rough, BoundaryType::Rough, BoundaryType::Rough);
}
LatticeLayout LatticeLayout::all_smooth(int L) {
    return rectangle(L, L, BoundaryType::Smooth, BoundaryType::Smooth, BoundaryType::Smooth, BoundaryType::Smooth);
}

LatticeLayout LatticeLayout::rotated(int d) {
    LatticeLayout lay;
    lay.rows = lay.cols = 2 * d - 1;
    int m = d - 1;
    for (int r = 0; r < lay.rows; r++) {
        for (int c = 0; c < lay.cols; c++) {
            if (std::abs(r - m) + std::abs(c - m) <= m) {
                lay.mask.push_back({r, c});
            }
        }
    }
    return lay;
}

bool LatticeLayout::in_mask(Coord q) const {
    if (mask.empty()) {
        return true;
    }
    return std::binary_search(mask.begin(), mask.end(), q);
}

std::set<Coord> LatticeLayout::removed_set() const {
    std::set<Coord> removed;
    for (const auto &h : holes) {
        removed.insert(h.region.begin(), h.region.end());
    }
    for (const auto &l : defect_lines) {
        removed.insert(l.path.begin(), l.path.end());
    }
    return removed;
}

bool LatticeLayout::active(Coord q) const {
    if (!in_grid(q) || !in_mask(q)) {
        return false;
    }
    for (const auto &h : holes) {
        if (std::find(h.region.begin(), h.region.end(), q) != h.region.end()) {
            return false;
        }
    }
    for (const auto &l : defect_lines) {
        if (std::find(l.path.begin(), l.path.end(), q) != l.path.end()) {
            return false;
        }
    }
    return true;
}

size_t LatticeLayout::num_active() const {
    size_t count = 0;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            if (active({r, c})) {
                count++;
            }
        }
    }
    return count;
}

BoundaryType LatticeLayout::side_type_at(Side s, int pos) const {
    auto t = segment_type_at(boundary[(size_t)s], pos);
    if (!t) {
        throw std::invalid_argument("no boundary segment covers position " + std::to_string(pos));
    }
    return *t;
}

LatticeLayout LatticeLayout::with_hole(const Hole &h) const {
    LatticeLayout next = *this;
    next.holes.push_back(h);
    return next;
}
LatticeLayout LatticeLayout::with_defect_line(const DefectLine &l) const {
    LatticeLayout next = *this;
    next.defect_lines.push_back(l);
    return next;
}

char pin_char(PinBasis b) {
    switch (b) {
        case PinBasis::X:
            return 'X';
        case PinBasis::Y:
            return 'Y';
        default:
            return 'Z';
    }
}

PinBasis line_pin_basis(const LatticeLayout &lay, const DefectLine &line, size_t k) {
    const auto &p = line.path;
    if (k >= p.size()) {
        throw std::out_of_range("line qubit index out of range");
    }
    if (k == 0 || k + 1 == p.size()) {
        return PinBasis::Y;
    }
    Coord prev = p[k - 1], q = p[k], next = p[k + 1];
    bool straight = (prev.r == next.r) || (prev.c == next.c);
    if (straight) {
        return PinBasis::Y;
    }
    // Turn: the substituted basis matches the colour of the face that touches
    // the turn qubit at its far corner (the one away from both neighbours).
    int dro = (prev.r - q.r) + (next.r - q.r);  // direction toward the inner elbow
    int dco = (prev.c - q.c) + (next.c - q.c);
    FaceId outer{q.r - (dro > 0 ? 1 : 0), q.c - (dco > 0 ? 1 : 0)};
    (void)lay;
    return face_is_white(outer) ? PinBasis::X : PinBasis::Z;
}

namespace {

struct FaceInfo {
    FaceId id;
    std::vector<Coord> domain_qubits;  // in grid & mask
    bool boundary = false;
};

/// Faces kept by the grid/mask/segment rules, with full (pre-hole, pre-line)
/// in-domain support.
std::vector<FaceInfo> base_faces(const LatticeLayout &lay) {
    std::vector<FaceInfo> kept;
    for (int fr = -1; fr <= lay.rows - 1; fr++) {
        for (int fc = -1; fc <= lay.cols - 1; fc++) {
            FaceId f{fr, fc};
            FaceInfo info;
            info.id = f;
            int in_grid_count = 0;
            bool mask_cut = false;
            for (Coord q : face_qubits(f)) {
                if (lay.in_grid(q)) {
                    in_grid_count++;
                    if (lay.in_mask(q)) {
                        info.domain_qubits.push_back(q);
                    } else {
                        mask_cut = true;
                    }
                }
            }
            if (info.domain_qubits.empty()) {
                continue;
            }
            bool grid_edge = in_grid_count < 4;
            if (!grid_edge) {
                if (!mask_cut) {
                    kept.push_back(std::move(info));
                } else if (info.domain_qubits.size() == 3) {
                    // Diamond-mask boundary triangle; its own colour sets the type.
                    info.boundary = true;
                    kept.push_back(std::move(info));
                }
                continue;
            }
            if (mask_cut) {
                continue;
            }
            info.boundary = true;
            // Which sides the face extends beyond.
            bool top = fr == -1, bottom = fr == lay.rows - 1;
            bool left = fc == -1, right = fc == lay.cols - 1;
            std::vector<std::optional<BoundaryType>> wants;
            if (top && !left && !right) {
                wants.push_back(segment_type_spanning(lay.boundary[(size_t)Side::Top], fc, fc + 1));
            }
            if (bottom && !left && !right) {
                wants.push_back(segment_type_spanning(lay.boundary[(size_t)Side::Bottom], fc, fc + 1));
            }
            if (left && !top && !bottom) {
                wants.push_back(segment_type_spanning(lay.boundary[(size_t)Side::Left], fr, fr + 1));
            }
            if (right && !top && !bottom) {
                wants.push_back(segment_type_spanning(lay.boundary[(size_t)Side::Right], fr, fr + 1));
            }
            if ((top || bottom) && (left || right)) {
                // Corner quarter face: kept only when both adjacent sides ask
                // for this colour.
                int row_pos = top ? 0 : lay.rows - 1;
                int col_pos = left ? 0 : lay.cols - 1;
                wants.push_back(segment_type_at(lay.boundary[(size_t)(top ? Side::Top : Side::Bottom)], col_pos));
                wants.push_back(segment_type_at(lay.boundary[(size_t)(left ? Side::Left : Side::Right)], row_pos));
            }
            bool keep = !wants.empty();
            for (const auto &w : wants) {
                keep = keep && w.has_value() && *w == face_pad_type(f);
            }
            if (keep) {
                kept.push_back(std::move(info));
            }
        }
    }
    return kept;
}

bool face_is_white_export(const FaceInfo &f) {
    return face_is_white(f.id);
}

PauliOperator face_operator(const LatticeLayout &lay, const FaceInfo &f, const std::set<Coord> &removed) {
    PauliOperator p(lay.num_qubits());
    bool white = face_is_white(f.id);
    for (Coord q : f.domain_qubits) {
        if (removed.count(q)) {
            continue;
        }
        size_t idx = lay.qubit_index(q);
        if (white) {
            p.x.set(idx, true);
        } else {
            p.z.set(idx, true);
        }
    }
    return p;
}

bool face_touches_any(const FaceInfo &f, const std::set<Coord> &qs) {
    for (Coord q : f.domain_qubits) {
        if (qs.count(q)) {
            return true;
        }
    }
    return false;
}

void validate_line(const LatticeLayout &lay, const DefectLine &line) {
    const auto &p = line.path;
    if (p.empty()) {
        throw PlacementError("defect line path is empty");
    }
    std::set<Coord> seen;
    for (size_t i = 0; i < p.size(); i++) {
        if (!lay.in_grid(p[i]) || !lay.in_mask(p[i])) {
            throw PlacementError("defect line leaves the lattice");
        }
        if (!seen.insert(p[i]).second) {
            throw PlacementError("defect line path self-intersects");
        }
        if (i > 0) {
            int dr = std::abs(p[i].r - p[i - 1].r);
            int dc = std::abs(p[i].c - p[i - 1].c);
            if (dr + dc != 1) {
                throw PlacementError("defect line steps must be unit orthogonal moves");
            }
        }
    }
}

std::array<FaceId, 2> faces_of_edge(Coord a, Coord b) {
    if (a.r == b.r) {  // horizontal edge
        int c = std::min(a.c, b.c);
        return {FaceId{a.r - 1, c}, FaceId{a.r, c}};
    }
    int r = std::min(a.r, b.r);  // vertical edge
    return {FaceId{r, a.c - 1}, FaceId{r, a.c}};
}

std::vector<std::pair<PauliOperator, PauliOperator>> default_logical_basis(
    const std::vector<PauliOperator> &generators, size_t n);

}  // namespace

size_t CompiledCode::num_stabilizer_generators() const {
    return tableau.num_generators() - pins.size();
}

CompiledCode compile_layout(const LatticeLayout &lay) {
    if (lay.rows < 1 || lay.cols < 1) {
        throw std::invalid_argument("lattice extents must be positive");
    }
    CompiledCode code;
    code.layout = lay;
    size_t n = lay.num_qubits();
    code.tableau = StabilizerTableau(n);

    std::set<Coord> hole_removed;
    for (const auto &h : lay.holes) {
        for (Coord q : h.region) {
            if (!lay.in_grid(q) || !lay.in_mask(q)) {
                throw PlacementError("hole region leaves the lattice");
            }
            // Interior only (spanning strips excepted): a hole may not touch
            // the outer boundary.
            if (!h.spanning && (q.r == 0 || q.r == lay.rows - 1 || q.c == 0 || q.c == lay.cols - 1)) {
                throw PlacementError("hole region touches the outer boundary");
            }
            if (!hole_removed.insert(q).second) {
                throw PlacementError("hole regions overlap");
            }
        }
    }
    std::set<Coord> line_removed;
    for (const auto &l : lay.defect_lines) {
        validate_line(lay, l);
        for (Coord q : l.path) {
            if (hole_removed.count(q) || !line_removed.insert(q).second) {
                throw PlacementError("defect lines overlap another defect");
            }
        }
    }
    std::set<Coord> removed = hole_removed;
    removed.insert(line_removed.begin(), line_removed.end());

    std::vector<FaceInfo> faces = base_faces(lay);
    std::map<FaceId, size_t> face_pos;
    for (size_t i = 0; i < faces.size(); i++) {
        face_pos[faces[i].id] = i;
    }

    // Holes: faces of the matching colour survive restricted; opposite-colour
    // faces touching the region are discarded (their product is the loop
    // logical). Record the discarded set per hole for the loop template.
    std::vector<char> dropped(faces.size(), 0);
    std::vector<std::vector<size_t>> hole_dropped_faces(lay.holes.size());
    for (size_t hi = 0; hi < lay.holes.size(); hi++) {
        const auto &h = lay.holes[hi];
        std::set<Coord> region(h.region.begin(), h.region.end());
        for (size_t i = 0; i < faces.size(); i++) {
            if (dropped[i] || !face_touches_any(faces[i], region)) {
                continue;
            }
            if (face_pad_type(faces[i].id) != h.boundary_type) {
                dropped[i] = 1;
                hole_dropped_faces[hi].push_back(i);
            }
        }
    }

    // Defect lines: restrict the touched faces and merge them into components
    // across each path edge and across each line end's double plaquette.
    std::vector<char> line_touched(faces.size(), 0);
    std::vector<int> face_line(faces.size(), -1);
    for (size_t i = 0; i < faces.size(); i++) {
        if (!dropped[i] && face_touches_any(faces[i], line_removed)) {
            line_touched[i] = 1;
            for (size_t li = 0; li < lay.defect_lines.size(); li++) {
                std::set<Coord> pq(lay.defect_lines[li].path.begin(), lay.defect_lines[li].path.end());
                if (face_touches_any(faces[i], pq)) {
                    face_line[i] = (int)li;
                    break;
                }
            }
        }
    }
    // Boundary corner twists (rough/smooth meeting points). A defect line end
    // whose phantom qubit lands on one of these merges with the corner rather
    // than hosting a bulk twist.
    std::set<Coord> corner_sites;
    auto note_corner = [&](Coord pos) {
        corner_sites.insert(pos);
        code.twists.push_back({pos, -1, true});
    };
    if (lay.mask.empty()) {
        auto tt = [&](Side s, int pos) {
            return segment_type_at(lay.boundary[(size_t)s], pos);
        };
        auto differ = [](std::optional<BoundaryType> a, std::optional<BoundaryType> b) {
            return a.has_value() && b.has_value() && *a != *b;
        };
        if (differ(tt(Side::Top, 0), tt(Side::Left, 0))) note_corner({0, 0});
        if (differ(tt(Side::Top, lay.cols - 1), tt(Side::Right, 0))) note_corner({0, lay.cols - 1});
        if (differ(tt(Side::Bottom, 0), tt(Side::Left, lay.rows - 1))) note_corner({lay.rows - 1, 0});
        if (differ(tt(Side::Bottom, lay.cols - 1), tt(Side::Right, lay.rows - 1))) note_corner({lay.rows - 1, lay.cols - 1});
        for (size_t s = 0; s < 4; s++) {
            const auto &segs = lay.boundary[s];
            for (size_t i = 0; i + 1 < segs.size(); i++) {
                if (segs[i].type != segs[i + 1].type) {
                    int pos = segs[i].to;
                    Coord q = s == (size_t)Side::Top      ? Coord{0, pos}
                              : s == (size_t)Side::Bottom ? Coord{lay.rows - 1, pos}
                              : s == (size_t)Side::Left   ? Coord{pos, 0}
                                                          : Coord{pos, lay.cols - 1};
                    note_corner(q);
                }
            }
        }
    } else {
        int m = (lay.rows - 1) / 2;
        note_corner({0, m});
        note_corner({m, 0});
        note_corner({m, lay.cols - 1});
        note_corner({lay.rows - 1, m});
    }

    UnionFind uf(faces.size());
    auto unite_faces = [&](FaceId a, FaceId b) {
        auto ia = face_pos.find(a);
        auto ib = face_pos.find(b);
        if (ia == face_pos.end() || ib == face_pos.end()) {
            return;
        }
        if (dropped[ia->second] || dropped[ib->second]) {
            return;
        }
        uf.unite(ia->second, ib->second);
    };
    std::vector<bool> line_has_open_end(lay.defect_lines.size(), false);
    for (size_t li = 0; li < lay.defect_lines.size(); li++) {
        const auto &l = lay.defect_lines[li];
        const auto &p = l.path;
        for (size_t i = 0; i + 1 < p.size(); i++) {
            auto fe = faces_of_edge(p[i], p[i + 1]);
            unite_faces(fe[0], fe[1]);
        }
        // End double plaquettes: the two faces shared with the phantom next
        // step beyond each end merge into the twist stabilizer. Ends whose
        // phantom is not an active bulk qubit terminate at a boundary (or on
        // another defect) and carry no bulk twist.
        auto merge_end = [&](Coord end, Coord inward) {
            Coord d{end.r - inward.r, end.c - inward.c};
            Coord phantom{end.r + d.r, end.c + d.c};
            auto fe = faces_of_edge(end, phantom);
            unite_faces(fe[0], fe[1]);
            bool corner_adjacent = false;
            for (Coord nb : {Coord{end.r - 1, end.c}, Coord{end.r + 1, end.c}, Coord{end.r, end.c - 1},
                             Coord{end.r, end.c + 1}}) {
                if (corner_sites.count(nb)) {
                    corner_adjacent = true;
                }
            }
            TwistSite t;
            t.line_index = (int)li;
            if (lay.in_grid(phantom) && lay.in_mask(phantom) && !removed.count(phantom) &&
                !corner_sites.count(phantom) && !corner_adjacent) {
                t.pos = phantom;
                t.at_boundary = false;
            } else {
                t.pos = corner_sites.count(phantom) ? phantom : end;
                t.at_boundary = true;
                line_has_open_end[li] = true;
            }
            code.twists.push_back(t);
        };
        if (p.size() >= 2) {
            merge_end(p.front(), p[1]);
            merge_end(p.back(), p[p.size() - 2]);
        } else {
            // Single-qubit line: oriented horizontally by convention.
            merge_end(p[0], {p[0].r, p[0].c + 1});
            merge_end(p[0], {p[0].r, p[0].c - 1});
        }
    }

    // Pins: every removed or masked-out qubit is fixed in a product basis.
    for (const auto &h : lay.holes) {
        PinBasis b = h.boundary_type == BoundaryType::Rough ? PinBasis::Z : PinBasis::X;
        for (Coord q : h.region) {
            code.pins[q] = b;
        }
    }
    for (const auto &l : lay.defect_lines) {
        for (size_t k = 0; k < l.path.size(); k++) {
            code.pins[l.path[k]] = line_pin_basis(lay, l, k);
        }
    }
    for (int r = 0; r < lay.rows; r++) {
        for (int c = 0; c < lay.cols; c++) {
            if (!lay.in_mask({r, c})) {
                code.pins[{r, c}] = PinBasis::Z;
            }
        }
    }

    // A face product is a stabilizer of the deformed code exactly when its
    // letter on every removed qubit is the identity or the pin there; the
    // emitted generator is its restriction to the active qubits.
    auto pin_compatible = [&](const PauliOperator &full) {
        for (const auto &[q, b] : code.pins) {
            size_t idx = lay.qubit_index(q);
            bool xb = full.x.get(idx), zb = full.z.get(idx);
            if (!xb && !zb) {
                continue;
            }
            char have = xb ? (zb ? 'Y' : 'X') : 'Z';
            if (have != pin_char(b)) {
                return false;
            }
        }
        return true;
    };
    BitVec active_mask(n);
    for (int r = 0; r < lay.rows; r++) {
        for (int c = 0; c < lay.cols; c++) {
            if (lay.active({r, c})) {
                active_mask.set(lay.qubit_index({r, c}), true);
            }
        }
    }

    // Emit generators: untouched faces as-is, line components as restricted
    // products with the +/-i ambiguity resolved by the line's sign. Boundary
    // parity can leave a structural component incompatible with the pins;
    // such a piece is not a stabilizer of the deformed code and is dropped,
    // and the completion below restores the rank. Redundant rows (e.g. the
    // product of all black faces of a uniform rough lattice) are filtered.
    std::vector<PauliOperator> emitted;
    std::map<size_t, std::vector<size_t>> components;
    for (size_t i = 0; i < faces.size(); i++) {
        if (dropped[i]) {
            continue;
        }
        if (line_touched[i]) {
            components[uf.find(i)].push_back(i);
        } else {
            PauliOperator op = face_operator(lay, faces[i], removed);
            if (op.x.any() || op.z.any()) {
                emitted.push_back(op);
            }
        }
    }
    for (auto &[root, members] : components) {
        std::sort(members.begin(), members.end());
        PauliOperator full(n);
        int line_sign = +1;
        for (size_t i : members) {
            full.mul_inplace(face_operator(lay, faces[i], hole_removed));
            if (face_line[i] >= 0) {
                line_sign = lay.defect_lines[(size_t)face_line[i]].sign;
            }
        }
        if (!pin_compatible(full)) {
            continue;
        }
        PauliOperator op = full.restricted(active_mask);
        if (!op.x.any() && !op.z.any()) {
            continue;
        }
        if (op.num_y() & 1) {
            op.set_sign(line_sign);  // the +/-i pieces pick the line's convention
        }
        emitted.push_back(op);
    }

    // Complete the group around open-ended lines: every face product
    // compatible with the pins is a stabilizer of the deformed code there
    // (for instance, the loop winding around the line's remaining twist and
    // closing through the boundary). Lines whose ends are both bulk twists
    // keep only the structural span: their pair loop is the unfixed logical.
    // Lines close enough to share faces are completed jointly.
    std::vector<std::set<Coord>> line_groups;
    {
        size_t nl = lay.defect_lines.size();
        UnionFind line_uf(nl);
        for (size_t i = 0; i < faces.size(); i++) {
            int first_line = -1;
            for (size_t li = 0; li < nl; li++) {
                std::set<Coord> pq(lay.defect_lines[li].path.begin(), lay.defect_lines[li].path.end());
                if (face_touches_any(faces[i], pq)) {
                    if (first_line < 0) {
                        first_line = (int)li;
                    } else {
                        line_uf.unite((size_t)first_line, li);
                    }
                }
            }
        }
        std::map<size_t, std::pair<std::set<Coord>, bool>> grouped;
        for (size_t li = 0; li < nl; li++) {
            auto &g = grouped[line_uf.find(li)];
            g.first.insert(lay.defect_lines[li].path.begin(), lay.defect_lines[li].path.end());
            if (!line_has_open_end[li]) {
                g.second = true;  // contains a closed line: no completion
            }
        }
        for (auto &[root, entry] : grouped) {
            if (!entry.second) {
                line_groups.push_back(entry.first);
            }
        }
    }
    for (size_t li = 0; li < line_groups.size(); li++) {
        const std::set<Coord> &pq = line_groups[li];
        std::vector<size_t> local;
        for (size_t i = 0; i < faces.size(); i++) {
            if (!dropped[i] && face_touches_any(faces[i], pq)) {
                local.push_back(i);
            }
        }
        std::vector<PauliOperator> local_ops;
        std::set<Coord> constrained;
        for (size_t i : local) {
            local_ops.push_back(face_operator(lay, faces[i], hole_removed));
            for (Coord q : faces[i].domain_qubits) {
                if (removed.count(q)) {
                    constrained.insert(q);
                }
            }
        }
        // Rows: one constraint per removed qubit; columns: local faces.
        size_t vars = local.size();
        std::vector<BitVec> eqs;
        for (Coord q : constrained) {
            size_t idx = lay.qubit_index(q);
            PauliOperator pin = PauliOperator::single(n, idx, pin_char(code.pins.at(q)));
            BitVec row(vars);
            for (size_t v = 0; v < vars; v++) {
                row.set(v, !local_ops[v].commutes_with(pin));
            }
            if (row.any()) {
                eqs.push_back(std::move(row));
            }
        }
        std::vector<size_t> pivs;
        std::vector<BitVec> red;
        for (auto &row : eqs) {
            for (size_t i = 0; i < red.size(); i++) {
                if (row.get(pivs[i])) {
                    row.xor_with(red[i]);
                }
            }
            if (row.any()) {
                pivs.push_back(row.lowest_set_bit());
                red.push_back(row);
            }
        }
        // Full reduction so free-variable back-substitution is direct.
        for (size_t i = 0; i < red.size(); i++) {
            for (size_t j = 0; j < red.size(); j++) {
                if (i != j && red[j].get(pivs[i])) {
                    red[j].xor_with(red[i]);
                }
            }
        }
        std::vector<char> is_piv(vars, 0);
        for (size_t p : pivs) {
            is_piv[p] = 1;
        }
        for (size_t v = 0; v < vars; v++) {
            if (is_piv[v]) {
                continue;
            }
            BitVec combo(vars);
            combo.set(v, true);
            for (size_t i = 0; i < red.size(); i++) {
                if (red[i].get(v)) {
                    combo.toggle(pivs[i]);
                }
            }
            PauliOperator prod(n);
            combo.for_each_set_bit([&](size_t w) {
                prod.mul_inplace(local_ops[w]);
            });
            PauliOperator cand = prod.restricted(active_mask);
            if (!cand.x.any() && !cand.z.any()) {
                continue;
            }
            if (cand.num_y() & 1) {
                cand.set_sign(+1);  // convention for synthesized completion pieces
            }
            emitted.push_back(cand);
        }
    }

    {
        std::vector<std::pair<size_t, std::pair<BitVec, BitVec>>> echelon;  // (pivot, bits)
        auto pivot_of = [&](const std::pair<BitVec, BitVec> &row) {
            size_t px = row.first.lowest_set_bit();
            if (px < n) {
                return px;
            }
            size_t pz = row.second.lowest_set_bit();
            return pz < n ? n + pz : 2 * n;
        };
        for (const auto &op : emitted) {
            std::pair<BitVec, BitVec> row{op.x, op.z};
            for (const auto &[piv, e] : echelon) {
                bool bit = piv < n ? row.first.get(piv) : row.second.get(piv - n);
                if (bit) {
                    row.first.xor_with(e.first);
                    row.second.xor_with(e.second);
                }
            }
            size_t piv = pivot_of(row);
            if (piv >= 2 * n) {
                continue;  // dependent on earlier faces
            }
            echelon.push_back({piv, row});
            std::sort(echelon.begin(), echelon.end(), [](const auto &x, const auto &y) {
                return x.first < y.first;
            });
            code.tableau.add_generator(op);
        }
    }
    for (const auto &[q, b] : code.pins) {
        code.tableau.add_generator(PauliOperator::single(n, lay.qubit_index(q), pin_char(b)));
    }


    // Logical basis: symplectic completion, upgraded to geometric string/loop
    // representatives when the standard templates verify.
    auto pairs = default_logical_basis(code.tableau.generators(), n);
    std::vector<LogicalPair> logicals;
    for (size_t i = 0; i < pairs.size(); i++) {
        LogicalPair lp;
        lp.x_rep = pairs[i].first;
        lp.z_rep = pairs[i].second;
        lp.label = "q" + std::to_string(i);
        logicals.push_back(lp);
    }

    auto is_valid_logical = [&](const PauliOperator &p) {
        for (const auto &g : code.tableau.generators()) {
            if (!p.commutes_with(g)) {
                return false;
            }
        }
        return code.tableau.contains(p) == Membership::NotMember;
    };

    // Planar-code template: a vertical Z string and a horizontal X string.
    if (logicals.size() == 1 && lay.holes.empty() && lay.defect_lines.empty() && lay.mask.empty()) {
        int c_mid = lay.cols / 2;
        int r_mid = lay.rows / 2;
        PauliOperator zbar(n), xbar(n);
        for (int r = 0; r < lay.rows; r++) {
            zbar.z.set(lay.qubit_index({r, c_mid}), true);
        }
        for (int c = 0; c < lay.cols; c++) {
            xbar.x.set(lay.qubit_index({r_mid, c}), true);
        }
        if (is_valid_logical(zbar) && is_valid_logical(xbar) && !zbar.commutes_with(xbar)) {
            logicals[0].x_rep = xbar;
            logicals[0].z_rep = zbar;
        }
    }
    // Hole templates: loop = product of the discarded opposite-colour faces;
    // string = straight run from the hole to the nearest matching boundary.
    bool any_spanning = false;
    for (const auto &h : lay.holes) {
        any_spanning = any_spanning || h.spanning;
    }
    if (lay.mask.empty() && lay.defect_lines.empty() && !lay.holes.empty() && !any_spanning &&
        logicals.size() == lay.holes.size()) {
        std::vector<LogicalPair> cand;
        bool ok = true;
        for (size_t hi = 0; hi < lay.holes.size() && ok; hi++) {
            const auto &h = lay.holes[hi];
            PauliOperator loop(n);
            for (size_t i : hole_dropped_faces[hi]) {
                loop.mul_inplace(face_operator(lay, faces[i], removed));
            }
            loop.phase = (uint8_t)(loop.num_y() & 3);
            PauliOperator string(n);
            Coord q0 = h.region.front();
            bool white_string = h.boundary_type == BoundaryType::Smooth;
            for (int r = 0; r < q0.r; r++) {
                Coord q{r, q0.c};
                if (!lay.active(q)) {
                    ok = false;
                    break;
                }
                size_t idx = lay.qubit_index(q);
                if (white_string) {
                    string.x.set(idx, true);
                } else {
                    string.z.set(idx, true);
                }
            }
            ok = ok && is_valid_logical(loop) && is_valid_logical(string) && !loop.commutes_with(string);
            if (ok) {
                LogicalPair lp;
                lp.x_rep = h.boundary_type == BoundaryType::Rough ? loop : string;
                lp.z_rep = h.boundary_type == BoundaryType::Rough ? string : loop;
                lp.label = "hole" + std::to_string(hi);
                cand.push_back(lp);
            }
        }
        if (ok) {
            bool algebra_ok = true;
            for (size_t a = 0; a < cand.size() && algebra_ok; a++) {
                for (size_t b = 0; b < cand.size() && algebra_ok; b++) {
                    if (a == b) {
                        continue;
                    }
                    algebra_ok = cand[a].x_rep.commutes_with(cand[b].x_rep) &&
                                 cand[a].x_rep.commutes_with(cand[b].z_rep) &&
                                 cand[a].z_rep.commutes_with(cand[b].z_rep);
                }
            }
            if (algebra_ok) {
                logicals = cand;
            }
        }
    }
    for (const auto &lp : logicals) {
        code.tableau.add_logical(lp);
    }

    if (!lay.mask.empty()) {
        code.distance_hint = (lay.rows + 1) / 2;
    } else if (lay.holes.empty() && lay.defect_lines.empty()) {
        code.distance_hint = std::min(lay.rows, lay.cols);
    }
    return code;
}

namespace {

// Nullspace of the symplectic form against the generator rows, reduced modulo
// the generators and paired into a symplectic basis.
std::vector<std::pair<PauliOperator, PauliOperator>> default_logical_basis(
    const std::vector<PauliOperator> &generators, size_t n) {
    size_t cols = 2 * n;
    // Row-reduce the "commutation constraint" matrix: row i is generator i
    // with x/z halves swapped, so a vector v commutes with everything iff
    // A v = 0.
    std::vector<BitVec> a;
    for (const auto &g : generators) {
        BitVec row(cols);
        for (size_t q = 0; q < n; q++) {
            if (g.z.get(q)) {
                row.set(q, true);
            }
            if (g.x.get(q)) {
                row.set(n + q, true);
            }
        }
        a.push_back(std::move(row));
    }
    std::vector<size_t> pivots;
    size_t done = 0;
    for (size_t col = 0; col < cols && done < a.size(); col++) {
        size_t hit = a.size();
        for (size_t r = done; r < a.size(); r++) {
            if (a[r].get(col)) {
                hit = r;
                break;
            }
        }
        if (hit == a.size()) {
            continue;
        }
        std::swap(a[done], a[hit]);
        for (size_t r = 0; r < a.size(); r++) {
            if (r != done && a[r].get(col)) {
                a[r].xor_with(a[done]);
            }
        }
        pivots.push_back(col);
        done++;
    }
    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivots) {
        is_pivot[c] = 1;
    }
    std::vector<BitVec> nullspace;
    for (size_t free_col = 0; free_col < cols; free_col++) {
        if (is_pivot[free_col]) {
            continue;
        }
        BitVec v(cols);
        v.set(free_col, true);
        for (size_t r = 0; r < done; r++) {
            if (a[r].get(free_col)) {
                v.set(pivots[r], true);
            }
        }
        nullspace.push_back(std::move(v));
    }

    // Reduce modulo the generator row space to get logical coset reps.
    std::vector<BitVec> gen_rows;
    for (const auto &g : generators) {
        BitVec row(cols);
        for (size_t q = 0; q < n; q++) {
            if (g.x.get(q)) {
                row.set(q, true);
            }
            if (g.z.get(q)) {
                row.set(n + q, true);
            }
        }
        gen_rows.push_back(std::move(row));
    }
    std::vector<std::pair<size_t, BitVec>> reduced;  // (pivot, row) echelon
    auto reduce_into = [&](BitVec v, bool insert) -> std::optional<BitVec> {
        for (const auto &[piv, row] : reduced) {
            if (v.get(piv)) {
                v.xor_with(row);
            }
        }
        size_t piv = v.lowest_set_bit();
        if (piv >= cols) {
            return std::nullopt;
        }
        if (insert) {
            reduced.push_back({piv, v});
            std::sort(reduced.begin(), reduced.end(), [](const auto &x, const auto &y) {
                return x.first < y.first;
            });
        }
        return v;
    };
    for (auto &row : gen_rows) {
        reduce_into(row, true);
    }
    std::vector<BitVec> logical_vecs;
    for (auto &v : nullspace) {
        auto r = reduce_into(v, true);
        if (r) {
            logical_vecs.push_back(*r);
        }
    }

    auto sym_product = [&](const BitVec &u, const BitVec &v) {
        bool acc = false;
        for (size_t q = 0; q < n; q++) {
            acc ^= (u.get(q) && v.get(n + q)) || false;
            acc ^= (u.get(n + q) && v.get(q)) || false;
        }
        return acc;
    };

    std::vector<std::pair<PauliOperator, PauliOperator>> pairs;
    std::vector<BitVec> pool = logical_vecs;
    while (!pool.empty()) {
        BitVec u = pool.front();
        pool.erase(pool.begin());
        size_t mate = pool.size();
        for (size_t i = 0; i < pool.size(); i++) {
            if (sym_product(u, pool[i])) {
                mate = i;
                break;
            }
        }
        if (mate == pool.size()) {
            continue;  // u is in the stabilizer span already (shouldn't happen)
        }
        BitVec w = pool[mate];
        pool.erase(pool.begin() + (ptrdiff_t)mate);
        for (auto &v : pool) {
            if (sym_product(v, w)) {
                v.xor_with(u);
            }
            if (sym_product(v, u)) {
                v.xor_with(w);
            }
        }
        auto to_pauli = [&](const BitVec &v) {
            PauliOperator p(n);
            for (size_t q = 0; q < n; q++) {
                if (v.get(q)) {
                    p.x.set(q, true);
                }
                if (v.get(n + q)) {
                    p.z.set(q, true);
                }
            }
            p.phase = (uint8_t)(p.num_y() & 3);
            return p;
        };
        pairs.push_back({to_pauli(u), to_pauli(w)});
    }
    return pairs;
}

}  // namespace

CompiledCode build_planar(int L) {
    return compile_layout(LatticeLayout::planar(L));
}

CompiledCode punch_hole(const CompiledCode &code, const std::vector<Coord> &region, BoundaryType type) {
    Hole h{region, type};
    CompiledCode next = compile_layout(code.layout.with_hole(h));
    size_t k_before = code.tableau.num_logical_pairs();
    if (next.tableau.num_logical_pairs() != k_before + 1) {
        throw PlacementError("hole region does not add a logical qubit (check region parity and size)");
    }
    return next;
}

CompiledCode add_defect_line(const CompiledCode &code, const std::vector<Coord> &path, int sign) {
    return compile_layout(code.layout.with_defect_line(DefectLine{path, sign}));
}

bool SeparationReport::all_pass() const {
    for (const auto &e : entries) {
        if (!e.pass) {
            return false;
        }
    }
    return true;
}

SeparationReport separation_audit(const CompiledCode &code, int d) {
    SeparationReport rep;
    const auto &lay = code.layout;
    auto add = [&](std::string name, int measured, int required) {
        rep.entries.push_back({std::move(name), measured >= required, measured, required});
    };

    auto hole_center = [&](const Hole &h) {
        long sr = 0, sc = 0;
        for (Coord q : h.region) {
            sr += q.r;
            sc += q.c;
        }
        return Coord{(int)(sr / (long)h.region.size()), (int)(sc / (long)h.region.size())};
    };
    auto region_sep = [&](const Hole &a, const Hole &b) {
        int best = 1 << 28;
        for (Coord qa : a.region) {
            for (Coord qb : b.region) {
                best = std::min(best, separation(qa, qb));
            }
        }
        return best;
    };

    for (size_t i = 0; i < lay.holes.size(); i++) {
        const auto &h = lay.holes[i];
        if (h.spanning) {
            continue;  // surgery strips have no loop and sit on the boundary
        }
        // Circumference: the number of active qubits adjacent to the region.
        std::set<Coord> ring;
        for (Coord q : h.region) {
            for (int dr = -1; dr <= 1; dr++) {
                for (int dc = -1; dc <= 1; dc++) {
                    Coord p{q.r + dr, q.c + dc};
                    if (lay.active(p)) {
                        ring.insert(p);
                    }
                }
            }
        }
        add("hole" + std::to_string(i) + "_circumference", (int)ring.size(), d);
        int to_boundary = 1 << 28;
        for (Coord q : h.region) {
            to_boundary = std::min({to_boundary, q.r, q.c, lay.rows - 1 - q.r, lay.cols - 1 - q.c});
        }
        add("hole" + std::to_string(i) + "_to_boundary", to_boundary, d);
        for (size_t j = i + 1; j < lay.holes.size(); j++) {
            if (lay.holes[j].boundary_type == h.boundary_type) {
                add("hole" + std::to_string(i) + "_hole" + std::to_string(j), region_sep(h, lay.holes[j]), d);
            }
        }
        for (size_t t = 0; t < code.twists.size(); t++) {
            add(
                "hole" + std::to_string(i) + "_twist" + std::to_string(t),
                separation(hole_center(h), code.twists[t].pos), (d + 1) / 2);
        }
    }
    for (size_t a = 0; a < code.twists.size(); a++) {
        for (size_t b = a + 1; b < code.twists.size(); b++) {
            add(
                "twist" + std::to_string(a) + "_twist" + std::to_string(b),
                separation(code.twists[a].pos, code.twists[b].pos), d - 1);
        }
    }
    return rep;
}

}  // namespace twistlab
