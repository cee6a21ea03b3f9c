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

#ifndef TWISTLAB_LATTICE_HPP
#define TWISTLAB_LATTICE_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twistlab/tableau.hpp"

namespace twistlab {

struct Coord {
    int r = 0;
    int c = 0;
    auto operator<=>(const Coord &) const = default;
};

enum class BoundaryType { Rough, Smooth };
enum class Side { Top = 0, Bottom = 1, Left = 2, Right = 3 };

inline BoundaryType flipped(BoundaryType t) {
    return t == BoundaryType::Rough ? BoundaryType::Smooth : BoundaryType::Rough;
}

/// One uniform stretch of a lattice side. `from` and `to` are inclusive qubit
/// indices along the side (column indices for top/bottom, rows for
/// left/right). Transitions between segments of different type are corner
/// defects: no boundary stabilizer spans them.
struct BoundarySegment {
    int from = 0;
    int to = 0;
    BoundaryType type = BoundaryType::Rough;
};

struct Hole {
    std::vector<Coord> region;  // simply connected set of removed vertices
    BoundaryType boundary_type = BoundaryType::Rough;
    // Spanning "holes" stretch between outer boundaries: the ancilla strips
    // of lattice surgery. They may touch the boundary and carry no logical
    // loop of their own.
    bool spanning = false;
};

/// A path of removed qubits. Bulk endpoints host weight-five twist
/// stabilizers on the adjacent double plaquette; endpoints on the lattice
/// boundary terminate there. `sign` picks the +/-i convention folded into the
/// twist stabilizers.
struct DefectLine {
    std::vector<Coord> path;
    int sign = +1;
};

struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LatticeLayout {
    int rows = 0;
    int cols = 0;
    std::array<std::vector<BoundarySegment>, 4> boundary;  // indexed by Side
    std::vector<Hole> holes;
    std::vector<DefectLine> defect_lines;
    std::vector<Coord> mask;  // empty = full grid; else the active vertex set

    static LatticeLayout planar(int L);               // rough top/bottom, smooth left/right
    static LatticeLayout all_rough(int L);
    static LatticeLayout all_smooth(int L);
    static LatticeLayout rectangle(int rows, int cols, BoundaryType top, BoundaryType bottom,
                                   BoundaryType left, BoundaryType right);
    /// Diamond-masked lattice of distance d on a (2d-1)x(2d-1) grid,
    /// ~2d^2 qubits, corners at the four tips.
    static LatticeLayout rotated(int d);

    bool in_grid(Coord q) const {
        return q.r >= 0 && q.r < rows && q.c >= 0 && q.c < cols;
    }
    bool in_mask(Coord q) const;
    /// Active = in grid & mask, not removed by a hole or defect line.
    bool active(Coord q) const;
    std::set<Coord> removed_set() const;

    size_t num_qubits() const {
        return (size_t)rows * (size_t)cols;
    }
    size_t qubit_index(Coord q) const {
        return (size_t)q.r * (size_t)cols + (size_t)q.c;
    }
    Coord coord_of(size_t index) const {
        return Coord{(int)(index / (size_t)cols), (int)(index % (size_t)cols)};
    }
    size_t num_active() const;

    BoundaryType side_type_at(Side s, int pos) const;  // throws if no segment covers pos

    LatticeLayout with_hole(const Hole &h) const;
    LatticeLayout with_defect_line(const DefectLine &l) const;
};

/// Single-qubit basis each removed qubit is pinned in: rough hole interiors
/// are measured in Z, smooth in X, defect-line qubits mostly in Y with X/Z
/// substitutions where the line turns a corner.
enum class PinBasis { X, Y, Z };
char pin_char(PinBasis b);
PinBasis line_pin_basis(const LatticeLayout &lay, const DefectLine &line, size_t k);

struct TwistSite {
    Coord pos;             // bulk: the Y-carrying qubit of the weight-5 stabilizer
    int line_index = -1;   // -1 for boundary corners
    bool at_boundary = false;
};

struct CompiledCode {
    StabilizerTableau tableau;  // generators + pins + symplectic logical basis
    LatticeLayout layout;
    std::vector<TwistSite> twists;  // bulk twists then boundary corner twists
    std::map<Coord, PinBasis> pins;
    int distance_hint = 0;

    size_t num_stabilizer_generators() const;  // excludes single-qubit pins
};

/// Compiles the geometric description into concrete stabilizer generators,
/// pins for every removed qubit, and a symplectic logical basis (geometric
/// string/loop representatives where a template applies).
CompiledCode compile_layout(const LatticeLayout &layout);

CompiledCode build_planar(int L);
CompiledCode punch_hole(const CompiledCode &code, const std::vector<Coord> &region, BoundaryType type);
CompiledCode add_defect_line(const CompiledCode &code, const std::vector<Coord> &path, int sign);

struct AuditEntry {
    std::string constraint;
    bool pass = false;
    int measured = 0;
    int required = 0;
};
struct SeparationReport {
    std::vector<AuditEntry> entries;
    bool all_pass() const;
};
/// Checks hole-hole / hole-boundary / twist separations and hole
/// circumferences against the operating distance d.
SeparationReport separation_audit(const CompiledCode &code, int d);

/// Chebyshev distance; diagonal string steps make this the natural lattice
/// separation metric.
inline int separation(Coord a, Coord b) {
    int dr = a.r > b.r ? a.r - b.r : b.r - a.r;
    int dc = a.c > b.c ? a.c - b.c : b.c - a.c;
    return dr > dc ? dr : dc;
}

}  // namespace twistlab

#endif
