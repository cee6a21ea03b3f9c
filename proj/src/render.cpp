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

#include "twistlab/render.hpp"

#include <sstream>

namespace twistlab {

namespace {

bool face_white(int fr, int fc) {
    return ((fr + fc) & 1) == 0;
}

char qubit_glyph(const CompiledCode &code, Coord q, const std::optional<PauliOperator> &logical) {
    const auto &lay = code.layout;
    if (!lay.in_mask(q)) {
        return ' ';
    }
    if (logical) {
        size_t idx = lay.qubit_index(q);
        bool xb = logical->x.get(idx), zb = logical->z.get(idx);
        if (xb || zb) {
            return xb ? (zb ? 'Y' : 'X') : 'Z';
        }
    }
    auto pin = code.pins.find(q);
    if (pin != code.pins.end()) {
        for (const auto &t : code.twists) {
            if (!t.at_boundary && t.pos == q) {
                return '*';
            }
        }
        return 'o';  // disentangled
    }
    for (const auto &t : code.twists) {
        if (!t.at_boundary && t.pos == q) {
            return '*';  // twist double plaquette centre
        }
    }
    return '.';
}

}  // namespace

std::string render_ascii(const CompiledCode &code, std::optional<PauliOperator> logical) {
    const auto &lay = code.layout;
    // Grid: qubits at even (2r, 2c) cells, faces at odd-odd cells.
    int h = 2 * lay.rows + 1;
    int w = 2 * lay.cols + 1;
    std::vector<std::string> canvas((size_t)h, std::string((size_t)w, ' '));
    for (int fr = -1; fr <= lay.rows - 1; fr++) {
        for (int fc = -1; fc <= lay.cols - 1; fc++) {
            int count = 0;
            for (Coord q : {Coord{fr, fc}, Coord{fr, fc + 1}, Coord{fr + 1, fc}, Coord{fr + 1, fc + 1}}) {
                if (lay.in_grid(q) && lay.in_mask(q)) {
                    count++;
                }
            }
            if (count == 0) {
                continue;
            }
            canvas[(size_t)(2 * fr + 2)][(size_t)(2 * fc + 2)] = face_white(fr, fc) ? 'a' : 'b';
        }
    }
    for (int r = 0; r < lay.rows; r++) {
        for (int c = 0; c < lay.cols; c++) {
            canvas[(size_t)(2 * r + 1)][(size_t)(2 * c + 1)] = qubit_glyph(code, {r, c}, logical);
        }
    }
    std::ostringstream out;
    for (const auto &row : canvas) {
        out << row << "\n";
    }
    return out.str();
}

std::string render_svg(const CompiledCode &code, std::optional<PauliOperator> logical) {
    const auto &lay = code.layout;
    const int cell = 24;
    int w = (lay.cols + 1) * cell;
    int h = (lay.rows + 1) * cell;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << " " << h << "\">\n";
    out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    auto px = [&](double c) {
        return cell / 2.0 + c * cell;
    };
    for (int fr = -1; fr <= lay.rows - 1; fr++) {
        for (int fc = -1; fc <= lay.cols - 1; fc++) {
            int count = 0;
            for (Coord q : {Coord{fr, fc}, Coord{fr, fc + 1}, Coord{fr + 1, fc}, Coord{fr + 1, fc + 1}}) {
                if (lay.in_grid(q) && lay.in_mask(q)) {
                    count++;
                }
            }
            if (count < 1) {
                continue;
            }
            const char *fill = face_white(fr, fc) ? "#f3f3f3" : "#777777";
            out << "<rect x=\"" << px(fc) << "\" y=\"" << px(fr) << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << fill << "\" stroke=\"#cccccc\"/>\n";
        }
    }
    for (const auto &line : lay.defect_lines) {
        for (size_t i = 0; i + 1 < line.path.size(); i++) {
            out << "<line x1=\"" << px(line.path[i].c) << "\" y1=\"" << px(line.path[i].r) << "\" x2=\""
                << px(line.path[i + 1].c) << "\" y2=\"" << px(line.path[i + 1].r)
                << "\" stroke=\"#ff66aa\" stroke-width=\"6\"/>\n";
        }
        if (line.path.size() == 1) {
            out << "<circle cx=\"" << px(line.path[0].c) << "\" cy=\"" << px(line.path[0].r)
                << "\" r=\"5\" fill=\"#ff66aa\"/>\n";
        }
    }
    for (int r = 0; r < lay.rows; r++) {
        for (int c = 0; c < lay.cols; c++) {
            Coord q{r, c};
            if (!lay.in_mask(q)) {
                continue;
            }
            bool removed = code.pins.count(q) > 0;
            out << "<circle cx=\"" << px(c) << "\" cy=\"" << px(r) << "\" r=\"3.5\" fill=\""
                << (removed ? "#ffffff" : "#000000") << "\" stroke=\"#000000\"/>\n";
        }
    }
    for (const auto &t : code.twists) {
        if (t.at_boundary) {
            continue;
        }
        out << "<text x=\"" << px(t.pos.c) - 5 << "\" y=\"" << px(t.pos.r) + 5
            << "\" font-size=\"14\" fill=\"#cc0000\">x</text>\n";
    }
    if (logical) {
        for (int r = 0; r < lay.rows; r++) {
            for (int c = 0; c < lay.cols; c++) {
                size_t idx = lay.qubit_index({r, c});
                bool xb = logical->x.get(idx), zb = logical->z.get(idx);
                if (!xb && !zb) {
                    continue;
                }
                char letter = xb ? (zb ? 'Y' : 'X') : 'Z';
                out << "<text x=\"" << px(c) + 4 << "\" y=\"" << px(r) - 4
                    << "\" font-size=\"12\" fill=\"#0044cc\">" << letter << "</text>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace twistlab
