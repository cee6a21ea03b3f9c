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

#include "twistlab/json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace twistlab {

namespace {

using nlohmann::json;

BoundaryType parse_type(const std::string &s) {
    if (s == "rough") {
        return BoundaryType::Rough;
    }
    if (s == "smooth") {
        return BoundaryType::Smooth;
    }
    throw SpecParseError("unknown boundary type: " + s);
}

const char *type_name(BoundaryType t) {
    return t == BoundaryType::Rough ? "rough" : "smooth";
}

Side parse_side(const std::string &s) {
    if (s == "top") {
        return Side::Top;
    }
    if (s == "bottom") {
        return Side::Bottom;
    }
    if (s == "left") {
        return Side::Left;
    }
    if (s == "right") {
        return Side::Right;
    }
    throw SpecParseError("unknown side: " + s);
}

Coord parse_coord(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw SpecParseError("coordinates must be [row, col] pairs");
    }
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

LatticeLayout layout_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("preset")) {
            std::string preset = j.at("preset").get<std::string>();
            int L = j.at("L").get<int>();
            if (preset == "planar") {
                return LatticeLayout::planar(L);
            }
            if (preset == "all_rough") {
                return LatticeLayout::all_rough(L);
            }
            if (preset == "all_smooth") {
                return LatticeLayout::all_smooth(L);
            }
            if (preset == "rotated") {
                return LatticeLayout::rotated(L);
            }
            throw SpecParseError("unknown preset: " + preset);
        }
        LatticeLayout lay;
        lay.rows = j.at("rows").get<int>();
        lay.cols = j.at("cols").get<int>();
        if (lay.rows < 1 || lay.cols < 1) {
            throw SpecParseError("rows/cols must be positive");
        }
        if (j.contains("boundary")) {
            for (const auto &side : j.at("boundary")) {
                Side s = parse_side(side.at("side").get<std::string>());
                for (const auto &seg : side.at("segments")) {
                    lay.boundary[(size_t)s].push_back(
                        {seg.at("from").get<int>(), seg.at("to").get<int>(),
                         parse_type(seg.at("type").get<std::string>())});
                }
            }
        }
        if (j.contains("holes")) {
            for (const auto &h : j.at("holes")) {
                Hole hole;
                for (const auto &q : h.at("region")) {
                    hole.region.push_back(parse_coord(q));
                }
                hole.boundary_type = parse_type(h.at("boundary_type").get<std::string>());
                lay.holes.push_back(std::move(hole));
            }
        }
        if (j.contains("defect_lines")) {
            for (const auto &l : j.at("defect_lines")) {
                DefectLine line;
                for (const auto &q : l.at("path")) {
                    line.path.push_back(parse_coord(q));
                }
                line.sign = l.contains("sign") ? l.at("sign").get<int>() : +1;
                if (line.sign != 1 && line.sign != -1) {
                    throw SpecParseError("defect line sign must be +1 or -1");
                }
                lay.defect_lines.push_back(std::move(line));
            }
        }
        if (j.contains("mask")) {
            std::string m = j.at("mask").get<std::string>();
            if (m == "rotated") {
                if (lay.rows != lay.cols || lay.rows % 2 == 0) {
                    throw SpecParseError("rotated mask needs an odd square grid");
                }
                lay.mask = LatticeLayout::rotated((lay.rows + 1) / 2).mask;
            } else if (m != "full") {
                throw SpecParseError("unknown mask: " + m);
            }
        }
        return lay;
    } catch (const json::exception &e) {
        throw SpecParseError(std::string("lattice spec schema violation: ") + e.what());
    }
}

std::string layout_to_json(const LatticeLayout &lay) {
    json j;
    j["rows"] = lay.rows;
    j["cols"] = lay.cols;
    const char *side_names[4] = {"top", "bottom", "left", "right"};
    json boundary = json::array();
    for (size_t s = 0; s < 4; s++) {
        if (lay.boundary[s].empty()) {
            continue;
        }
        json segs = json::array();
        for (const auto &seg : lay.boundary[s]) {
            segs.push_back({{"from", seg.from}, {"to", seg.to}, {"type", type_name(seg.type)}});
        }
        boundary.push_back({{"side", side_names[s]}, {"segments", segs}});
    }
    j["boundary"] = boundary;
    json holes = json::array();
    for (const auto &h : lay.holes) {
        json region = json::array();
        for (Coord q : h.region) {
            region.push_back({q.r, q.c});
        }
        holes.push_back({{"region", region}, {"boundary_type", type_name(h.boundary_type)}});
    }
    j["holes"] = holes;
    json lines = json::array();
    for (const auto &l : lay.defect_lines) {
        json path = json::array();
        for (Coord q : l.path) {
            path.push_back({q.r, q.c});
        }
        lines.push_back({{"path", path}, {"sign", l.sign}});
    }
    j["defect_lines"] = lines;
    j["mask"] = lay.mask.empty() ? "full" : "rotated";
    return j.dump(2);
}

std::string transcript_to_json_lines(const std::vector<MeasurementRecord> &records) {
    std::ostringstream out;
    for (const auto &r : records) {
        json j;
        j["observable"] = r.observable.str();
        j["outcome"] = r.outcome;
        j["was_random"] = r.was_random;
        j["frame_update"] = r.frame_update.str();
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<MeasurementRecord> transcript_from_json_lines(const std::string &text) {
    std::vector<MeasurementRecord> records;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception &e) {
            throw SpecParseError(std::string("invalid transcript line: ") + e.what());
        }
        MeasurementRecord r;
        r.observable = PauliOperator::from_string(j.at("observable").get<std::string>());
        r.outcome = j.at("outcome").get<int>();
        r.was_random = j.at("was_random").get<bool>();
        r.frame_update = PauliOperator::from_string(j.at("frame_update").get<std::string>());
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace twistlab
