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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistlab/distance.hpp"
#include "twistlab/json_io.hpp"
#include "twistlab/protocols.hpp"
#include "twistlab/render.hpp"

// Exit codes: 0 ok, 2 input error, 3 verification mismatch, 4 scheduling error.

namespace {

using nlohmann::json;
using namespace twistlab;

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecParseError("cannot open file: " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

int cmd_build(const std::string &spec_path, const std::string &format, const std::string &out_path) {
    CompiledCode code = compile_layout(layout_from_json(slurp(spec_path)));
    json j;
    j["n"] = code.tableau.num_qubits();
    j["active_qubits"] = code.layout.num_active();
    j["k"] = code.tableau.num_logical_pairs();
    j["generators"] = code.tableau.num_generators();
    j["stabilizer_generators"] = code.num_stabilizer_generators();
    j["pins"] = code.pins.size();
    j["distance_hint"] = code.distance_hint;
    json logicals = json::array();
    for (const auto &pair : code.tableau.logicals()) {
        logicals.push_back({{"label", pair.label}, {"x", pair.x_rep.str()}, {"z", pair.z_rep.str()}});
    }
    j["logicals"] = logicals;
    if (format == "json") {
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::ostringstream s;
        s << "n=" << j["n"] << " k=" << j["k"] << " generators=" << j["generators"] << "\n";
        for (const auto &pair : code.tableau.logicals()) {
            s << pair.label << ": X=" << pair.x_rep.str() << " Z=" << pair.z_rep.str() << "\n";
        }
        emit(s.str(), out_path);
    }
    return 0;
}

int cmd_distance(const std::string &spec_path, int max_weight, const std::string &format, const std::string &out_path) {
    CompiledCode code = compile_layout(layout_from_json(slurp(spec_path)));
    DistanceReport rep = code_distance(code.tableau, max_weight);
    json j;
    j["found"] = rep.found;
    j["method"] = rep.method;
    if (rep.found) {
        j["d"] = rep.d;
        j["witness"] = rep.witness.str();
    } else {
        j["lower_bound"] = rep.d;
    }
    if (format == "json") {
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::ostringstream s;
        if (rep.found) {
            s << "d=" << rep.d << " (" << rep.method << ") witness=" << rep.witness.str() << "\n";
        } else {
            s << "d>=" << rep.d << " (" << rep.method << ", weight cap reached)\n";
        }
        emit(s.str(), out_path);
    }
    return 0;
}

int cmd_render(
    const std::string &spec_path, const std::string &render_format, int show_logical, const std::string &out_path) {
    CompiledCode code = compile_layout(layout_from_json(slurp(spec_path)));
    std::optional<PauliOperator> overlay;
    if (show_logical >= 0) {
        if ((size_t)show_logical >= code.tableau.num_logical_pairs()) {
            throw SpecParseError("no such logical qubit index");
        }
        overlay = code.tableau.logicals()[(size_t)show_logical].z_rep;
    }
    emit(render_format == "svg" ? render_svg(code, overlay) : render_ascii(code, overlay), out_path);
    return 0;
}

struct ScriptOutcome {
    json report;
    bool verification_failed = false;
};

ScriptOutcome run_script(const std::string &spec_path, const std::string &script_path, uint64_t seed,
                         const std::string &policy_name);

int cmd_run(const std::string &spec_path, const std::string &script_path, uint64_t seed, const std::string &policy,
            const std::string &format, const std::string &out_path) {
    ScriptOutcome outcome = run_script(spec_path, script_path, seed, policy);
    if (format == "json") {
        emit(outcome.report.dump(2) + "\n", out_path);
    } else {
        emit(outcome.report.dump(2) + "\n", out_path);
    }
    return outcome.verification_failed ? 3 : 0;
}

ScriptOutcome run_script(const std::string &spec_path, const std::string &script_path, uint64_t seed,
                         const std::string &policy_name) {
    CompiledCode code = compile_layout(layout_from_json(slurp(spec_path)));
    OutcomePolicy policy = OutcomePolicy::forced(+1);
    if (policy_name == "random") {
        policy = OutcomePolicy::random();
    } else if (policy_name == "forced-") {
        policy = OutcomePolicy::forced(-1);
    } else if (policy_name != "forced+" && policy_name != "forced") {
        throw SpecParseError("unknown outcome policy: " + policy_name);
    }
    json script;
    try {
        script = json::parse(slurp(script_path));
    } catch (const json::exception &e) {
        throw SpecParseError(std::string("invalid script JSON: ") + e.what());
    }

    DeformationEngine engine(code, seed, policy);
    ScriptOutcome outcome;
    bool has_target = false;
    LogicalCliffordMap target;
    try {
        for (const auto &step : script.at("steps")) {
            std::string op = step.at("op").get<std::string>();
            if (op == "move_twist") {
                std::vector<Coord> path;
                for (const auto &q : step.at("path")) {
                    path.push_back({q[0].get<int>(), q[1].get<int>()});
                }
                engine.move_twist(step.at("line").get<size_t>(), path);
            } else if (op == "create_line") {
                std::vector<Coord> path;
                for (const auto &q : step.at("path")) {
                    path.push_back({q[0].get<int>(), q[1].get<int>()});
                }
                engine.create_line(path, step.contains("sign") ? step.at("sign").get<int>() : +1);
            } else if (op == "move_hole") {
                engine.move_hole(
                    step.at("hole").get<size_t>(),
                    {step.at("dir")[0].get<int>(), step.at("dir")[1].get<int>()}, step.at("steps").get<int>());
            } else if (op == "exchange_corners") {
                std::string pair = step.at("pair").get<std::string>();
                Geometry geom = engine.code().layout.mask.empty() ? Geometry::Square : Geometry::Rotated;
                exchange_corners(
                    engine, pair == "left" ? ExchangeKind::LeftPair : ExchangeKind::BottomPair, geom);
            } else if (op == "measure") {
                PauliOperator obs = PauliOperator::from_string(step.at("observable").get<std::string>());
                engine.measure_observable(obs);
            } else {
                throw SpecParseError("unknown script op: " + op);
            }
        }
        if (script.contains("target")) {
            has_target = true;
            const auto &t = script.at("target");
            target.k = engine.state().num_logical_pairs();
            for (const auto &img : t.at("images")) {
                target.images.push_back(PauliOperator::from_string(img.get<std::string>()));
            }
        }
    } catch (const json::exception &e) {
        throw SpecParseError(std::string("script schema violation: ") + e.what());
    }

    json j;
    json steps_audit = json::array();
    for (const auto &a : engine.audits()) {
        json ja;
        ja["step"] = a.description;
        ja["min_twist_separation"] = a.min_twist_separation;
        ja["max_observable_weight"] = a.max_observable_weight;
        if (a.distance) {
            ja["distance"] = a.distance->found ? a.distance->d : -a.distance->d;
        }
        steps_audit.push_back(ja);
    }
    j["audit"] = steps_audit;
    j["transcript"] = json::parse("[" + [&]() {
                          std::string s;
                          auto lines = transcript_to_json_lines(engine.transcript());
                          for (char c : lines) {
                              s += c == '\n' ? ',' : c;
                          }
                          if (!s.empty() && s.back() == ',') {
                              s.pop_back();
                          }
                          return s;
                      }() + "]");
    j["final_fingerprint_hash"] = std::hash<std::string>{}(engine.state().fingerprint());
    LogicalCliffordMap induced =
        extract_logical_map(engine.state(), engine.state().logicals(), engine.code().tableau.logicals());
    j["induced_map"] = induced.str();
    j["max_measured_weight"] = engine.max_measured_weight();
    ScriptOutcome outcome2;
    outcome2.report = j;
    if (has_target) {
        outcome2.report["target_map"] = target.str();
        outcome2.verification_failed = !(induced == target);
    }
    return outcome2;
}

int cmd_protocol(const std::string &id, int L, uint64_t seed, const std::string &format, const std::string &out_path) {
    GateRunResult r;
    LogicalCliffordMap target;
    if (id == "B1") {
        r = gate_B1(L, seed);
    } else if (id == "B2") {
        r = gate_B2(L, seed);
    } else if (id == "B1_rotated") {
        r = gate_B1_rotated(L, seed);
    } else if (id == "B2_rotated") {
        r = gate_B2_rotated(L, seed);
    } else if (id == "six_twist_exchange") {
        r = six_twist_exchange(L, seed);
    } else if (id == "hole_braid_cnot") {
        r = hole_braid_cnot(L, seed);
    } else if (id == "hole_braid_cz") {
        r = hole_braid_cz(L, seed);
    } else {
        throw SpecParseError("unknown protocol id: " + id);
    }
    json j;
    j["protocol"] = id;
    j["induced_map"] = r.map.str();
    j["max_measured_weight"] = r.max_measured_weight;
    j["measurements"] = r.transcript.size();
    json audits = json::array();
    for (const auto &a : r.audits) {
        audits.push_back({{"step", a.description}, {"min_twist_separation", a.min_twist_separation}});
    }
    j["audit"] = audits;
    (void)format;
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"twistlab: surface-code deformation simulator and gate verifier"};
    app.require_subcommand(1);

    std::string spec, script, out, format = "json", render_format = "ascii", policy = "forced+", protocol_id;
    uint64_t seed = 1;
    int max_weight = 16, show_logical = -1, protocol_L = 5;

    auto *build = app.add_subcommand("build", "compile a lattice spec into stabilizers");
    build->add_option("--spec", spec)->required();
    build->add_option("--format", format);
    build->add_option("--out", out);

    auto *dist = app.add_subcommand("distance", "brute-force code distance");
    dist->add_option("--spec", spec)->required();
    dist->add_option("--max-weight", max_weight);
    dist->add_option("--format", format);
    dist->add_option("--out", out);

    auto *render = app.add_subcommand("render", "draw the lattice");
    render->add_option("--spec", spec)->required();
    render->add_option("--render-format", render_format);
    render->add_option("--show-logical", show_logical);
    render->add_option("--out", out);

    auto *run = app.add_subcommand("run", "replay a protocol script");
    run->add_option("--spec", spec)->required();
    run->add_option("--script", script)->required();
    run->add_option("--seed", seed);
    run->add_option("--policy", policy);
    run->add_option("--format", format);
    run->add_option("--out", out);

    auto *proto = app.add_subcommand("protocol", "run a named protocol");
    proto->add_option("id", protocol_id)->required();
    proto->add_option("--L", protocol_L);
    proto->add_option("--seed", seed);
    proto->add_option("--format", format);
    proto->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            return cmd_build(spec, format, out);
        }
        if (dist->parsed()) {
            return cmd_distance(spec, max_weight, format, out);
        }
        if (render->parsed()) {
            return cmd_render(spec, render_format, show_logical, out);
        }
        if (run->parsed()) {
            return cmd_run(spec, script, seed, policy, format, out);
        }
        if (proto->parsed()) {
            return cmd_protocol(protocol_id, protocol_L, seed, format, out);
        }
    } catch (const SpecParseError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PlacementError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SchedulingError &e) {
        std::cerr << "scheduling error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
