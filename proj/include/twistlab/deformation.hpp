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

#ifndef TWISTLAB_DEFORMATION_HPP
#define TWISTLAB_DEFORMATION_HPP

#include <functional>

#include "twistlab/distance.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab {

struct SchedulingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepAudit {
    std::string description;
    std::vector<Coord> twist_positions;
    int min_twist_separation = 0;   // minimum over distinct pairs; 0 when < 2 twists
    size_t max_observable_weight = 0;
    std::optional<DistanceReport> distance;
};

/// Executes code deformations against one tableau: every geometric move is a
/// transition to the next compiled layout, realized by measuring the new pins
/// and the changed target stabilizers. Logical representatives are cleaned
/// off the measured supports first where a clean representative exists;
/// remaining sign byproducts are tracked exactly through frame updates.
class DeformationEngine {
  public:
    DeformationEngine(CompiledCode code, uint64_t seed, OutcomePolicy default_policy);

    const CompiledCode &code() const {
        return code_;
    }
    const StabilizerTableau &state() const {
        return state_;
    }
    StabilizerTableau &mutable_state() {
        return state_;
    }
    const std::vector<MeasurementRecord> &transcript() const {
        return transcript_;
    }
    const std::vector<StepAudit> &audits() const {
        return audits_;
    }
    size_t max_measured_weight() const {
        return max_measured_weight_;
    }

    void set_check_each_step(bool on) {
        check_each_step_ = on;
    }
    /// When >= 0, every audited step also brute-forces the code distance with
    /// this weight cap (0 = derive the cap from the layout).
    void set_distance_audit(bool on, int max_weight = 0) {
        audit_distance_ = on;
        audit_distance_cap_ = max_weight;
    }

    /// Measures one observable with the engine policy; deterministic values
    /// are recorded as-is.
    MeasurementRecord measure_observable(const PauliOperator &obs, std::optional<OutcomePolicy> policy = {});

    /// Transition to the next layout. `expected_births` are logical pairs of
    /// the next layout that are newly created (their x_rep must come out
    /// stabilized); k may also drop when pins complete a logical string,
    /// which is permitted only when the next layout's k says so.
    void deform_to(const LatticeLayout &next, const std::vector<LogicalPair> &expected_births = {},
                   const std::string &step_name = "");

    /// Extends defect line `line_index` by a path of qubits from its current
    /// end (path.front() must be adjacent to the line's head or tail).
    void move_twist(size_t line_index, const std::vector<Coord> &extension, const std::string &step_name = "");

    /// Creates a fresh defect line (e.g. a twist pair pulled out of a corner
    /// or the vacuum).
    void create_line(const std::vector<Coord> &path, int sign, const std::string &step_name = "");

    /// Translates hole `hole_index` one unit step at a time; a step that
    /// would land on a defect line jumps over it and flips the hole's
    /// boundary type. Stepping onto a twist site is a scheduling error.
    void move_hole(size_t hole_index, Coord dir, int steps, const std::string &step_name = "");

    /// Runs the per-step audit bookkeeping explicitly (used between moves).
    void audit_step(const std::string &description);

    std::mt19937_64 &rng() {
        return rng_;
    }
    OutcomePolicy default_policy() const {
        return default_policy_;
    }
    void set_default_policy(OutcomePolicy p) {
        default_policy_ = p;
    }

  private:
    CompiledCode code_;
    StabilizerTableau state_;
    std::vector<MeasurementRecord> transcript_;
    std::vector<StepAudit> audits_;
    OutcomePolicy default_policy_;
    std::mt19937_64 rng_;
    bool check_each_step_ = true;
    BitVec dirty_;  // support touched by ad-hoc measurements since the last deform
    bool audit_distance_ = false;
    int audit_distance_cap_ = 0;
    size_t max_measured_weight_ = 0;

    void clean_logicals_off(const PauliOperator &obs);
};

struct ExchangePlan {
    std::vector<std::function<void(DeformationEngine &)>> legs;
    std::vector<std::string> leg_names;
    int reported_c = 0;  // separation guarantee slack constant
    int guarantee = 0;   // claimed minimum twist separation
};

enum class ExchangeKind { BottomPair, LeftPair };
enum class Geometry { Square, Rotated };

/// Deterministic route for exchanging two corners of the planar code (square
/// L x L, standard boundaries) or two tips of the rotated code. The returned
/// plan's legs drive the engine; the guarantee/reported_c fields describe the
/// scheduler's separation bound.
ExchangePlan schedule_route(const LatticeLayout &layout, ExchangeKind kind, Geometry geometry);

/// Runs a full corner exchange (legs plus the final heal back to `layout`).
void exchange_corners(DeformationEngine &engine, ExchangeKind kind, Geometry geometry);

}  // namespace twistlab

#endif
