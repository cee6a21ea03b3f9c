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

#ifndef TWISTLAB_PROTOCOLS_HPP
#define TWISTLAB_PROTOCOLS_HPP

#include <functional>

#include "twistlab/clifford_map.hpp"
#include "twistlab/deformation.hpp"

namespace twistlab {

using ProtocolFn = std::function<void(DeformationEngine &)>;

/// Replays the protocol on the compiled code, tracking the logical
/// representatives, and expresses the final representatives in the final
/// layout's logical basis. The protocol must preserve k.
LogicalCliffordMap induced_clifford(
    const CompiledCode &code, const ProtocolFn &protocol, uint64_t seed = 1,
    OutcomePolicy policy = OutcomePolicy::forced(+1));

struct GateRunResult {
    LogicalCliffordMap map;  // raw induced map for the executed outcome pattern
    std::vector<MeasurementRecord> transcript;
    std::vector<StepAudit> audits;
    size_t max_measured_weight = 0;
};

/// Corner-exchange gates on the standard planar code (bottom pair = B1,
/// left pair = B2).
GateRunResult gate_B1(int L, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));
GateRunResult gate_B2(int L, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));
GateRunResult gate_B1_rotated(int d, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));
GateRunResult gate_B2_rotated(int d, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));

/// The six-twist lattice of the two-qubit planar code: an L x 2L grid whose
/// bottom side carries two extra corners. Exchanging the two middle corners
/// entangles the two logical qubits.
LatticeLayout six_twist_layout(int L);
CompiledCode six_twist_code(int L);
GateRunResult six_twist_exchange(int L, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));

/// Quadruple-twist qubit (two parallel defect lines) plus a rough hole pair,
/// and the braid of one hole around twists of the quadruple.
struct HoleBraidSetup {
    LatticeLayout layout;
    int d = 0;
    // logical labels: "C" (quadruple twist qubit), "T" (hole pair qubit)
};
HoleBraidSetup hole_braid_setup(int d);
GateRunResult hole_braid_cnot(int d, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));
GateRunResult hole_braid_cz(int d, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));

/// Measurement-only CNOT between three quadruple-twist qubits via hole-pair
/// ancillas: measure Z_C Z_A, then X_A X_T, then Z_A; outcomes determine the
/// Pauli correction. Outcomes are forced by `pattern` (bit i forces the i-th
/// logical parity measurement to -1).
struct MeasurementOnlyCnotResult {
    int zz_outcome = +1;
    int xx_outcome = +1;
    int za_outcome = +1;
    LogicalCliffordMap map;    // induced action on (control, target)
    StabilizerTableau choi_state;
    std::vector<LogicalPair> choi_basis;
    std::vector<MeasurementRecord> transcript;
    size_t max_measured_weight = 0;
};
MeasurementOnlyCnotResult measurement_only_cnot(int d, unsigned pattern, uint64_t seed = 1);

/// Logical parity measurement between two planar codes stacked vertically
/// with a one-row ancilla strip: merge, read the parity, split.
struct SurgeryResult {
    int outcome = +1;
    size_t strip_qubits = 0;
    StabilizerTableau final_state;
    std::vector<LogicalPair> final_logicals;
    std::vector<MeasurementRecord> transcript;
};
enum class ParityBasis { ZZ, XX };
SurgeryResult surgery_parity(int L, ParityBasis basis, int forced_outcome, uint64_t seed = 1);
size_t surgery_strip_qubit_count(int L, ParityBasis basis);

/// Hybrid qubit (one rough hole, one smooth hole, one twist pair) and the
/// encoding-switch recipes between hybrid, twist-quadruple, and hole-pair
/// encodings. Round trips are identity channels up to the tracked Pauli
/// correction, verified through a logical Choi state.
LatticeLayout hybrid_layout(int d);
CompiledCode hybrid_code(int d);
GateRunResult hybrid_hole_braid(int d, uint64_t seed = 1, OutcomePolicy policy = OutcomePolicy::forced(+1));

enum class Encoding { HolePair, TwistQuadruple, Hybrid };
struct SwitchResult {
    bool identity_channel = false;  // both eigenvalues survived deterministically
    int x_sign = 0;                 // final eigenvalue of the prepared X eigenstate
    int z_sign = 0;                 // final eigenvalue of the prepared Z eigenstate
    std::vector<int> teleport_outcomes;
};
SwitchResult encode_switch_roundtrip(int d, Encoding via, unsigned pattern, uint64_t seed = 1);

/// Appends one reference qubit per listed logical pair and stabilizes the
/// Bell pairs X x X_ref and Z x Z_ref, producing a logical Choi state.
StabilizerTableau make_choi_state(const StabilizerTableau &code_state, const std::vector<size_t> &pair_indices);

std::vector<std::string> named_protocol_ids();

}  // namespace twistlab

#endif
