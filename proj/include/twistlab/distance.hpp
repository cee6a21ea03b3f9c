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

#ifndef TWISTLAB_DISTANCE_HPP
#define TWISTLAB_DISTANCE_HPP

#include <string>

#include "twistlab/tableau.hpp"

namespace twistlab {

struct DistanceReport {
    int d = 0;               // distance if found; otherwise the scanned lower bound
    bool found = false;      // true when `witness` realizes weight d
    PauliOperator witness;   // minimal-weight logical, lexicographically smallest
    std::string method;      // "exhaustive" or "weight-bounded"
};

/// Minimum weight of a logical operator: an element commuting with every
/// generator but outside the generated group. Qubits pinned by single-qubit
/// generators are projected out first. Small generator spans are swept
/// exhaustively by Gray code over the stabilizer cosets; larger codes fall
/// back to increasing-weight search over connected supports, which reports a
/// lower bound of max_weight+1 when no witness exists up to max_weight.
DistanceReport code_distance(const StabilizerTableau &t, int max_weight, int threads = 0);

/// Number of worker threads: TWISTLAB_THREADS caps/overrides the requested
/// count; 0 requests the default.
int resolve_thread_count(int requested);

/// Existence search: the first logical operator of exactly the given weight
/// whose support contains one of the hint qubits (full-lattice indices).
/// Scans connected supports rooted at the hints only.
std::optional<PauliOperator> find_logical_witness(
    const StabilizerTableau &t, int weight, const std::vector<size_t> &hint_qubits);

}  // namespace twistlab

#endif
