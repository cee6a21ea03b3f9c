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

#ifndef TWISTLAB_STATEVECTOR_HPP
#define TWISTLAB_STATEVECTOR_HPP

#include <complex>
#include <vector>

#include "twistlab/pauli.hpp"
#include "twistlab/tableau.hpp"

namespace twistlab {

/// Dense 2^n simulator used as an independent oracle against the tableau
/// engine. Exact for stabilizer states: expectations of Pauli observables are
/// always -1, 0 or +1.
class StateVector {
  public:
    static constexpr size_t kMaxQubits = 20;

    explicit StateVector(size_t n);

    /// |0...0> preparation followed by projection onto the +1 eigenspace of
    /// every generator (all generators must admit a common eigenstate).
    static StateVector stabilized_by(const StabilizerTableau &t, std::mt19937_64 &rng);

    size_t num_qubits() const {
        return n_;
    }

    /// Exact expectation of a Hermitian Pauli: one of -1, 0, +1.
    int expectation(const PauliOperator &p) const;

    /// Projects onto the `outcome` eigenspace of p and renormalizes.
    /// Returns the probability the outcome had before projection.
    double project(const PauliOperator &p, int outcome);

    /// Measures with the given policy; for random policy the rng decides
    /// using the true Born probability.
    MeasurementRecord measure(const PauliOperator &p, OutcomePolicy policy, std::mt19937_64 &rng);

    /// True iff p|psi> = +|psi| exactly (sign of p included).
    bool fixes_state(const PauliOperator &p) const {
        return expectation(p) == +1;
    }

    const std::vector<std::complex<double>> &amplitudes() const {
        return amps_;
    }

  private:
    size_t n_;
    std::vector<std::complex<double>> amps_;

    std::complex<double> pauli_bra_ket(const PauliOperator &p) const;
};

}  // namespace twistlab

#endif
