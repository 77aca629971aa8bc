// Copyright 2026 The CAFE Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAFE_STATEPREP_H
#define CAFE_STATEPREP_H

#include <vector>

#include "cafe/qcore.h"
#include "cafe/unitaries.h"

namespace cafe {

/// Two-qubit circuit with a single CZ: local layer, CZ, local layer.
///
/// The preparation form maps |00> to a target state with H on qubit 1 and
/// Ry(alpha) on qubit 2 before the CZ, then the corrections U1 (x) U2. The
/// measurement form is its exact adjoint.
struct PrepCircuit {
    std::vector<Layer2q> layers;
    /// Ry angle, 2 arccos of the largest singular value of the amplitude matrix.
    double alpha = 0.0;
    /// Singular values of the target amplitude matrix.
    std::array<double, 2> singular_values{};
    bool inverted = false;

    const CMatrix &pre_q1() const {
        return layers.front().q1;
    }
    const CMatrix &pre_q2() const {
        return layers.front().q2;
    }
    const CMatrix &post_q1() const {
        return layers.back().q1;
    }
    const CMatrix &post_q2() const {
        return layers.back().q2;
    }

    int entangler_count() const {
        return count_entanglers(layers);
    }
    CMatrix unitary() const {
        return layers_unitary(layers);
    }
    CVector apply(const CVector &state) const {
        return unitary() * state;
    }
    PrepCircuit inverse() const;
};

/// Amplitude matrix [[A, B], [C, D]] of A|00> + B|01> + C|10> + D|11>.
CMatrix amplitude_matrix(const CVector &state);

/// Compiles a normalized two-qubit state into a circuit with exactly one CZ.
/// Throws std::invalid_argument for a wrong size or a non-normalized input.
PrepCircuit prep_with_cz(const CVector &target);

/// Adjoint of prep_with_cz(target): maps the target to |00>.
PrepCircuit measure_gadget(const CVector &target);

}  // namespace cafe

#endif
