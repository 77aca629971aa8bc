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

#include "cafe/stateprep.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cafe {

CMatrix amplitude_matrix(const CVector &state) {
    if (state.size() != 4) {
        throw std::invalid_argument("amplitude_matrix: expected a two-qubit state");
    }
    CMatrix m(2, 2);
    m << state[0], state[1], state[2], state[3];
    return m;
}

PrepCircuit PrepCircuit::inverse() const {
    PrepCircuit out = *this;
    out.layers.clear();
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        out.layers.push_back(it->adjoint());
    }
    out.inverted = !inverted;
    return out;
}

PrepCircuit prep_with_cz(const CVector &target) {
    if (target.size() != 4) {
        throw std::invalid_argument("prep_with_cz: expected a two-qubit state");
    }
    if (std::abs(target.norm() - 1.0) > kExactTol) {
        throw std::invalid_argument("prep_with_cz: target state is not normalized");
    }
    Svd2 target_svd = svd_2x2(amplitude_matrix(target));
    double s0 = std::clamp(target_svd.s[0], 0.0, 1.0);
    double alpha = 2.0 * std::acos(s0);

    Layer2q entangling_input = Layer2q::local(gates::h(), gates::ry(alpha));
    CVector zero = CVector::Zero(4);
    zero[0] = 1.0;
    CVector intermediate = gates::cz() * (entangling_input.unitary() * zero);
    Svd2 cz_svd = svd_2x2(amplitude_matrix(intermediate));

    // Local gates act on the amplitude matrix as M -> U1 M U2^T, so
    // M_target = (U_t U_cz^dagger) M_cz (V_cz V_t^dagger), giving U2 = conj(V_t) V_cz^T.
    CMatrix u1 = target_svd.u * cz_svd.u.adjoint();
    CMatrix u2 = target_svd.v.conjugate() * cz_svd.v.transpose();

    PrepCircuit circuit;
    circuit.layers = {entangling_input, Layer2q::entangler(), Layer2q::local(u1, u2)};
    circuit.alpha = alpha;
    circuit.singular_values = target_svd.s;
    return circuit;
}

PrepCircuit measure_gadget(const CVector &target) {
    return prep_with_cz(target).inverse();
}

}  // namespace cafe
