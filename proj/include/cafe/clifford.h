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

#ifndef CAFE_CLIFFORD_H
#define CAFE_CLIFFORD_H

#include <cstdint>
#include <random>
#include <vector>

#include "cafe/qcore.h"
#include "cafe/unitaries.h"

namespace cafe {

inline constexpr int kNumCliffords2q = 11520;

/// Class of a two-qubit Clifford by its CZ count.
enum class CliffordClass {
    SingleQubit,
    CnotLike,
    IswapLike,
    SwapLike,
};

struct CliffordElement {
    int index = 0;
    CliffordClass cls = CliffordClass::SingleQubit;
    /// Ideal unitary, up to global phase.
    CMatrix unitary;
    /// Single-qubit Clifford layers and CZ layers in time order.
    std::vector<Layer2q> compiled;
    int cz_count = 0;
};

/// The 24 single-qubit Cliffords, phase-canonical, identity first.
const std::vector<CMatrix> &single_qubit_cliffords();

/// Element `index` of the enumeration: 576 single-qubit-class elements, then
/// 5184 CNOT-like, 5184 iSWAP-like and 576 SWAP-like. Index 0 is the identity.
CliffordElement clifford_element(int index);

/// Index of the element equal to `u` up to global phase. Throws std::invalid_argument
/// when `u` is not a two-qubit Clifford.
int clifford_index(const CMatrix &u);

/// Uniform draw over the group.
CliffordElement sample_clifford(std::mt19937_64 &rng);

/// Element implementing the inverse of `u` (a Clifford up to phase).
CliffordElement clifford_inverse(const CMatrix &u);

/// True when u P u^dagger is a signed Pauli string for each generator of the Pauli group.
bool maps_paulis_to_paulis(const CMatrix &u, double tol = 1e-10);

}  // namespace cafe

#endif
