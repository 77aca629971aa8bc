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

#ifndef CAFE_TWODESIGN_H
#define CAFE_TWODESIGN_H

#include <cstdint>
#include <string>
#include <vector>

#include "cafe/qcore.h"

namespace cafe {

/// Seed used for the two-qubit ensemble unless one is given explicitly.
inline constexpr uint64_t kDefaultDesignSeed = 20230707;

/// A verified m-qubit state 2-design with 4^m states.
struct StateEnsemble {
    int num_qubits = 0;
    std::vector<PureState> states;
    /// verify_2design residual measured at construction.
    double residual = 0.0;
    std::string id;

    int dim() const {
        return 1 << num_qubits;
    }
};

/// Four tetrahedral single-qubit states with pairwise overlap 1/3.
StateEnsemble sic_1q();

/// Sixteen two-qubit states forming a SIC: the Weyl-Heisenberg orbit of a
/// fiducial found numerically from a seeded random start. Throws
/// std::runtime_error if the 2-design residual exceeds 1e-8.
StateEnsemble design_2q(uint64_t seed = kDefaultDesignSeed);

/// Cached design_2q(kDefaultDesignSeed).
const StateEnsemble &default_design_2q();

/// sic_1q() for m = 1, default_design_2q() for m = 2.
const StateEnsemble &default_ensemble(int num_qubits);

/// max-norm of (1/N) sum_i (psi_i psi_i^dagger)^(x)2 - 2 P_S / (d(d+1)).
double verify_2design(const std::vector<PureState> &states);
double verify_2design(const StateEnsemble &ensemble);

/// sum_ij |<psi_i|psi_j>|^4.
double frame_potential(const std::vector<PureState> &states);

/// Builds an ensemble from user-supplied states; throws std::invalid_argument
/// unless the count is 4^m and the 2-design residual is at most `tolerance`.
StateEnsemble make_ensemble(std::vector<PureState> states, std::string id, double tolerance = 1e-8);

}  // namespace cafe

#endif
