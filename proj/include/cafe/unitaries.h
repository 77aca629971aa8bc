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

#ifndef CAFE_UNITARIES_H
#define CAFE_UNITARIES_H

#include <string>
#include <vector>

#include "cafe/qcore.h"

namespace cafe {

/// Angles of the general excitation-preserving two-qubit gate; all zero is CZ.
struct FsimParams {
    double theta = 0.0;
    double zeta = 0.0;
    double chi = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
};

/// Swap, single-qubit phase and conditional phase miscalibrations of a CZ.
struct FsimDelta {
    double dtheta = 0.0;
    double dgamma = 0.0;
    double dphi = 0.0;
};

/// Rotation-angle miscalibration of a single-qubit X(pi) gate.
struct XDelta {
    double dmu = 0.0;
};

/// Five-angle fSim matrix; entries coupling different excitation numbers are exactly zero.
CMatrix fsim(const FsimParams &p);

/// CZ-like gate with swap, phase and conditional-phase errors; equals fsim(dtheta, 0, 0, dgamma, dphi).
CMatrix fsim_delta(const FsimDelta &d);

/// X(pi) with a rotation error, x_delta(0) = Rx(pi) = -iX.
CMatrix x_delta(const XDelta &d);

namespace gates {

CMatrix identity(int dim);
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix h();
CMatrix s();
/// exp(-i a X / 2)
CMatrix rx(double angle);
/// exp(-i a Y / 2)
CMatrix ry(double angle);
/// exp(-i a Z / 2)
CMatrix rz(double angle);
CMatrix cz();
CMatrix xx();
/// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
CMatrix pauli(int index);
/// Tensor product of single-qubit Paulis; digit k (base 4, most significant first) selects qubit k.
CMatrix pauli_string(int index, int num_qubits);

}  // namespace gates

/// One layer of a two-qubit circuit: either parallel single-qubit gates or a CZ.
struct Layer2q {
    enum class Kind { Local, Cz };

    Kind kind = Kind::Local;
    CMatrix q1;
    CMatrix q2;

    static Layer2q local(CMatrix q1, CMatrix q2);
    static Layer2q entangler();

    /// Ideal 4x4 unitary of the layer.
    CMatrix unitary() const;
    /// Layer implementing the adjoint.
    Layer2q adjoint() const;
};

/// Product of layers in time order (first layer acts first).
CMatrix layers_unitary(const std::vector<Layer2q> &layers);

int count_entanglers(const std::vector<Layer2q> &layers);

}  // namespace cafe

#endif
