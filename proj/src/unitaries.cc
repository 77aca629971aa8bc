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

#include "cafe/unitaries.h"

#include <cmath>
#include <stdexcept>

namespace cafe {

namespace {

constexpr Complex kI(0.0, 1.0);

Complex expi(double angle) {
    return std::polar(1.0, angle);
}

}  // namespace

CMatrix fsim(const FsimParams &p) {
    CMatrix u = CMatrix::Zero(4, 4);
    double c = std::cos(p.theta);
    double s = std::sin(p.theta);
    u(0, 0) = 1.0;
    u(1, 1) = expi(-(p.gamma + p.zeta)) * c;
    u(1, 2) = -kI * expi(-(p.gamma - p.chi)) * s;
    u(2, 1) = -kI * expi(-(p.gamma + p.chi)) * s;
    u(2, 2) = expi(-(p.gamma - p.zeta)) * c;
    u(3, 3) = -expi(-(2.0 * p.gamma + p.phi));
    return u;
}

CMatrix fsim_delta(const FsimDelta &d) {
    CMatrix u = CMatrix::Zero(4, 4);
    double c = std::cos(d.dtheta);
    double s = std::sin(d.dtheta);
    Complex g = expi(-d.dgamma);
    u(0, 0) = 1.0;
    u(1, 1) = g * c;
    u(1, 2) = -kI * g * s;
    u(2, 1) = -kI * g * s;
    u(2, 2) = g * c;
    u(3, 3) = -expi(-(d.dphi + 2.0 * d.dgamma));
    return u;
}

CMatrix x_delta(const XDelta &d) {
    CMatrix u(2, 2);
    double s = std::sin(0.5 * d.dmu);
    double c = std::cos(0.5 * d.dmu);
    u << -s, -kI * c, -kI * c, -s;
    return u;
}

namespace gates {

CMatrix identity(int dim) {
    return CMatrix::Identity(dim, dim);
}

CMatrix x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix y() {
    CMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

CMatrix z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

CMatrix h() {
    CMatrix m(2, 2);
    double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

CMatrix s() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, kI;
    return m;
}

CMatrix rx(double angle) {
    CMatrix m(2, 2);
    double c = std::cos(0.5 * angle);
    double s = std::sin(0.5 * angle);
    m << c, -kI * s, -kI * s, c;
    return m;
}

CMatrix ry(double angle) {
    CMatrix m(2, 2);
    double c = std::cos(0.5 * angle);
    double s = std::sin(0.5 * angle);
    m << c, -s, s, c;
    return m;
}

CMatrix rz(double angle) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = expi(-0.5 * angle);
    m(1, 1) = expi(0.5 * angle);
    return m;
}

CMatrix cz() {
    CMatrix m = CMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return m;
}

CMatrix xx() {
    return kron(x(), x());
}

CMatrix pauli(int index) {
    switch (index) {
        case 0:
            return identity(2);
        case 1:
            return x();
        case 2:
            return y();
        case 3:
            return z();
        default:
            throw std::invalid_argument("pauli: index must be in [0, 4)");
    }
}

CMatrix pauli_string(int index, int num_qubits) {
    CMatrix out = CMatrix::Identity(1, 1);
    int place = 1;
    for (int k = 1; k < num_qubits; ++k) {
        place *= 4;
    }
    for (int k = 0; k < num_qubits; ++k) {
        out = kron(out, pauli((index / place) % 4));
        place /= 4;
    }
    return out;
}

}  // namespace gates

Layer2q Layer2q::local(CMatrix q1, CMatrix q2) {
    if (q1.rows() != 2 || q1.cols() != 2 || q2.rows() != 2 || q2.cols() != 2) {
        throw std::invalid_argument("Layer2q::local: expected 2x2 single-qubit gates");
    }
    return Layer2q{Kind::Local, std::move(q1), std::move(q2)};
}

Layer2q Layer2q::entangler() {
    return Layer2q{Kind::Cz, CMatrix(), CMatrix()};
}

CMatrix Layer2q::unitary() const {
    return kind == Kind::Cz ? gates::cz() : kron(q1, q2);
}

Layer2q Layer2q::adjoint() const {
    if (kind == Kind::Cz) {
        return entangler();
    }
    return local(q1.adjoint(), q2.adjoint());
}

CMatrix layers_unitary(const std::vector<Layer2q> &layers) {
    CMatrix u = CMatrix::Identity(4, 4);
    for (const auto &layer : layers) {
        u = layer.unitary() * u;
    }
    return u;
}

int count_entanglers(const std::vector<Layer2q> &layers) {
    int n = 0;
    for (const auto &layer : layers) {
        n += layer.kind == Layer2q::Kind::Cz ? 1 : 0;
    }
    return n;
}

}  // namespace cafe
