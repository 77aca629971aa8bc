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

#include "cafe/qcore.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cafe {

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kExactTol) {
        throw std::invalid_argument("PureState: amplitudes are not normalized (norm " + std::to_string(norm) + ")");
    }
}

PureState PureState::normalized(const CVector &amplitudes) {
    double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("PureState: cannot normalize the zero vector");
    }
    return PureState(amplitudes / norm);
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

CMatrix rotation(double angle) {
    CMatrix r(2, 2);
    double c = std::cos(angle);
    double s = std::sin(angle);
    r << c, -s, s, c;
    return r;
}

}  // namespace

Svd2 svd_2x2(const CMatrix &m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("svd_2x2: expected a 2x2 matrix");
    }
    if (max_abs(m) == 0.0) {
        return {CMatrix::Identity(2, 2), {0.0, 0.0}, CMatrix::Identity(2, 2)};
    }

    // Unitary q with q^dagger m upper triangular.
    CMatrix q = CMatrix::Identity(2, 2);
    double r0 = std::hypot(std::abs(m(0, 0)), std::abs(m(1, 0)));
    if (r0 > 0.0) {
        Complex a = m(0, 0) / r0;
        Complex c = m(1, 0) / r0;
        q << a, -std::conj(c), c, std::conj(a);
    }
    CMatrix r = q.adjoint() * m;

    // Diagonal phases d1, d2 with d1 r d2 real: r = d1^dagger t d2^dagger.
    double alpha = std::arg(r(0, 1));
    double beta = std::arg(r(1, 1));
    CMatrix d2 = CMatrix::Identity(2, 2);
    d2(1, 1) = std::polar(1.0, -alpha);
    CMatrix d1 = CMatrix::Identity(2, 2);
    d1(1, 1) = std::polar(1.0, alpha - beta);
    double ta = std::abs(r(0, 0));
    double tb = std::abs(r(0, 1));
    double td = std::abs(r(1, 1));
    // r(0, 0) is real non-negative unless the first column vanished.
    if (r0 == 0.0) {
        ta = 0.0;
    }

    // Real 2x2 SVD of t = [[ta, tb], [0, td]] = rot(phi) diag(sx, sy) rot(theta).
    double e = 0.5 * (ta + td);
    double f = 0.5 * (ta - td);
    double g = 0.5 * tb;
    double h = -0.5 * tb;
    double qq = std::hypot(e, h);
    double rr = std::hypot(f, g);
    double sx = qq + rr;
    double sy = std::max(0.0, qq - rr);
    double a1 = std::atan2(g, f);
    double a2 = std::atan2(h, e);
    double theta = 0.5 * (a2 - a1);
    double phi = 0.5 * (a2 + a1);

    CMatrix u = q * d1.adjoint() * rotation(phi);
    CMatrix v = d2 * rotation(theta).transpose();

    for (int col = 0; col < 2; ++col) {
        for (int row = 0; row < 2; ++row) {
            if (std::abs(u(row, col)) > 1e-14) {
                Complex phase = std::polar(1.0, -std::arg(u(row, col)));
                u.col(col) *= phase;
                v.col(col) *= phase;
                u(row, col) = std::abs(u(row, col));
                break;
            }
        }
    }
    return {u, {sx, sy}, v};
}

CMatrix replica_swap(int d) {
    CMatrix swap = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            swap(j * d + i, i * d + j) = 1.0;
        }
    }
    return swap;
}

CMatrix symmetric_projector(int d) {
    if (d < 1) {
        throw std::invalid_argument("symmetric_projector: dimension must be positive");
    }
    return 0.5 * (CMatrix::Identity(d * d, d * d) + replica_swap(d));
}

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_density(const CMatrix &rho, double tol) {
    if (rho.rows() != rho.cols()) {
        return false;
    }
    if (max_abs(rho - rho.adjoint()) > tol) {
        return false;
    }
    if (std::abs(rho.trace() - 1.0) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

double distance_up_to_phase(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("distance_up_to_phase: shape mismatch");
    }
    Complex overlap = (b.adjoint() * a).trace();
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    return max_abs(a - phase * b);
}

int qubit_count(int dim) {
    int m = 0;
    while ((1 << m) < dim) {
        ++m;
    }
    if (dim < 2 || (1 << m) != dim) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return m;
}

}  // namespace cafe
