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

#ifndef CAFE_TESTS_TEST_UTIL_H
#define CAFE_TESTS_TEST_UTIL_H

#include <random>

#include "cafe/qcore.h"

namespace cafe::testing {

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase fix.
inline CMatrix random_unitary(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix z(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            z(r, c) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    CMatrix rm = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < d; ++c) {
        Complex ph = rm(c, c) / std::abs(rm(c, c));
        q.col(c) *= ph;
    }
    return q;
}

inline CVector random_state(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CVector v(d);
    for (int k = 0; k < d; ++k) {
        v[k] = Complex(g(rng), g(rng));
    }
    return v / v.norm();
}

inline CMatrix random_matrix(int rows, int cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

inline CMatrix random_density(int d, std::mt19937_64 &rng) {
    CMatrix a = random_matrix(d, d, rng);
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline CMatrix ket_bra(int d, int i) {
    CMatrix rho = CMatrix::Zero(d, d);
    rho(i, i) = 1.0;
    return rho;
}

}  // namespace cafe::testing

#endif
