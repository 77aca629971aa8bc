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

#ifndef CAFE_QCORE_H
#define CAFE_QCORE_H

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace cafe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for results of exact (closed-form) algebra.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for iterative or long composed results.
inline constexpr double kComposedTol = 1e-9;

// Basis ordering convention used throughout: for two qubits the basis is
// |00>, |01>, |10>, |11> and qubit 1 is the most significant index. A two-qubit
// amplitude vector reshaped row-major into a 2x2 matrix therefore has qubit 1
// as its row index.

/// A normalized pure state.
class PureState {
  public:
    /// Throws std::invalid_argument unless | ||amplitudes|| - 1 | <= 1e-12.
    explicit PureState(CVector amplitudes);

    /// Rescales a non-zero vector to unit norm.
    static PureState normalized(const CVector &amplitudes);

    int dim() const {
        return static_cast<int>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    CMatrix density() const {
        return amplitudes_ * amplitudes_.adjoint();
    }

  private:
    CVector amplitudes_;
};

struct Svd2 {
    CMatrix u;
    std::array<double, 2> s;
    CMatrix v;
};

/// Tensor product a (x) b, with `a` acting on the more significant index.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Closed-form singular value decomposition of a 2x2 complex matrix, m = u diag(s) v^dagger.
///
/// Singular values are returned in descending order. The phase of each column
/// of `u` is fixed so that its first entry with magnitude above 1e-14 is real and
/// non-negative (the matching column of `v` absorbs the same phase). The zero
/// matrix yields s = (0, 0) and u = v = I.
Svd2 svd_2x2(const CMatrix &m);

/// Swap operator exchanging the two d-dimensional replicas of a d*d space.
CMatrix replica_swap(int d);

/// Projector onto the symmetric subspace of two d-dimensional replicas, (I + SWAP) / 2.
CMatrix symmetric_projector(int d);

/// Largest entry magnitude.
double max_abs(const CMatrix &m);

bool is_unitary(const CMatrix &m, double tol = kExactTol);

/// Hermitian, unit trace, and minimum eigenvalue >= -tol.
bool is_density(const CMatrix &rho, double tol = kExactTol);

/// Minimum over global phases of max|a - e^{i t} b|. Inputs must share a shape.
double distance_up_to_phase(const CMatrix &a, const CMatrix &b);

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubit_count(int dim);

}  // namespace cafe

#endif
