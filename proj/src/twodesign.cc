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

#include "cafe/twodesign.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cafe/least_squares.h"

namespace cafe {

namespace {

constexpr double kDesignTolerance = 1e-8;

/// Weyl-Heisenberg displacements X^a Z^b in dimension d, ordered a-major.
std::vector<CMatrix> displacements(int d) {
    CMatrix shift = CMatrix::Zero(d, d);
    CMatrix clock = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        shift((k + 1) % d, k) = 1.0;
        clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    }
    std::vector<CMatrix> out;
    CMatrix xa = CMatrix::Identity(d, d);
    for (int a = 0; a < d; ++a) {
        CMatrix zb = CMatrix::Identity(d, d);
        for (int b = 0; b < d; ++b) {
            out.push_back(xa * zb);
            zb = clock * zb;
        }
        xa = shift * xa;
    }
    return out;
}

CVector unpack(std::span<const double> x, int d) {
    CVector psi(d);
    for (int k = 0; k < d; ++k) {
        psi[k] = Complex(x[k], x[k + d]);
    }
    return psi / psi.norm();
}

}  // namespace

StateEnsemble sic_1q() {
    std::vector<PureState> states;
    CVector zero(2);
    zero << 1.0, 0.0;
    states.emplace_back(zero);
    double a = 1.0 / std::sqrt(3.0);
    double b = std::sqrt(2.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
        CVector psi(2);
        psi << a, b * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
        states.push_back(PureState::normalized(psi));
    }
    StateEnsemble out{1, std::move(states), 0.0, "sic-1q"};
    out.residual = verify_2design(out.states);
    return out;
}

StateEnsemble design_2q(uint64_t seed) {
    constexpr int d = 4;
    const std::vector<CMatrix> ops = displacements(d);

    // SIC condition |<psi|D|psi>|^2 = 1/(d+1) for every non-identity displacement.
    // Since these overlaps always sum to d - 1, the squared residual equals the
    // orbit frame potential minus its lower bound (up to a constant factor).
    LeastSquaresProblem problem;
    problem.num_params = 2 * d;
    problem.num_residuals = d * d - 1;
    problem.residuals = [&ops](std::span<const double> x, std::span<double> out) {
        CVector psi = unpack(x, d);
        for (int k = 1; k < d * d; ++k) {
            out[k - 1] = std::norm(psi.dot(ops[k] * psi)) - 1.0 / (d + 1.0);
        }
    };
    LeastSquaresOptions options;
    options.max_iterations = 2000;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<double> x0(2 * d);
        for (auto &v : x0) {
            v = normal(rng);
        }
        LeastSquaresResult fit = levenberg_marquardt(problem, x0, options);
        if (fit.cost > 1e-20) {
            continue;
        }
        CVector fiducial = unpack(fit.x, d);
        std::vector<PureState> states;
        for (const auto &op : ops) {
            states.push_back(PureState::normalized(op * fiducial));
        }
        double residual = verify_2design(states);
        if (residual <= kDesignTolerance) {
            return StateEnsemble{2, std::move(states), residual, "wh-sic-2q-" + std::to_string(seed)};
        }
    }
    throw std::runtime_error("design_2q: fiducial search did not reach the 2-design tolerance");
}

const StateEnsemble &default_design_2q() {
    static const StateEnsemble ensemble = design_2q(kDefaultDesignSeed);
    return ensemble;
}

const StateEnsemble &default_ensemble(int num_qubits) {
    static const StateEnsemble one = sic_1q();
    if (num_qubits == 1) {
        return one;
    }
    if (num_qubits == 2) {
        return default_design_2q();
    }
    throw std::invalid_argument("default_ensemble: only 1 or 2 qubits are supported");
}

double verify_2design(const std::vector<PureState> &states) {
    if (states.empty()) {
        return INFINITY;
    }
    int d = states.front().dim();
    CMatrix moment = CMatrix::Zero(d * d, d * d);
    for (const auto &psi : states) {
        if (psi.dim() != d) {
            return INFINITY;
        }
        CVector pair = kron(psi.amplitudes(), psi.amplitudes());
        moment.noalias() += pair * pair.adjoint();
    }
    moment /= static_cast<double>(states.size());
    return max_abs(moment - (2.0 / (d * (d + 1.0))) * symmetric_projector(d));
}

double verify_2design(const StateEnsemble &ensemble) {
    return verify_2design(ensemble.states);
}

double frame_potential(const std::vector<PureState> &states) {
    double total = 0.0;
    for (const auto &a : states) {
        for (const auto &b : states) {
            double overlap = std::norm(a.amplitudes().dot(b.amplitudes()));
            total += overlap * overlap;
        }
    }
    return total;
}

StateEnsemble make_ensemble(std::vector<PureState> states, std::string id, double tolerance) {
    if (states.empty()) {
        throw std::invalid_argument("make_ensemble: no states");
    }
    int m = qubit_count(states.front().dim());
    if (static_cast<int>(states.size()) != (1 << (2 * m))) {
        throw std::invalid_argument("make_ensemble: an m-qubit ensemble needs 4^m states");
    }
    double residual = verify_2design(states);
    if (!(residual <= tolerance)) {
        throw std::invalid_argument("make_ensemble: states do not form a 2-design (residual " +
                                    std::to_string(residual) + ")");
    }
    return StateEnsemble{m, std::move(states), residual, std::move(id)};
}

}  // namespace cafe
