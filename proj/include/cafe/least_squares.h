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

#ifndef CAFE_LEAST_SQUARES_H
#define CAFE_LEAST_SQUARES_H

#include <functional>
#include <span>
#include <vector>

namespace cafe {

/// Box-bounded nonlinear least-squares problem: minimize sum_i r_i(x)^2.
struct LeastSquaresProblem {
    int num_params = 0;
    int num_residuals = 0;
    /// Writes num_residuals values into `out`.
    std::function<void(std::span<const double> x, std::span<double> out)> residuals;
    /// Optional analytic Jacobian, row-major num_residuals x num_params. Central
    /// differences are used when empty.
    std::function<void(std::span<const double> x, std::span<double> out)> jacobian;
    /// Empty means unbounded.
    std::vector<double> lower;
    std::vector<double> upper;
};

struct LeastSquaresOptions {
    int max_iterations = 500;
    /// Relative cost reduction below which the iteration stops.
    double ftol = 1e-15;
    /// Relative step size below which the iteration stops.
    double xtol = 1e-14;
    /// Absolute cost below which the iteration stops.
    double cost_floor = 1e-30;
    /// Central-difference step (relative to max(|x|, 1)).
    double diff_step = 1e-7;
    double initial_damping = 1e-3;
};

struct LeastSquaresResult {
    std::vector<double> x;
    /// sum of squared residuals at x.
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) with a central-difference Jacobian.
/// Steps are projected onto the box. Deterministic for a given start.
LeastSquaresResult levenberg_marquardt(
    const LeastSquaresProblem &problem, std::vector<double> x0, const LeastSquaresOptions &options = {});

}  // namespace cafe

#endif
