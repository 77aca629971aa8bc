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

#include "cafe/least_squares.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace cafe {

namespace {

struct Evaluator {
    const LeastSquaresProblem &problem;
    std::vector<double> buffer;

    explicit Evaluator(const LeastSquaresProblem &p) : problem(p), buffer(static_cast<size_t>(p.num_residuals)) {
    }

    Eigen::VectorXd residuals(const std::vector<double> &x) {
        problem.residuals(x, buffer);
        return Eigen::Map<const Eigen::VectorXd>(buffer.data(), static_cast<Eigen::Index>(buffer.size()));
    }
};

void project(const LeastSquaresProblem &problem, std::vector<double> &x) {
    for (size_t i = 0; i < x.size(); ++i) {
        if (!problem.lower.empty()) {
            x[i] = std::max(x[i], problem.lower[i]);
        }
        if (!problem.upper.empty()) {
            x[i] = std::min(x[i], problem.upper[i]);
        }
    }
}

Eigen::MatrixXd jacobian(Evaluator &eval, const std::vector<double> &x, double rel_step) {
    const auto &problem = eval.problem;
    Eigen::MatrixXd jac(problem.num_residuals, problem.num_params);
    if (problem.jacobian) {
        std::vector<double> rows(static_cast<size_t>(problem.num_residuals) * problem.num_params);
        problem.jacobian(x, rows);
        for (int i = 0; i < problem.num_residuals; ++i) {
            for (int j = 0; j < problem.num_params; ++j) {
                jac(i, j) = rows[static_cast<size_t>(i) * problem.num_params + j];
            }
        }
        return jac;
    }
    std::vector<double> probe = x;
    for (int j = 0; j < problem.num_params; ++j) {
        double h = rel_step * std::max(1.0, std::abs(x[j]));
        double lo = x[j] - h;
        double hi = x[j] + h;
        // One-sided differences at the box faces.
        if (!problem.lower.empty() && lo < problem.lower[j]) {
            lo = x[j];
        }
        if (!problem.upper.empty() && hi > problem.upper[j]) {
            hi = x[j];
        }
        if (hi == lo) {
            jac.col(j).setZero();
            continue;
        }
        probe[j] = hi;
        Eigen::VectorXd rh = eval.residuals(probe);
        probe[j] = lo;
        Eigen::VectorXd rl = eval.residuals(probe);
        probe[j] = x[j];
        jac.col(j) = (rh - rl) / (hi - lo);
    }
    return jac;
}

}  // namespace

LeastSquaresResult levenberg_marquardt(
    const LeastSquaresProblem &problem, std::vector<double> x0, const LeastSquaresOptions &options) {
    if (problem.num_params <= 0 || static_cast<int>(x0.size()) != problem.num_params) {
        throw std::invalid_argument("levenberg_marquardt: start point does not match num_params");
    }
    if ((!problem.lower.empty() && static_cast<int>(problem.lower.size()) != problem.num_params) ||
        (!problem.upper.empty() && static_cast<int>(problem.upper.size()) != problem.num_params)) {
        throw std::invalid_argument("levenberg_marquardt: bounds do not match num_params");
    }

    Evaluator eval(problem);
    std::vector<double> x = std::move(x0);
    project(problem, x);
    Eigen::VectorXd r = eval.residuals(x);
    double cost = r.squaredNorm();
    double lambda = options.initial_damping;

    LeastSquaresResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (cost <= options.cost_floor) {
            result.converged = true;
            break;
        }
        Eigen::MatrixXd jac = jacobian(eval, x, options.diff_step);
        Eigen::VectorXd grad = jac.transpose() * r;
        // Parameters held at a bound by a gradient pointing outward leave the step.
        for (int k = 0; k < problem.num_params; ++k) {
            bool at_lower = !problem.lower.empty() && x[k] <= problem.lower[k] && grad[k] > 0.0;
            bool at_upper = !problem.upper.empty() && x[k] >= problem.upper[k] && grad[k] < 0.0;
            if (at_lower || at_upper) {
                jac.col(k).setZero();
                grad[k] = 0.0;
            }
        }
        Eigen::VectorXd scale = jac.colwise().squaredNorm().transpose().cwiseMax(1e-12);
        const int m = problem.num_residuals;
        const int np = problem.num_params;

        bool improved = false;
        bool tiny_step = false;
        while (lambda < 1e16) {
            // Damped step as the least-squares solution of [J; sqrt(lambda D)] s = [-r; 0].
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + np, np);
            a.topRows(m) = jac;
            a.bottomRows(np).diagonal() = (lambda * scale).cwiseSqrt();
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + np);
            rhs.head(m) = -r;
            Eigen::VectorXd step = a.colPivHouseholderQr().solve(rhs);
            std::vector<double> trial = x;
            for (int k = 0; k < problem.num_params; ++k) {
                trial[k] += step[k];
            }
            project(problem, trial);

            double step_norm = 0.0;
            double x_norm = 0.0;
            for (int k = 0; k < problem.num_params; ++k) {
                step_norm += (trial[k] - x[k]) * (trial[k] - x[k]);
                x_norm += x[k] * x[k];
            }
            step_norm = std::sqrt(step_norm);
            x_norm = std::sqrt(x_norm);

            Eigen::VectorXd r_trial = eval.residuals(trial);
            double trial_cost = r_trial.squaredNorm();
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                double reduction = (cost - trial_cost) / cost;
                x = std::move(trial);
                r = std::move(r_trial);
                cost = trial_cost;
                lambda = std::max(lambda / 3.0, 1e-15);
                improved = true;
                if (reduction < options.ftol || step_norm <= options.xtol * (x_norm + options.xtol)) {
                    tiny_step = true;
                }
                break;
            }
            if (step_norm <= options.xtol * (x_norm + options.xtol)) {
                tiny_step = true;
                break;
            }
            lambda *= 4.0;
        }
        if (tiny_step || !improved) {
            // No further decrease is possible at working precision.
            result.converged = true;
            ++iter;
            break;
        }
    }
    result.x = std::move(x);
    result.cost = cost;
    result.iterations = iter;
    return result;
}

}  // namespace cafe
