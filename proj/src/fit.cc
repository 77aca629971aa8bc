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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "cafe/analysis.h"
#include "cafe/least_squares.h"

namespace cafe {

namespace {

constexpr double kAngleBound = 0.5;
constexpr double kSpamBound = 0.5;

struct Curve {
    std::vector<int> n;
    std::vector<double> f;
};

double clamp_spam(double s) {
    return std::clamp(s, 0.0, kSpamBound);
}

/// Depolarizing start from the log-slope of (F_n - 1/d).
double initial_p(const Curve &c, double d) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (size_t k = 0; k < c.n.size(); ++k) {
        double excess = c.f[k] - 1.0 / d;
        if (excess <= 0.0) {
            continue;
        }
        double x = c.n[k];
        double y = std::log(excess);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double denom = count * sxx - sx * sx;
    if (count < 2 || denom <= 0.0) {
        return 0.0;
    }
    double slope = (count * sxy - sx * sy) / denom;
    return std::clamp(1.0 - std::exp(slope), 0.0, 0.99);
}

double initial_spam(const Curve &c) {
    for (size_t k = 0; k < c.n.size(); ++k) {
        if (c.n[k] == 0) {
            return clamp_spam(1.0 - c.f[k]);
        }
    }
    return 0.0;
}

bool all_equal(const std::vector<double> &f) {
    return std::all_of(f.begin(), f.end(), [&](double v) { return v == f.front(); });
}

struct Start {
    std::vector<double> x;
};

/// Runs LM from each start, then continues the lowest-cost run until it stops.
/// Ties keep the earlier start.
LeastSquaresResult best_of(const LeastSquaresProblem &problem, const std::vector<std::vector<double>> &starts,
                           const FitOptions &fit_options) {
    LeastSquaresOptions options;
    options.max_iterations = fit_options.max_iterations;
    LeastSquaresResult best;
    bool have = false;
    for (const auto &x0 : starts) {
        LeastSquaresResult r = levenberg_marquardt(problem, x0, options);
        if (!have || r.cost < best.cost) {
            best = std::move(r);
            have = true;
        }
    }
    if (!best.converged && fit_options.polish_iterations > 0) {
        options.max_iterations = fit_options.polish_iterations;
        int spent = best.iterations;
        best = levenberg_marquardt(problem, best.x, options);
        best.iterations += spent;
    }
    return best;
}

/// The CZ cost has a long curved valley along which plain LM crawls. Fix the angle that
/// dominates the weakest Jacobian direction, solve the other parameters, and line-minimize
/// the profiled cost over the fixed angle. Repeats while the cost keeps dropping.
LeastSquaresResult refine_profile(const LeastSquaresProblem &problem, LeastSquaresResult best, int num_angles) {
    const int np = problem.num_params;
    const int nr = problem.num_residuals;
    if (!problem.jacobian || nr < np || np < 2) {
        return best;
    }
    double width = 2e-3;
    for (int round = 0; round < 40 && best.cost > 1e-28; ++round) {
        std::vector<double> jac(static_cast<size_t>(nr) * np);
        problem.jacobian(best.x, jac);
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> j(jac.data(), nr, np);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
        Eigen::VectorXd weak = svd.matrixV().col(np - 1);
        int fixed = 0;
        for (int k = 1; k < num_angles; ++k) {
            if (std::abs(weak[k]) > std::abs(weak[fixed])) {
                fixed = k;
            }
        }

        LeastSquaresProblem inner;
        inner.num_params = np - 1;
        inner.num_residuals = nr;
        double value = 0.0;
        auto expand = [&](std::span<const double> y) {
            std::vector<double> x(np);
            for (int k = 0, m = 0; k < np; ++k) {
                x[k] = k == fixed ? value : y[m++];
            }
            return x;
        };
        inner.residuals = [&](std::span<const double> y, std::span<double> r) { problem.residuals(expand(y), r); };
        inner.jacobian = [&](std::span<const double> y, std::span<double> out) {
            std::vector<double> full(static_cast<size_t>(nr) * np);
            problem.jacobian(expand(y), full);
            for (int i = 0; i < nr; ++i) {
                for (int k = 0, m = 0; k < np; ++k) {
                    if (k != fixed) {
                        out[i * (np - 1) + m++] = full[i * np + k];
                    }
                }
            }
        };
        std::vector<double> y0;
        for (int k = 0; k < np; ++k) {
            if (k != fixed) {
                y0.push_back(best.x[k]);
                inner.lower.push_back(problem.lower[k]);
                inner.upper.push_back(problem.upper[k]);
            }
        }
        auto solve = [&](double t) {
            value = t;
            return levenberg_marquardt(inner, y0);
        };

        double center = best.x[fixed];
        double lo = std::max(center - width, problem.lower[fixed]);
        double hi = std::min(center + width, problem.upper[fixed]);
        auto [t, cost] = boost::math::tools::brent_find_minima([&](double t) { return solve(t).cost; }, lo, hi,
                                                              std::numeric_limits<double>::digits);
        if (!(cost < best.cost * (1.0 - 1e-9))) {
            break;
        }
        LeastSquaresResult r = solve(t);
        best.x = expand(r.x);
        best.cost = r.cost;
        if (std::abs(t - center) > 0.99 * width) {
            width *= 2.0;
        }
    }
    return best;
}

FitResult fit_cz(const Curve &c, const FitOptions &options) {
    FitResult out;
    out.model = ModelKind::Cz;
    if (all_equal(c.f)) {
        CzModelParams p;
        p.eps_spam = clamp_spam(1.0 - c.f.front());
        out.params = p;
        out.converged = true;
        return out;
    }
    LeastSquaresProblem problem;
    problem.num_params = 5;
    problem.num_residuals = static_cast<int>(c.n.size());
    problem.residuals = [&c](std::span<const double> x, std::span<double> r) {
        CzModelParams p{x[0], x[1], x[2], x[3], x[4]};
        for (size_t k = 0; k < c.n.size(); ++k) {
            r[k] = model_cz(c.n[k], p) - c.f[k];
        }
    };
    problem.jacobian = [&c](std::span<const double> x, std::span<double> jac) {
        for (size_t k = 0; k < c.n.size(); ++k) {
            double n = c.n[k];
            double q = 1.0 - x[3];
            Complex e1 = std::polar(1.0, -n * x[1]);
            Complex e2 = std::polar(1.0, -n * (2.0 * x[1] + x[2]));
            Complex sum = 1.0 + 2.0 * e1 * std::cos(n * x[0]) + e2;
            double qn = std::pow(q, n);
            // d|S|^2 = 2 Re(conj(S) dS).
            auto grad = [&](Complex ds) { return qn / 20.0 * 2.0 * std::real(std::conj(sum) * ds); };
            const Complex i(0.0, 1.0);
            double *row = &jac[k * 5];
            row[0] = grad(-2.0 * n * e1 * std::sin(n * x[0]));
            row[1] = grad(-2.0 * i * n * e1 * std::cos(n * x[0]) - 2.0 * i * n * e2);
            row[2] = grad(-i * n * e2);
            row[3] = n == 0.0 ? 0.0 : n * std::pow(q, n - 1.0) * (1.0 - std::norm(sum)) / 20.0;
            row[4] = -1.0;
        }
    };
    problem.lower = {-kAngleBound, -kAngleBound, -kAngleBound, 0.0, 0.0};
    problem.upper = {kAngleBound, kAngleBound, kAngleBound, 1.0, kSpamBound};

    double p0 = initial_p(c, 4.0);
    double s0 = initial_spam(c);
    std::vector<std::vector<double>> starts;
    const double grid[] = {0.0, 0.02, -0.02};
    for (double a : grid) {
        for (double b : grid) {
            for (double g : grid) {
                starts.push_back({a, b, g, p0, s0});
            }
        }
    }
    LeastSquaresResult best = best_of(problem, starts, options);
    if (best.converged) {
        best = refine_profile(problem, best, 3);
    }

    out.params = canonical_cz(CzModelParams{best.x[0], best.x[1], best.x[2], best.x[3], best.x[4]});
    out.rms = std::sqrt(best.cost / c.n.size());
    out.converged = best.converged;
    return out;
}

FitResult fit_1q(const Curve &c, const FitOptions &options) {
    FitResult out;
    out.model = ModelKind::OneQubit;
    if (all_equal(c.f)) {
        OneQubitParams p;
        p.eps_spam = clamp_spam(1.0 - c.f.front());
        out.params = p;
        out.converged = true;
        return out;
    }
    LeastSquaresProblem problem;
    problem.num_params = 3;
    problem.num_residuals = static_cast<int>(c.n.size());
    problem.residuals = [&c](std::span<const double> x, std::span<double> r) {
        for (size_t k = 0; k < c.n.size(); ++k) {
            r[k] = model_1q(c.n[k], x[0], x[1], x[2]) - c.f[k];
        }
    };
    problem.lower = {-kAngleBound, 0.0, 0.0};
    problem.upper = {kAngleBound, 1.0, kSpamBound};
    double p0 = initial_p(c, 2.0);
    double s0 = initial_spam(c);
    std::vector<std::vector<double>> starts;
    for (double mu : {0.0, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4}) {
        starts.push_back({mu, p0, s0});
    }
    LeastSquaresResult best = best_of(problem, starts, options);
    out.params = OneQubitParams{std::abs(best.x[0]), best.x[1], best.x[2]};
    out.rms = std::sqrt(best.cost / c.n.size());
    out.converged = best.converged;
    return out;
}

FitResult fit_general(const Curve &c, const FitOptions &options) {
    if (!options.u_tilde || !options.u_ref) {
        throw std::invalid_argument("fit: the general model needs u_tilde and u_ref");
    }
    FitResult out;
    out.model = ModelKind::General;
    const CMatrix &ut = *options.u_tilde;
    const CMatrix &ur = *options.u_ref;
    LeastSquaresProblem problem;
    problem.num_params = 2;
    problem.num_residuals = static_cast<int>(c.n.size());
    problem.residuals = [&](std::span<const double> x, std::span<double> r) {
        for (size_t k = 0; k < c.n.size(); ++k) {
            r[k] = model_general(c.n[k], ut, ur, x[0], x[1]) - c.f[k];
        }
    };
    problem.lower = {0.0, 0.0};
    problem.upper = {1.0, kSpamBound};
    double d = static_cast<double>(ur.rows());
    LeastSquaresResult best = best_of(problem, {{initial_p(c, d), initial_spam(c)}}, options);
    out.params = GeneralParams{ut, ur, best.x[0], best.x[1]};
    out.rms = std::sqrt(best.cost / c.n.size());
    out.converged = best.converged;
    return out;
}

FitResult fit_quadratic(const Curve &c) {
    // Linear in (eps_spam, eps_lin, eps_quad): solve 1 - F = s + lin n + quad n^2 directly.
    Eigen::MatrixXd a(c.n.size(), 3);
    Eigen::VectorXd b(c.n.size());
    for (size_t k = 0; k < c.n.size(); ++k) {
        double n = c.n[k];
        a(k, 0) = 1.0;
        a(k, 1) = n;
        a(k, 2) = n * n;
        b[k] = 1.0 - c.f[k];
    }
    Eigen::Vector3d x = a.colPivHouseholderQr().solve(b);
    FitResult out;
    out.model = ModelKind::Quadratic;
    out.params = QuadParams{x[0], x[1], x[2]};
    out.rms = std::sqrt((a * x - b).squaredNorm() / c.n.size());
    out.converged = std::isfinite(out.rms);
    return out;
}

int free_parameters(ModelKind kind) {
    switch (kind) {
        case ModelKind::Cz:
            return 5;
        case ModelKind::OneQubit:
        case ModelKind::Quadratic:
            return 3;
        case ModelKind::General:
            return 2;
    }
    return 5;
}

}  // namespace

const char *model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Cz:
            return "cz";
        case ModelKind::General:
            return "general";
        case ModelKind::OneQubit:
            return "oneq";
        case ModelKind::Quadratic:
            return "quad";
    }
    return "cz";
}

ModelKind parse_model(const std::string &name) {
    if (name == "cz") {
        return ModelKind::Cz;
    }
    if (name == "general") {
        return ModelKind::General;
    }
    if (name == "oneq") {
        return ModelKind::OneQubit;
    }
    if (name == "quad") {
        return ModelKind::Quadratic;
    }
    throw std::invalid_argument("unknown model '" + name + "' (expected cz, general, oneq or quad)");
}

FitResult fit(std::span<const int> depths, std::span<const double> fidelities, const FitOptions &options) {
    if (depths.size() != fidelities.size()) {
        throw std::invalid_argument("fit: depths and fidelities differ in length");
    }
    Curve c;
    for (size_t k = 0; k < depths.size(); ++k) {
        if (options.even_only && depths[k] % 2 != 0) {
            continue;
        }
        c.n.push_back(depths[k]);
        c.f.push_back(fidelities[k]);
    }
    if (static_cast<int>(c.n.size()) < free_parameters(options.model)) {
        throw std::invalid_argument(std::string("fit: the ") + model_name(options.model) + " model needs at least " +
                                    std::to_string(free_parameters(options.model)) + " depths");
    }
    FitResult out;
    switch (options.model) {
        case ModelKind::Cz:
            out = fit_cz(c, options);
            break;
        case ModelKind::OneQubit:
            out = fit_1q(c, options);
            break;
        case ModelKind::General:
            out = fit_general(c, options);
            break;
        case ModelKind::Quadratic:
            out = fit_quadratic(c);
            break;
    }
    out.depths = c.n;
    return out;
}

FitResult fit(const GroupDataset &data, const FitOptions &options) {
    std::vector<int> n;
    std::vector<double> f;
    for (const auto &point : data.points) {
        n.push_back(point.n);
        f.push_back(point.f_hat);
    }
    return fit(n, f, options);
}

}  // namespace cafe
