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

#include "cafe/irb.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cafe/least_squares.h"
#include "cafe/parallel.h"

namespace cafe {

void IrbConfig::validate() const {
    if (depths.empty()) {
        throw std::invalid_argument("irb: depths must not be empty");
    }
    for (size_t k = 0; k < depths.size(); ++k) {
        if (depths[k] < 1) {
            throw std::invalid_argument("irb: depths must be at least 1");
        }
        if (k > 0 && depths[k] <= depths[k - 1]) {
            throw std::invalid_argument("irb: depths must be strictly increasing");
        }
    }
    if (num_circuits < 1) {
        throw std::invalid_argument("irb: num_circuits must be positive");
    }
    if (shots && *shots < 1) {
        throw std::invalid_argument("irb: shots must be positive");
    }
    if (single_qubit_noise && single_qubit_noise->dim() != 4) {
        throw std::invalid_argument("irb: single-qubit noise must act on both qubits (dimension 4)");
    }
}

DecayFit fit_decay(std::span<const int> depths, std::span<const double> survival) {
    if (depths.size() != survival.size() || depths.size() < 3) {
        throw std::invalid_argument("fit_decay: need at least three matching points");
    }
    DecayFit out;
    if (std::all_of(survival.begin(), survival.end(), [&](double v) { return v == survival.front(); })) {
        out.a = survival.front() - out.b;
        return out;
    }
    // Log-slope of (survival - 1/4) seeds p.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (size_t k = 0; k < depths.size(); ++k) {
        double excess = survival[k] - 0.25;
        if (excess > 0.0) {
            double x = depths[k];
            double y = std::log(excess);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
    }
    double p0 = 0.99;
    double a0 = 0.75;
    if (count >= 2 && count * sxx - sx * sx > 0.0) {
        double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        double icpt = (sy - slope * sx) / count;
        p0 = std::clamp(std::exp(slope), 0.01, 1.0);
        a0 = std::clamp(std::exp(icpt), 0.0, 1.0);
    }

    LeastSquaresProblem problem;
    problem.num_params = 3;
    problem.num_residuals = static_cast<int>(depths.size());
    problem.residuals = [&](std::span<const double> x, std::span<double> r) {
        for (size_t k = 0; k < depths.size(); ++k) {
            r[k] = x[0] * std::pow(x[1], depths[k]) + x[2] - survival[k];
        }
    };
    problem.lower = {0.0, 0.0, 0.0};
    problem.upper = {1.0, 1.0, 1.0};
    LeastSquaresResult r = levenberg_marquardt(problem, {a0, p0, 0.25}, {});
    out.a = r.x[0];
    out.p = r.x[1];
    out.b = r.x[2];
    out.rms = std::sqrt(r.cost / depths.size());
    out.converged = r.converged;
    return out;
}

double rb_sequence_survival(const std::vector<int> &cliffords, bool interleave, const KrausChannel &noisy_cz,
                            const std::optional<KrausChannel> &single_qubit_noise) {
    const CMatrix cz = gates::cz();
    CMatrix ideal = CMatrix::Identity(4, 4);
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = 1.0;

    auto run_element = [&](const CliffordElement &e) {
        for (const auto &layer : e.compiled) {
            if (layer.kind == Layer2q::Kind::Cz) {
                rho = noisy_cz.apply(rho);
            } else {
                CMatrix u = layer.unitary();
                rho = u * rho * u.adjoint();
                if (single_qubit_noise) {
                    rho = single_qubit_noise->apply(rho);
                }
            }
        }
    };

    for (int index : cliffords) {
        CliffordElement e = clifford_element(index);
        run_element(e);
        ideal = e.unitary * ideal;
        if (interleave) {
            rho = noisy_cz.apply(rho);
            ideal = cz * ideal;
        }
    }
    run_element(clifford_inverse(ideal));
    return std::clamp(rho(0, 0).real(), 0.0, 1.0);
}

RbResult run_irb(const KrausChannel &noisy_cz, const IrbConfig &cfg) {
    cfg.validate();
    if (noisy_cz.dim() != 4) {
        throw std::invalid_argument("run_irb: the gate channel must be two-qubit");
    }
    const size_t num_depths = cfg.depths.size();
    const size_t per_curve = num_depths * cfg.num_circuits;
    std::vector<double> survival(2 * per_curve);

    parallel_for(survival.size(), cfg.threads, [&](size_t job) {
        size_t curve = job / per_curve;
        size_t depth_idx = (job % per_curve) / cfg.num_circuits;
        size_t circuit = job % cfg.num_circuits;
        std::mt19937_64 rng(derive_seed(cfg.seed, {curve, depth_idx, circuit}));
        std::uniform_int_distribution<int> pick(0, kNumCliffords2q - 1);
        std::vector<int> sequence(cfg.depths[depth_idx]);
        for (int &c : sequence) {
            c = pick(rng);
        }
        double p = rb_sequence_survival(sequence, curve == 1, noisy_cz, cfg.single_qubit_noise);
        if (cfg.shots) {
            std::binomial_distribution<int> draw(*cfg.shots, p);
            p = static_cast<double>(draw(rng)) / *cfg.shots;
        }
        survival[job] = p;
    });

    RbResult out;
    out.depths = cfg.depths;
    for (size_t curve = 0; curve < 2; ++curve) {
        auto &mean = curve == 0 ? out.ref_survival : out.int_survival;
        for (size_t d = 0; d < num_depths; ++d) {
            double sum = 0.0;
            for (int c = 0; c < cfg.num_circuits; ++c) {
                sum += survival[curve * per_curve + d * cfg.num_circuits + c];
            }
            mean.push_back(sum / cfg.num_circuits);
        }
    }
    out.ref = fit_decay(out.depths, out.ref_survival);
    out.interleaved = fit_decay(out.depths, out.int_survival);
    out.converged = out.ref.converged && out.interleaved.converged && out.ref.p > 0.0;
    double ratio = out.ref.p > 0.0 ? out.interleaved.p / out.ref.p : 0.0;
    const double d = 4.0;
    out.f_hat = 1.0 - (d - 1.0) * (1.0 - ratio) / d;
    return out;
}

double mae(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.empty() || estimates.size() != truths.size()) {
        throw std::invalid_argument("mae: inputs must be non-empty and of equal length");
    }
    std::vector<double> diffs(estimates.size());
    for (size_t k = 0; k < diffs.size(); ++k) {
        diffs[k] = std::abs(estimates[k] - truths[k]);
    }
    std::sort(diffs.begin(), diffs.end());
    size_t mid = diffs.size() / 2;
    return diffs.size() % 2 == 1 ? diffs[mid] : 0.5 * (diffs[mid - 1] + diffs[mid]);
}

}  // namespace cafe
