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

#include "cafe/analysis.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace cafe {

double model_cz(int n, const CzModelParams &p) {
    if (n < 0) {
        throw std::invalid_argument("model_cz: n must be non-negative");
    }
    double k = n;
    Complex sum = 1.0 + 2.0 * std::polar(1.0, -k * p.dgamma) * std::cos(k * p.dtheta) +
                  std::polar(1.0, -k * (2.0 * p.dgamma + p.dphi));
    return 0.25 - p.eps_spam - std::pow(1.0 - p.p_depol, k) * (1.0 - std::norm(sum)) / 20.0;
}

CzModelParams canonical_cz(const CzModelParams &p) {
    const double phases[4] = {0.0, p.dgamma - p.dtheta, p.dgamma + p.dtheta, 2.0 * p.dgamma + p.dphi};
    CzModelParams best = p;
    double best_norm = std::numeric_limits<double>::infinity();
    for (int anchor = 0; anchor < 4; ++anchor) {
        for (int top = 0; top < 4; ++top) {
            if (top == anchor) {
                continue;
            }
            int pair[2];
            int m = 0;
            for (int k = 0; k < 4; ++k) {
                if (k != anchor && k != top) {
                    pair[m++] = k;
                }
            }
            for (double sign : {1.0, -1.0}) {
                double a = sign * (phases[pair[0]] - phases[anchor]);
                double b = sign * (phases[pair[1]] - phases[anchor]);
                double c = sign * (phases[top] - phases[anchor]);
                CzModelParams q = p;
                q.dgamma = 0.5 * (a + b);
                q.dtheta = 0.5 * std::abs(b - a);
                q.dphi = c - 2.0 * q.dgamma;
                double norm = q.dtheta * q.dtheta + q.dgamma * q.dgamma + q.dphi * q.dphi;
                auto key = [](const CzModelParams &x) { return std::tuple(x.dtheta, -x.dgamma, -x.dphi); };
                if (norm < best_norm - 1e-15 || (std::abs(norm - best_norm) <= 1e-15 && key(q) < key(best))) {
                    best = q;
                    best_norm = norm;
                }
            }
        }
    }
    return best;
}

double model_general(int n, const CMatrix &u_tilde, const CMatrix &u_ref, double p_depol, double eps_spam) {
    if (n < 0) {
        throw std::invalid_argument("model_general: n must be non-negative");
    }
    if (u_tilde.rows() != u_ref.rows() || u_tilde.cols() != u_ref.cols() || u_ref.rows() != u_ref.cols()) {
        throw std::invalid_argument("model_general: dimension mismatch");
    }
    const double d = static_cast<double>(u_ref.rows());
    CMatrix ref_n = CMatrix::Identity(u_ref.rows(), u_ref.cols());
    CMatrix tilde_n = ref_n;
    for (int k = 0; k < n; ++k) {
        ref_n = u_ref * ref_n;
        tilde_n = u_tilde * tilde_n;
    }
    double overlap = std::norm((ref_n.adjoint() * tilde_n).trace());
    double survive = std::pow(1.0 - p_depol, n);
    return survive * (d + overlap) / (d * (d + 1.0)) + (1.0 - survive) / d - eps_spam;
}

double model_1q(int n, double dmu, double p_depol, double eps_spam) {
    if (n < 0) {
        throw std::invalid_argument("model_1q: n must be non-negative");
    }
    double c = std::cos(0.5 * n * dmu);
    return 0.5 - eps_spam + std::pow(1.0 - p_depol, n) * (2.0 / 3.0 * c * c - 1.0 / 6.0);
}

double model_quadratic(int n, double eps_spam, double eps_lin, double eps_quad) {
    double k = n;
    return 1.0 - eps_spam - eps_lin * k - eps_quad * k * k;
}

QuadParams quadratic_coefficients(const CzModelParams &p) {
    QuadParams q;
    q.eps_spam = p.eps_spam;
    q.eps_lin = 0.75 * p.p_depol;
    q.eps_quad = (8.0 * (p.dtheta * p.dtheta + p.dgamma * p.dgamma + p.dgamma * p.dphi) + 3.0 * p.dphi * p.dphi) / 20.0;
    return q;
}

UnitarityRelations unitarity_relations(double p_depol, int d) {
    if (!(p_depol >= 0.0 && p_depol <= 1.0)) {
        throw std::invalid_argument("unitarity_relations: p_depol must lie in [0, 1]");
    }
    UnitarityRelations out;
    out.u = (1.0 - p_depol) * (1.0 - p_depol);
    double dd = d;
    out.lower_bound = (dd - 1.0) * (1.0 - std::sqrt(out.u)) / dd;
    // 1 - eps_incoh = 1/d + (d-1)(1-p)/d for the depolarizing channel.
    out.r = 1.0 - (1.0 / dd + (dd - 1.0) * (1.0 - p_depol) / dd);
    if (out.lower_bound > out.r + 1e-12) {
        throw std::logic_error("unitarity_relations: unitarity bound violated");
    }
    return out;
}

double evaluate(const ModelParams &params, int n) {
    return std::visit(
        [n](const auto &p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CzModelParams>) {
                return model_cz(n, p);
            } else if constexpr (std::is_same_v<T, OneQubitParams>) {
                return model_1q(n, p.dmu, p.p_depol, p.eps_spam);
            } else if constexpr (std::is_same_v<T, QuadParams>) {
                return model_quadratic(n, p.eps_spam, p.eps_lin, p.eps_quad);
            } else {
                return model_general(n, p.u_tilde, p.u_ref, p.p_depol, p.eps_spam);
            }
        },
        params);
}

}  // namespace cafe
