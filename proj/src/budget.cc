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
#include <stdexcept>
#include <type_traits>

#include "cafe/analysis.h"

namespace cafe {

namespace {

/// One minus the SPAM-normalized n = 1 fidelity, clamped to [0, 1].
double infidelity(double f1, double eps_spam) {
    return std::clamp(1.0 - f1 / (1.0 - eps_spam), 0.0, 1.0);
}

}  // namespace

ErrorBudget budget(const ModelParams &params) {
    ErrorBudget out;
    out.params = params;
    std::visit(
        [&out](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            double s = p.eps_spam;
            if (!(s < 1.0)) {
                throw std::invalid_argument("budget: eps_spam must be below 1");
            }
            out.eps_spam = s;
            if constexpr (std::is_same_v<T, CzModelParams>) {
                CzModelParams incoherent{0.0, 0.0, 0.0, p.p_depol, s};
                CzModelParams coherent = p;
                coherent.p_depol = 0.0;
                out.total_infidelity = infidelity(model_cz(1, p), s);
                out.eps_incoh = infidelity(model_cz(1, incoherent), s);
                out.eps_coh = infidelity(model_cz(1, coherent), s);
            } else if constexpr (std::is_same_v<T, OneQubitParams>) {
                out.total_infidelity = infidelity(model_1q(1, p.dmu, p.p_depol, s), s);
                out.eps_incoh = infidelity(model_1q(1, 0.0, p.p_depol, s), s);
                out.eps_coh = infidelity(model_1q(1, p.dmu, 0.0, s), s);
            } else if constexpr (std::is_same_v<T, QuadParams>) {
                out.total_infidelity = infidelity(model_quadratic(1, s, p.eps_lin, p.eps_quad), s);
                out.eps_incoh = infidelity(model_quadratic(1, s, p.eps_lin, 0.0), s);
                out.eps_coh = infidelity(model_quadratic(1, s, 0.0, p.eps_quad), s);
            } else {
                out.total_infidelity = infidelity(model_general(1, p.u_tilde, p.u_ref, p.p_depol, s), s);
                out.eps_incoh = infidelity(model_general(1, p.u_ref, p.u_ref, p.p_depol, s), s);
                out.eps_coh = infidelity(model_general(1, p.u_tilde, p.u_ref, 0.0, s), s);
            }
        },
        params);
    return out;
}

ErrorBudget budget(const FitResult &fitted) {
    ErrorBudget out = budget(fitted.params);
    out.residual = fitted.rms;
    out.converged = fitted.converged;
    out.depths = fitted.depths;
    return out;
}

}  // namespace cafe
