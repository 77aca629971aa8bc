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

#ifndef CAFE_ANALYSIS_H
#define CAFE_ANALYSIS_H

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cafe/protocol.h"
#include "cafe/qcore.h"

namespace cafe {

/// CZ cycle model parameters: miscalibration angles, depolarizing probability and SPAM offset.
struct CzModelParams {
    double dtheta = 0.0;
    double dgamma = 0.0;
    double dphi = 0.0;
    double p_depol = 0.0;
    double eps_spam = 0.0;
};

/// Single-qubit X(pi) model parameters.
struct OneQubitParams {
    double dmu = 0.0;
    double p_depol = 0.0;
    double eps_spam = 0.0;
};

/// F_n = 1 - eps_spam - eps_lin n - eps_quad n^2.
struct QuadParams {
    double eps_spam = 0.0;
    double eps_lin = 0.0;
    double eps_quad = 0.0;
};

/// General depolarizing model with a known implemented unitary and reference.
struct GeneralParams {
    CMatrix u_tilde;
    CMatrix u_ref;
    double p_depol = 0.0;
    double eps_spam = 0.0;
};

// ---- Closed-form fidelity models -------------------------------------------

/// F_n = 1/4 - eps_spam - (1-p)^n (1 - |1 + 2 e^{-in dgamma} cos(n dtheta) + e^{-in(2 dgamma + dphi)}|^2) / 20.
double model_cz(int n, const CzModelParams &p);

/// model_cz only sees the eigenphase set {0, dgamma - dtheta, dgamma + dtheta, 2 dgamma + dphi}
/// up to permutation, global shift and negation. Returns the smallest-norm angle triple
/// producing the same set, with dtheta >= 0; ties prefer positive dgamma.
CzModelParams canonical_cz(const CzModelParams &p);

/// F_n = (1-p)^n (d + |tr[(U^dagger)^n U~^n]|^2) / (d(d+1)) + (1 - (1-p)^n) / d - eps_spam.
double model_general(int n, const CMatrix &u_tilde, const CMatrix &u_ref, double p_depol, double eps_spam);

/// F_n = 1/2 - eps_spam + (1-p)^n ((2/3) cos^2(n dmu / 2) - 1/6).
double model_1q(int n, double dmu, double p_depol, double eps_spam);

double model_quadratic(int n, double eps_spam, double eps_lin, double eps_quad);

/// Small-angle expansion of model_cz: eps_lin = 3p/4 and
/// eps_quad = (8 (dtheta^2 + dgamma^2 + dgamma dphi) + 3 dphi^2) / 20.
QuadParams quadratic_coefficients(const CzModelParams &p);

struct UnitarityRelations {
    /// Unitarity of the depolarizing channel, (1 - p)^2.
    double u = 0.0;
    /// (d - 1)(1 - sqrt(u)) / d.
    double lower_bound = 0.0;
    /// Incoherent infidelity of the depolarizing channel.
    double r = 0.0;
};

/// Throws std::logic_error if the bound is violated by more than 1e-12.
UnitarityRelations unitarity_relations(double p_depol, int d = 4);

// ---- Fitting ---------------------------------------------------------------

enum class ModelKind {
    Cz,
    General,
    OneQubit,
    Quadratic,
};

const char *model_name(ModelKind kind);
/// Accepts "cz", "general", "oneq" and "quad"; throws std::invalid_argument otherwise.
ModelKind parse_model(const std::string &name);

struct FitOptions {
    ModelKind model = ModelKind::Cz;
    /// Ignore odd depths.
    bool even_only = true;
    /// Required for ModelKind::General.
    std::optional<CMatrix> u_tilde;
    std::optional<CMatrix> u_ref;
    /// Iteration cap per multi-start run.
    int max_iterations = 200;
    /// Further iterations for the best run when it has not stopped.
    int polish_iterations = 20000;
};

using ModelParams = std::variant<CzModelParams, OneQubitParams, QuadParams, GeneralParams>;

struct FitResult {
    ModelKind model = ModelKind::Cz;
    ModelParams params;
    /// Root-mean-square residual over the points used.
    double rms = 0.0;
    bool converged = false;
    std::vector<int> depths;
};

/// Least-squares fit of a fidelity curve. Throws std::invalid_argument when
/// fewer points than free parameters remain after depth filtering.
///
/// The CZ fit reports |dtheta| and fixes the joint sign of (dgamma, dphi) so
/// that dgamma >= 0, since the model is invariant under both flips. The
/// one-qubit fit reports |dmu|.
FitResult fit(std::span<const int> depths, std::span<const double> fidelities, const FitOptions &options);
FitResult fit(const GroupDataset &data, const FitOptions &options);

/// Model value at depth n for fitted parameters.
double evaluate(const ModelParams &params, int n);

// ---- Budgets ---------------------------------------------------------------

struct ErrorBudget {
    double total_infidelity = 0.0;
    double eps_incoh = 0.0;
    double eps_coh = 0.0;
    double eps_spam = 0.0;
    ModelParams params;
    double residual = 0.0;
    bool converged = true;
    std::vector<int> depths;
};

/// Evaluates the fitted model at n = 1 and normalizes by (1 - eps_spam):
/// total from the full model, eps_incoh with every coherent angle zeroed, and
/// eps_coh with p_depol zeroed. Throws std::invalid_argument if eps_spam >= 1.
ErrorBudget budget(const ModelParams &params);
ErrorBudget budget(const FitResult &fitted);

}  // namespace cafe

#endif
