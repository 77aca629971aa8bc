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

#ifndef CAFE_SWEEP_H
#define CAFE_SWEEP_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cafe/analysis.h"
#include "cafe/channels.h"
#include "cafe/irb.h"
#include "cafe/unitaries.h"

namespace cafe {

enum class NoiseKind {
    Depolarizing,
    Damping,
};

const char *noise_kind_name(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string &name);

struct SweepDistributions {
    /// p_depol ~ U(0, p_depol_max).
    double p_depol_max = 0.05;
    /// Each fSim angle ~ N(0, angle_std^2).
    double angle_std = 0.05;
    /// Total decay and phase-flip probabilities ~ |N(0, damping_std^2)|.
    double damping_std = 0.03;
    /// Per-qubit split ratio ~ N(split_mean, split_std^2), clamped to [0, 1].
    double split_mean = 0.5;
    double split_std = 0.1;
};

struct SweepSpec {
    NoiseKind kind = NoiseKind::Depolarizing;
    int num_gates = 200;
    /// nullopt is exact probability evaluation.
    std::optional<int> shots = 2000;
    std::vector<int> depths{0, 2, 4, 6, 8};
    uint64_t seed = 0;
    SweepDistributions distributions;
    /// Zero every sampled parameter.
    bool force_noiseless = false;
    /// Preparation and measurement CZs carry the gate's incoherent noise.
    SpamGate spam_gate = SpamGate::Incoherent;
    int threads = 1;

    void validate() const;
};

struct SampledGate {
    FsimParams angles;
    double p_depol = 0.0;
    /// Qubit 1 first; zero for depolarizing gates.
    std::array<QubitDamping, 2> damping{};
    /// Totals before splitting.
    double p_decay_total = 0.0;
    double p_phaseflip_total = 0.0;

    CMatrix unitary() const;
    /// Incoherent part applied after the unitary.
    KrausChannel noise() const;
    /// Unitary followed by the incoherent part.
    KrausChannel channel() const;
};

/// Deterministic in (spec.seed, index); the five angles are drawn first for both kinds.
SampledGate sample_gate(const SweepSpec &spec, int index);

/// Average-gate-fidelity ground truth against CZ.
struct BudgetTruth {
    double infidelity = 0.0;
    double eps_incoh = 0.0;
    double eps_coh = 0.0;
};

BudgetTruth budget_truth(const SampledGate &gate);

struct SweepRow {
    int index = 0;
    SampledGate gate;
    BudgetTruth truth;
    ErrorBudget estimate;
    double err_infidelity = 0.0;
    double err_incoh = 0.0;
    double err_coh = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    double mae_infidelity = 0.0;
    double mae_incoh = 0.0;
    double mae_coh = 0.0;
    int num_unconverged = 0;
};

/// CAFE budget of a single sampled gate.
ErrorBudget cafe_budget(const SampledGate &gate, const SweepSpec &spec, uint64_t seed);

SweepResult run_sweep(const SweepSpec &spec);

struct CompareSpec {
    int num_gates = 100;
    NoiseKind kind = NoiseKind::Damping;
    uint64_t seed = 0;
    std::optional<int> shots = 2000;
    std::vector<int> cafe_depths{0, 2, 4, 6, 8};
    IrbConfig irb;
    SweepDistributions distributions;
    SpamGate spam_gate = SpamGate::Incoherent;
    int threads = 1;
};

struct CompareRow {
    int index = 0;
    double truth = 0.0;
    double cafe = 0.0;
    double irb = 0.0;
    bool cafe_converged = true;
    bool irb_converged = true;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    double mae_cafe = 0.0;
    double mae_irb = 0.0;
    /// Distinct circuits: states x depths for CAFE, circuits x depths x 2 for IRB.
    int cafe_circuits = 0;
    int irb_circuits = 0;
};

CompareResult run_irb_comparison(const CompareSpec &spec);

}  // namespace cafe

#endif
