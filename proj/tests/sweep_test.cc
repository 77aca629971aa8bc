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

#include "cafe/sweep.h"

#include <cmath>

#include "gtest/gtest.h"
#include "cafe/unitaries.h"

namespace cafe {
namespace {

TEST(sample_gate, deterministic_per_index) {
    SweepSpec spec;
    spec.seed = 4;
    for (NoiseKind kind : {NoiseKind::Depolarizing, NoiseKind::Damping}) {
        spec.kind = kind;
        SampledGate a = sample_gate(spec, 17);
        SampledGate b = sample_gate(spec, 17);
        SampledGate c = sample_gate(spec, 18);
        EXPECT_EQ(a.angles.theta, b.angles.theta);
        EXPECT_EQ(a.angles.phi, b.angles.phi);
        EXPECT_EQ(a.p_depol, b.p_depol);
        EXPECT_EQ(a.damping[1].p_decay, b.damping[1].p_decay);
        EXPECT_NE(a.angles.theta, c.angles.theta);
    }
}

TEST(sample_gate, depolarizing_distribution) {
    SweepSpec spec;
    spec.seed = 5;
    const int draws = 10000;
    double sum_p = 0.0, sum_a = 0.0, sum_a2 = 0.0;
    int angle_count = 0;
    for (int k = 0; k < draws; ++k) {
        SampledGate g = sample_gate(spec, k);
        EXPECT_GE(g.p_depol, 0.0);
        EXPECT_LE(g.p_depol, 0.05);
        sum_p += g.p_depol;
        for (double a : {g.angles.theta, g.angles.zeta, g.angles.chi, g.angles.gamma, g.angles.phi}) {
            sum_a += a;
            sum_a2 += a * a;
            ++angle_count;
        }
    }
    double mean_p = sum_p / draws;
    double sigma_mean_p = 0.05 / std::sqrt(12.0 * draws);
    EXPECT_LE(std::abs(mean_p - 0.025), 3.0 * sigma_mean_p);
    double mean_a = sum_a / angle_count;
    double std_a = std::sqrt(sum_a2 / angle_count - mean_a * mean_a);
    // The sample standard deviation of a normal has standard error sigma / sqrt(2N).
    EXPECT_LE(std::abs(std_a - 0.05), 3.0 * 0.05 / std::sqrt(2.0 * angle_count));
}

TEST(sample_gate, damping_split_preserves_totals) {
    SweepSpec spec;
    spec.kind = NoiseKind::Damping;
    spec.seed = 6;
    for (int k = 0; k < 1000; ++k) {
        SampledGate g = sample_gate(spec, k);
        EXPECT_EQ(g.p_depol, 0.0);
        EXPECT_NEAR(g.damping[0].p_decay + g.damping[1].p_decay, g.p_decay_total, 1e-12);
        EXPECT_NEAR(g.damping[0].p_phaseflip + g.damping[1].p_phaseflip, g.p_phaseflip_total, 1e-12);
        for (const auto &q : g.damping) {
            EXPECT_GE(q.p_decay, 0.0);
            EXPECT_GE(q.p_phaseflip, 0.0);
        }
    }
}

TEST(budget_truth, consistency) {
    SweepSpec spec;
    spec.seed = 7;
    for (NoiseKind kind : {NoiseKind::Depolarizing, NoiseKind::Damping}) {
        spec.kind = kind;
        for (int k = 0; k < 10; ++k) {
            SampledGate g = sample_gate(spec, k);
            BudgetTruth t = budget_truth(g);
            EXPECT_NEAR(t.eps_coh, 1.0 - avg_gate_fidelity(unitary_channel(fsim(g.angles)), gates::cz()), 1e-12);
            EXPECT_NEAR(t.infidelity, 1.0 - avg_gate_fidelity(g.channel(), gates::cz()), 1e-12);
            EXPECT_NEAR(t.eps_incoh,
                        1.0 - avg_gate_fidelity(compose(unitary_channel(gates::cz()), g.noise()), gates::cz()), 1e-12);
        }
    }
}

TEST(run_sweep, noiseless_spec_has_zero_error) {
    SweepSpec spec;
    spec.num_gates = 3;
    spec.force_noiseless = true;
    SweepResult r = run_sweep(spec);
    ASSERT_EQ(r.rows.size(), 3u);
    for (const auto &row : r.rows) {
        EXPECT_NEAR(row.estimate.total_infidelity, 0.0, 1e-6);
        EXPECT_NEAR(row.estimate.eps_incoh, 0.0, 1e-6);
        EXPECT_NEAR(row.estimate.eps_coh, 0.0, 1e-6);
    }
}

TEST(run_sweep, rows_and_flags) {
    SweepSpec spec;
    spec.num_gates = 6;
    spec.seed = 8;
    spec.shots = std::nullopt;
    SweepResult r = run_sweep(spec);
    ASSERT_EQ(r.rows.size(), 6u);
    for (size_t k = 0; k < r.rows.size(); ++k) {
        EXPECT_EQ(r.rows[k].index, static_cast<int>(k));
        EXPECT_NEAR(r.rows[k].err_infidelity, std::abs(r.rows[k].estimate.total_infidelity - r.rows[k].truth.infidelity),
                    1e-15);
    }
    spec.threads = 3;
    SweepResult again = run_sweep(spec);
    EXPECT_EQ(r.mae_infidelity, again.mae_infidelity);
    EXPECT_EQ(r.mae_coh, again.mae_coh);
}

TEST(sweep_spec, validation_and_names) {
    SweepSpec spec;
    spec.num_gates = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    EXPECT_EQ(parse_noise_kind("damping"), NoiseKind::Damping);
    EXPECT_EQ(parse_noise_kind(noise_kind_name(NoiseKind::Depolarizing)), NoiseKind::Depolarizing);
    EXPECT_THROW(parse_noise_kind("thermal"), std::invalid_argument);
}

}  // namespace
}  // namespace cafe
