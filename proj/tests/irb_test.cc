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

#include <random>

#include "gtest/gtest.h"
#include "cafe/channels.h"
#include "cafe/unitaries.h"

namespace cafe {
namespace {

IrbConfig exact_irb() {
    IrbConfig cfg;
    cfg.shots = std::nullopt;
    cfg.seed = 3;
    return cfg;
}

TEST(irb_config, defaults) {
    IrbConfig cfg;
    EXPECT_EQ(cfg.depths, (std::vector<int>{5, 10, 15, 20, 25, 30, 35}));
    EXPECT_EQ(cfg.num_circuits, 20);
    EXPECT_EQ(cfg.shots, 2000);
    cfg.depths = {0, 5};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(rb_sequence_survival, noiseless_is_one) {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> pick(0, kNumCliffords2q - 1);
    for (int len : {1, 5, 20}) {
        std::vector<int> seq;
        for (int k = 0; k < len; ++k) {
            seq.push_back(pick(rng));
        }
        for (bool interleave : {false, true}) {
            EXPECT_NEAR(rb_sequence_survival(seq, interleave, unitary_channel(gates::cz()), std::nullopt), 1.0, 1e-12);
        }
    }
}

TEST(run_irb, noiseless) {
    RbResult r = run_irb(unitary_channel(gates::cz()), exact_irb());
    EXPECT_NEAR(r.ref.p, 1.0, 1e-9);
    EXPECT_NEAR(r.interleaved.p, 1.0, 1e-9);
    EXPECT_NEAR(r.f_hat, 1.0, 1e-9);
    for (double s : r.ref_survival) {
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(run_irb, depolarized_cz_matches_truth) {
    for (double p : {0.01, 0.03}) {
        KrausChannel noisy = compose(unitary_channel(gates::cz()), depolarizing(p, 4));
        RbResult r = run_irb(noisy, exact_irb());
        double truth = avg_gate_fidelity(noisy, gates::cz());
        EXPECT_NEAR(r.f_hat, truth, 2e-3) << p;
        EXPECT_GT(r.ref.p, 0.0);
        EXPECT_LE(r.ref.p, 1.0);
        for (double s : r.int_survival) {
            EXPECT_GE(s, 0.0);
            EXPECT_LE(s, 1.0);
        }
    }
}

TEST(run_irb, seeded_and_sampled) {
    KrausChannel noisy = compose(unitary_channel(gates::cz()), depolarizing(0.02, 4));
    IrbConfig cfg;
    cfg.depths = {5, 10, 15};
    cfg.num_circuits = 4;
    cfg.seed = 5;
    RbResult a = run_irb(noisy, cfg);
    cfg.threads = 2;
    RbResult b = run_irb(noisy, cfg);
    EXPECT_EQ(a.ref_survival, b.ref_survival);
    EXPECT_EQ(a.int_survival, b.int_survival);
    EXPECT_EQ(a.f_hat, b.f_hat);
}

TEST(fit_decay, recovers_exponential) {
    std::vector<int> depths{5, 10, 15, 20, 25, 30, 35};
    std::vector<double> s;
    for (int n : depths) {
        s.push_back(0.7 * std::pow(0.97, n) + 0.26);
    }
    DecayFit f = fit_decay(depths, s);
    EXPECT_NEAR(f.a, 0.7, 1e-6);
    EXPECT_NEAR(f.b, 0.26, 1e-6);
    EXPECT_NEAR(f.p, 0.97, 1e-8);
    EXPECT_TRUE(f.converged);
}

TEST(mae, examples) {
    std::vector<double> t{0.1, 0.2, 0.3};
    EXPECT_EQ(mae(t, t), 0.0);
    std::vector<double> e{0.101, 0.198, 0.303};
    EXPECT_NEAR(mae(e, t), 0.002, 1e-12);
    EXPECT_THROW(mae(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(mae(std::vector<double>{1.0}, t), std::invalid_argument);
    std::vector<double> even_e{0.0, 0.0, 0.0, 0.0};
    std::vector<double> even_t{0.001, 0.002, 0.003, 0.004};
    EXPECT_NEAR(mae(even_e, even_t), 0.0025, 1e-15);
}

}  // namespace
}  // namespace cafe
