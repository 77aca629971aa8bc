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

#include "cafe/twodesign.h"

#include "gtest/gtest.h"
#include "cafe/stateprep.h"

namespace cafe {
namespace {

double overlap2(const PureState &a, const PureState &b) {
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

TEST(sic_1q, tetrahedral_states) {
    StateEnsemble e = sic_1q();
    ASSERT_EQ(e.states.size(), 4u);
    EXPECT_EQ(e.num_qubits, 1);
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = i + 1; j < 4; ++j) {
            EXPECT_NEAR(overlap2(e.states[i], e.states[j]), 1.0 / 3.0, 1e-14);
        }
    }
    EXPECT_NEAR(frame_potential(e.states), 32.0 / 6.0, 1e-12);
    EXPECT_LE(verify_2design(e), 1e-12);
}

TEST(design_2q, sic_in_dimension_four) {
    const StateEnsemble &e = default_design_2q();
    ASSERT_EQ(e.states.size(), 16u);
    EXPECT_EQ(e.num_qubits, 2);
    for (size_t i = 0; i < 16; ++i) {
        for (size_t j = i + 1; j < 16; ++j) {
            EXPECT_NEAR(overlap2(e.states[i], e.states[j]), 0.2, 1e-8);
        }
    }
    EXPECT_NEAR(frame_potential(e.states), 25.6, 25.6 * 1e-6);
    EXPECT_LE(verify_2design(e), 1e-8);
    EXPECT_EQ(e.residual, verify_2design(e));
}

TEST(design_2q, every_state_needs_one_cz) {
    for (const auto &s : default_design_2q().states) {
        PrepCircuit c = prep_with_cz(s.amplitudes());
        EXPECT_EQ(c.entangler_count(), 1);
        CVector zero = CVector::Zero(4);
        zero[0] = 1.0;
        EXPECT_GE(std::norm(s.amplitudes().dot(c.apply(zero))), 1.0 - 1e-10);
    }
}

TEST(design_2q, deterministic_for_seed) {
    StateEnsemble a = design_2q(kDefaultDesignSeed);
    const StateEnsemble &b = default_design_2q();
    ASSERT_EQ(a.states.size(), b.states.size());
    for (size_t i = 0; i < a.states.size(); ++i) {
        EXPECT_EQ(a.states[i].amplitudes(), b.states[i].amplitudes());
    }
}

TEST(verify_2design, degenerate_ensemble_fails) {
    CVector zero = CVector::Zero(4);
    zero[0] = 1.0;
    std::vector<PureState> copies(16, PureState(zero));
    EXPECT_GT(verify_2design(copies), 0.1);
    EXPECT_THROW(make_ensemble(copies, "bad"), std::invalid_argument);
}

TEST(make_ensemble, accepts_a_valid_design) {
    StateEnsemble e = make_ensemble(sic_1q().states, "sic");
    EXPECT_EQ(e.num_qubits, 1);
    EXPECT_EQ(e.id, "sic");
}

}  // namespace
}  // namespace cafe
