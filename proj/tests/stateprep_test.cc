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

#include "cafe/stateprep.h"

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"
#include "cafe/unitaries.h"

namespace cafe {
namespace {

CVector basis(int i) {
    CVector v = CVector::Zero(4);
    v[i] = 1.0;
    return v;
}

CVector bell() {
    CVector v = CVector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    return v;
}

double roundtrip_fidelity(const CVector &target) {
    return std::norm(target.dot(prep_with_cz(target).apply(basis(0))));
}

TEST(prep_with_cz, product_state) {
    PrepCircuit c = prep_with_cz(basis(1));
    EXPECT_NEAR(c.singular_values[0], 1.0, 1e-14);
    EXPECT_NEAR(c.alpha, 0.0, 1e-7);
    EXPECT_EQ(c.entangler_count(), 1);
    EXPECT_GE(roundtrip_fidelity(basis(1)), 1.0 - 1e-12);
}

TEST(prep_with_cz, bell_state) {
    PrepCircuit c = prep_with_cz(bell());
    Svd2 oracle = svd_2x2(amplitude_matrix(bell()));
    EXPECT_NEAR(c.singular_values[0], oracle.s[0], 1e-14);
    EXPECT_NEAR(c.singular_values[0], 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(c.alpha, M_PI / 2.0, 1e-12);
    EXPECT_GE(roundtrip_fidelity(bell()), 1.0 - 1e-12);
}

TEST(prep_with_cz, haar_random_roundtrip) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 1000; ++t) {
        CVector target = testing::random_state(4, rng);
        PrepCircuit c = prep_with_cz(target);
        EXPECT_EQ(c.entangler_count(), 1);
        EXPECT_GE(c.alpha, -1e-12);
        EXPECT_LE(c.alpha, M_PI / 2.0 + 1e-12);
        EXPECT_GE(c.singular_values[0], 1.0 / std::sqrt(2.0) - 1e-12);
        // Density-matrix evolution of |00><00| through the compiled layers.
        CMatrix rho = testing::ket_bra(4, 0);
        for (const auto &layer : c.layers) {
            CMatrix u = layer.unitary();
            rho = u * rho * u.adjoint();
        }
        double fidelity = (target.adjoint() * rho * target)(0, 0).real();
        EXPECT_LE(1.0 - fidelity, 1e-10);
    }
}

TEST(prep_with_cz, rejects_bad_input) {
    EXPECT_THROW(prep_with_cz(2.0 * basis(0)), std::invalid_argument);
    EXPECT_THROW(prep_with_cz(CVector::Ones(2) / std::sqrt(2.0)), std::invalid_argument);
}

TEST(measure_gadget, examples) {
    EXPECT_NEAR(std::norm(measure_gadget(basis(0)).apply(basis(0))[0]), 1.0, 1e-12);
    EXPECT_GE(std::norm(measure_gadget(bell()).apply(bell())[0]), 1.0 - 1e-10);
    EXPECT_NEAR(std::norm(measure_gadget(bell()).apply(basis(0))[0]), 0.5, 1e-12);
}

TEST(measure_gadget, is_adjoint_of_prep) {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 50; ++t) {
        CVector target = testing::random_state(4, rng);
        PrepCircuit prep = prep_with_cz(target);
        PrepCircuit gadget = measure_gadget(target);
        EXPECT_TRUE(gadget.inverted);
        EXPECT_EQ(gadget.entangler_count(), 1);
        EXPECT_LE(max_abs(gadget.unitary() - prep.unitary().adjoint()), 1e-12);
    }
}

}  // namespace
}  // namespace cafe
