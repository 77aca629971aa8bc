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

#include "cafe/unitaries.h"

#include <random>

#include "gtest/gtest.h"

namespace cafe {
namespace {

constexpr Complex kI(0.0, 1.0);

TEST(fsim, zero_angles_is_cz) {
    EXPECT_LE(max_abs(fsim(FsimParams{}) - gates::cz()), 1e-15);
    CMatrix cz = CMatrix::Zero(4, 4);
    cz.diagonal() << 1.0, 1.0, 1.0, -1.0;
    EXPECT_EQ(gates::cz(), cz);
}

TEST(fsim, unitary_and_excitation_preserving) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.2, 3.2);
    for (int t = 0; t < 100; ++t) {
        CMatrix v = fsim(FsimParams{u(rng), u(rng), u(rng), u(rng), u(rng)});
        EXPECT_LE(max_abs(v.adjoint() * v - CMatrix::Identity(4, 4)), 1e-12);
        // Sectors: {|00>}, {|01>, |10>}, {|11>}.
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                auto sector = [](int k) { return k == 0 ? 0 : (k == 3 ? 2 : 1); };
                if (sector(r) != sector(c)) {
                    EXPECT_EQ(v(r, c), Complex(0.0)) << r << "," << c;
                }
            }
        }
    }
}

TEST(fsim_delta, matches_fsim_subfamily) {
    EXPECT_LE(max_abs(fsim_delta(FsimDelta{}) - gates::cz()), 1e-15);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        double a = u(rng), b = u(rng), c = u(rng);
        EXPECT_LE(max_abs(fsim_delta(FsimDelta{a, b, c}) - fsim(FsimParams{a, 0.0, 0.0, b, c})), 1e-12);
    }
}

TEST(fsim_delta, bottom_right_entry) {
    double b = 0.02, c = 0.05;
    CMatrix u = fsim_delta(FsimDelta{0.0, b, c});
    Complex expected = -std::exp(-kI * (c + 2.0 * b));
    EXPECT_LE(std::abs(u(3, 3) - expected), 1e-15);
}

TEST(x_delta, examples) {
    CMatrix x0 = x_delta(XDelta{0.0});
    CMatrix expected(2, 2);
    expected << 0.0, -kI, -kI, 0.0;
    EXPECT_LE(max_abs(x0 - expected), 1e-15);
    EXPECT_LE(max_abs(x_delta(XDelta{M_PI}) + gates::identity(2)), 1e-15);
    EXPECT_LE(max_abs(x0 - gates::rx(M_PI)), 1e-15);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 100; ++t) {
        EXPECT_TRUE(is_unitary(x_delta(XDelta{u(rng)})));
    }
}

TEST(gates, paulis_and_layers) {
    EXPECT_EQ(gates::pauli(0), gates::identity(2));
    EXPECT_EQ(gates::pauli(1), gates::x());
    EXPECT_EQ(gates::pauli(2), gates::y());
    EXPECT_EQ(gates::pauli(3), gates::z());
    EXPECT_EQ(gates::xx(), kron(gates::x(), gates::x()));
    std::vector<Layer2q> layers{Layer2q::local(gates::h(), gates::s()), Layer2q::entangler()};
    EXPECT_EQ(count_entanglers(layers), 1);
    CMatrix expected = gates::cz() * kron(gates::h(), gates::s());
    EXPECT_LE(max_abs(layers_unitary(layers) - expected), 1e-15);
}

}  // namespace
}  // namespace cafe
