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

#include "cafe/clifford.h"

#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace cafe {

namespace {

constexpr int kClassA = 576;
constexpr int kClassB = 5184;
constexpr int kClassC = 5184;

CMatrix phase_canonical(const CMatrix &u) {
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        Complex v = u.data()[k];
        if (std::abs(v) > 1e-9) {
            return u * (std::abs(v) / v);
        }
    }
    return u;
}

std::vector<CMatrix> build_c1() {
    std::vector<CMatrix> out{CMatrix::Identity(2, 2)};
    std::deque<CMatrix> frontier{out.front()};
    const CMatrix gens[] = {gates::h(), gates::s()};
    while (!frontier.empty()) {
        CMatrix u = frontier.front();
        frontier.pop_front();
        for (const auto &g : gens) {
            CMatrix v = phase_canonical(g * u);
            bool seen = false;
            for (const auto &w : out) {
                if (max_abs(v - w) < 1e-9) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                out.push_back(v);
                frontier.push_back(v);
            }
        }
    }
    return out;
}

/// exp(-i pi/3 (X+Y+Z)/sqrt3): cycles X -> Y -> Z -> X.
std::array<CMatrix, 3> build_s1() {
    CMatrix n = (gates::x() + gates::y() + gates::z()) / std::sqrt(3.0);
    double a = M_PI / 3.0;
    CMatrix r = std::cos(a) * CMatrix::Identity(2, 2) - Complex(0.0, std::sin(a)) * n;
    return {CMatrix::Identity(2, 2), r, r * r};
}

const std::array<CMatrix, 3> &s1() {
    static const std::array<CMatrix, 3> table = build_s1();
    return table;
}

const std::array<CMatrix, 16> &paulis2() {
    static const std::array<CMatrix, 16> table = [] {
        std::array<CMatrix, 16> t;
        for (int k = 0; k < 16; ++k) {
            t[k] = gates::pauli_string(k, 2);
        }
        return t;
    }();
    return table;
}

/// Images of XI, ZI, IX, IZ packed as 5 bits each (Pauli index, sign).
std::optional<uint32_t> tableau_key(const CMatrix &u, double tol) {
    const auto &p = paulis2();
    const int gens[] = {4, 12, 1, 3};
    uint32_t key = 0;
    for (int g : gens) {
        CMatrix image = u * p[g] * u.adjoint();
        int found = -1;
        bool negative = false;
        for (int k = 0; k < 16; ++k) {
            Complex c = (p[k] * image).trace() / 4.0;
            if (std::abs(c - 1.0) < tol) {
                found = k;
                break;
            }
            if (std::abs(c + 1.0) < tol) {
                found = k;
                negative = true;
                break;
            }
        }
        if (found < 0) {
            return std::nullopt;
        }
        key = (key << 5) | (static_cast<uint32_t>(found) << 1) | (negative ? 1u : 0u);
    }
    return key;
}

const std::unordered_map<uint32_t, int> &index_table() {
    static const std::unordered_map<uint32_t, int> table = [] {
        std::unordered_map<uint32_t, int> t;
        t.reserve(kNumCliffords2q);
        for (int i = 0; i < kNumCliffords2q; ++i) {
            auto key = tableau_key(clifford_element(i).unitary, 1e-8);
            if (!key || !t.emplace(*key, i).second) {
                throw std::logic_error("clifford table: enumeration is not a bijection");
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

const std::vector<CMatrix> &single_qubit_cliffords() {
    static const std::vector<CMatrix> table = build_c1();
    return table;
}

CliffordElement clifford_element(int index) {
    if (index < 0 || index >= kNumCliffords2q) {
        throw std::out_of_range("clifford_element: index out of range");
    }
    const auto &c1 = single_qubit_cliffords();
    const auto &s = s1();
    const CMatrix h = gates::h();
    const CMatrix cz = gates::cz();
    const CMatrix hh = kron(h, h);

    CliffordElement e;
    e.index = index;
    int r = index;
    if (r < kClassA) {
        e.cls = CliffordClass::SingleQubit;
    } else if ((r -= kClassA) < kClassB) {
        e.cls = CliffordClass::CnotLike;
    } else if ((r -= kClassB) < kClassC) {
        e.cls = CliffordClass::IswapLike;
    } else {
        r -= kClassC;
        e.cls = CliffordClass::SwapLike;
    }
    int s_pair = 0;
    if (e.cls == CliffordClass::CnotLike || e.cls == CliffordClass::IswapLike) {
        s_pair = r % 9;
        r /= 9;
    }
    const CMatrix &a = c1[r / 24];
    const CMatrix &b = c1[r % 24];
    const CMatrix &sa = s[s_pair / 3];
    const CMatrix &sb = s[s_pair % 3];

    CMatrix front = kron(a, b);
    e.compiled.push_back(Layer2q::local(a, b));
    switch (e.cls) {
        case CliffordClass::SingleQubit:
            e.unitary = front;
            break;
        case CliffordClass::CnotLike:
            e.unitary = kron(sa, sb) * cz * front;
            e.compiled.push_back(Layer2q::entangler());
            e.compiled.push_back(Layer2q::local(sa, sb));
            break;
        case CliffordClass::IswapLike:
            e.unitary = kron(sa, sb) * cz * hh * cz * front;
            e.compiled.push_back(Layer2q::entangler());
            e.compiled.push_back(Layer2q::local(h, h));
            e.compiled.push_back(Layer2q::entangler());
            e.compiled.push_back(Layer2q::local(sa, sb));
            break;
        case CliffordClass::SwapLike:
            e.unitary = cz * hh * cz * hh * cz * front;
            e.compiled.push_back(Layer2q::entangler());
            e.compiled.push_back(Layer2q::local(h, h));
            e.compiled.push_back(Layer2q::entangler());
            e.compiled.push_back(Layer2q::local(h, h));
            e.compiled.push_back(Layer2q::entangler());
            break;
    }
    e.cz_count = count_entanglers(e.compiled);
    return e;
}

int clifford_index(const CMatrix &u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw std::invalid_argument("clifford_index: expected a 4x4 unitary");
    }
    auto key = tableau_key(u, 1e-8);
    if (!key) {
        throw std::invalid_argument("clifford_index: matrix is not a Clifford");
    }
    const auto &table = index_table();
    auto it = table.find(*key);
    if (it == table.end()) {
        throw std::invalid_argument("clifford_index: tableau not in the group");
    }
    return it->second;
}

CliffordElement sample_clifford(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(0, kNumCliffords2q - 1);
    return clifford_element(pick(rng));
}

CliffordElement clifford_inverse(const CMatrix &u) {
    return clifford_element(clifford_index(u.adjoint()));
}

bool maps_paulis_to_paulis(const CMatrix &u, double tol) {
    return u.rows() == 4 && tableau_key(u, tol).has_value();
}

}  // namespace cafe
