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

#ifndef CAFE_IRB_H
#define CAFE_IRB_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cafe/channels.h"
#include "cafe/clifford.h"

namespace cafe {

struct IrbConfig {
    std::vector<int> depths{5, 10, 15, 20, 25, 30, 35};
    int num_circuits = 20;
    /// nullopt evaluates exact survival probabilities.
    std::optional<int> shots = 2000;
    uint64_t seed = 0;
    /// Two-qubit channel applied after every single-qubit Clifford layer.
    std::optional<KrausChannel> single_qubit_noise;
    int threads = 1;

    void validate() const;
};

/// A * p^n + B.
struct DecayFit {
    double a = 0.0;
    double b = 0.25;
    double p = 1.0;
    double rms = 0.0;
    bool converged = true;
};

struct RbResult {
    std::vector<int> depths;
    std::vector<double> ref_survival;
    std::vector<double> int_survival;
    DecayFit ref;
    DecayFit interleaved;
    /// 1 - (d - 1)(1 - p_int / p_ref) / d.
    double f_hat = 1.0;
    bool converged = true;
};

/// Fits A p^n + B with B started at 1/4.
DecayFit fit_decay(std::span<const int> depths, std::span<const double> survival);

/// Interleaved RB of a noisy CZ. Every CZ inside the compiled Cliffords and every
/// interleaved gate is implemented by `noisy_cz`.
RbResult run_irb(const KrausChannel &noisy_cz, const IrbConfig &cfg);

/// Survival of one sequence: `cliffords` in order, an optional interleaved CZ after
/// each, then the exact inverse.
double rb_sequence_survival(const std::vector<int> &cliffords, bool interleave, const KrausChannel &noisy_cz,
                            const std::optional<KrausChannel> &single_qubit_noise);

/// Median of |estimate - truth|. Throws std::invalid_argument on empty or mismatched input.
double mae(std::span<const double> estimates, std::span<const double> truths);

}  // namespace cafe

#endif
