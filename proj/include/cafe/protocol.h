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

#ifndef CAFE_PROTOCOL_H
#define CAFE_PROTOCOL_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cafe/channels.h"
#include "cafe/circuit.h"
#include "cafe/twodesign.h"

namespace cafe {

enum class Variant {
    Cafe,
    Decaf,
};

const char *variant_name(Variant v);

/// One layer of a cycle circuit: the implemented unitary followed by optional
/// incoherent noise, together with the ideal gate it is meant to realize.
struct CycleLayer {
    std::string label;
    CMatrix ideal;
    CMatrix actual;
    std::shared_ptr<const KrausChannel> noise;

    static CycleLayer make(std::string label, CMatrix ideal, CMatrix actual, std::optional<KrausChannel> noise = {});

    bool is_two_qubit() const {
        return ideal.rows() == 4;
    }
    /// Channel applying `actual` and then `noise`.
    KrausChannel channel() const;
};

/// Qubits characterized together; the cycle is repeated on them n times.
struct QubitGroup {
    std::string name;
    int num_qubits = 2;
    std::vector<CycleLayer> layers;
    /// Ideal gates appended after every repetition (dynamical decoupling).
    std::vector<CMatrix> interleave;
    /// Reference unitary of one cycle; defaults to the ideal layers followed by the interleave.
    std::optional<CMatrix> reference;

    int dim() const {
        return 1 << num_qubits;
    }
    CMatrix ideal_unitary() const;
    CMatrix reference_unitary() const;
    /// Throws std::invalid_argument on inconsistent dimensions or an empty cycle.
    void validate() const;
};

struct CycleSpec {
    std::vector<QubitGroup> groups;

    /// Decaf when any group carries interleaved gates.
    Variant variant() const;
};

enum class Inversion {
    /// Single-CZ measurement gadget of the predicted state (one-qubit groups use the exact inverse).
    Gadget,
    /// Ideal preparation and exact inverse unitary; no SPAM.
    Abstract,
};

enum class SpamGate {
    /// Ideal CZ.
    Ideal,
    /// Implemented unitary of the group's first two-qubit layer.
    Unitary,
    /// Full noisy channel of that layer.
    Channel,
    /// Ideal CZ followed by that layer's noise channel.
    Incoherent,
};

const char *spam_gate_name(SpamGate g);
SpamGate parse_spam_gate(const std::string &name);

struct RunConfig {
    std::vector<int> depths{0, 2, 4, 6, 8};
    /// Shots per circuit; nullopt is exact probability evaluation.
    std::optional<int> shots = 2000;
    uint64_t seed = 0;
    Inversion inversion = Inversion::Gadget;
    /// Gadget mode only: how the preparation and measurement CZs are implemented.
    SpamGate spam_gate = SpamGate::Ideal;
    /// Worker threads; 0 means hardware concurrency.
    int threads = 1;

    /// Depths must be sorted, distinct and non-negative; shots positive.
    void validate() const;
};

/// One executable CAFE circuit for (group, ensemble state, depth).
struct CafeCircuit {
    int group = 0;
    int state = 0;
    int depth = 0;
    Circuit circuit;
};

struct DepthPoint {
    int n = 0;
    double f_hat = 0.0;
    double sigma = 0.0;
    std::vector<double> state_probabilities;
    /// Odd depths are recorded but excluded from fits by default.
    bool excluded = false;
};

struct GroupDataset {
    std::string name;
    int num_qubits = 2;
    Variant variant = Variant::Cafe;
    std::vector<DepthPoint> points;
};

struct CafeDataset {
    std::vector<GroupDataset> groups;
    Variant variant = Variant::Cafe;
    std::vector<int> depths;
    std::optional<int> shots;
    uint64_t seed = 0;
    std::vector<std::string> ensemble_ids;
};

/// Circuits for every (state, depth) of one group, ordered state-major.
std::vector<CafeCircuit> build_cafe(
    const QubitGroup &group, int group_index, const RunConfig &cfg, const StateEnsemble &ensemble);

/// Circuits for every group with the default ensembles.
std::vector<CafeCircuit> build_cafe(const CycleSpec &cycle, const RunConfig &cfg);

/// Executes circuits and averages P(0...0) over the ensemble states.
CafeDataset run(const std::vector<CafeCircuit> &circuits, const CycleSpec &cycle, const RunConfig &cfg);

/// Builds and runs independent CAFE experiments on every group of the cycle.
CafeDataset run_parallel_groups(const CycleSpec &cycle, const RunConfig &cfg);

/// Same group with X(pi) on every qubit interleaved after each repetition.
QubitGroup with_xx_decoupling(QubitGroup group);

/// Two-qubit group whose cycle is one noisy gate intended to be a CZ.
QubitGroup cz_group(std::string name, const CMatrix &actual, std::optional<KrausChannel> noise = {});

}  // namespace cafe

#endif
