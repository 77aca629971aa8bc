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

#include "cafe/protocol.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cafe/parallel.h"
#include "cafe/stateprep.h"
#include "cafe/unitaries.h"

namespace cafe {

const char *variant_name(Variant v) {
    return v == Variant::Decaf ? "DECAF" : "CAFE";
}

CycleLayer CycleLayer::make(std::string label, CMatrix ideal, CMatrix actual, std::optional<KrausChannel> noise) {
    CycleLayer layer;
    layer.label = std::move(label);
    layer.ideal = std::move(ideal);
    layer.actual = std::move(actual);
    if (noise && !(noise->is_unitary() && max_abs(noise->kraus()[0] - CMatrix::Identity(noise->dim(), noise->dim())) == 0.0)) {
        layer.noise = std::make_shared<const KrausChannel>(std::move(*noise));
    }
    return layer;
}

KrausChannel CycleLayer::channel() const {
    KrausChannel u = unitary_channel(actual);
    return noise ? compose(u, *noise) : u;
}

CMatrix QubitGroup::ideal_unitary() const {
    CMatrix u = CMatrix::Identity(dim(), dim());
    for (const auto &layer : layers) {
        u = layer.ideal * u;
    }
    for (const auto &g : interleave) {
        u = g * u;
    }
    return u;
}

CMatrix QubitGroup::reference_unitary() const {
    return reference ? *reference : ideal_unitary();
}

void QubitGroup::validate() const {
    if (num_qubits != 1 && num_qubits != 2) {
        throw std::invalid_argument("group '" + name + "': only 1- or 2-qubit groups are supported");
    }
    if (layers.empty()) {
        throw std::invalid_argument("group '" + name + "': cycle needs at least one layer");
    }
    int d = dim();
    auto check = [&](const CMatrix &m, const char *what) {
        if (m.rows() != d || m.cols() != d) {
            throw std::invalid_argument("group '" + name + "': " + what + " has the wrong dimension");
        }
        if (!is_unitary(m, 1e-10)) {
            throw std::invalid_argument("group '" + name + "': " + what + " is not unitary");
        }
    };
    for (const auto &layer : layers) {
        check(layer.ideal, "ideal layer");
        check(layer.actual, "implemented layer");
        if (layer.noise && layer.noise->dim() != d) {
            throw std::invalid_argument("group '" + name + "': noise channel has the wrong dimension");
        }
    }
    for (const auto &g : interleave) {
        check(g, "interleave gate");
    }
    if (reference) {
        check(*reference, "reference");
    }
}

Variant CycleSpec::variant() const {
    for (const auto &g : groups) {
        if (!g.interleave.empty()) {
            return Variant::Decaf;
        }
    }
    return Variant::Cafe;
}

const char *spam_gate_name(SpamGate g) {
    switch (g) {
        case SpamGate::Ideal:
            return "ideal";
        case SpamGate::Unitary:
            return "unitary";
        case SpamGate::Channel:
            return "channel";
        case SpamGate::Incoherent:
            return "incoherent";
    }
    return "ideal";
}

SpamGate parse_spam_gate(const std::string &name) {
    if (name == "ideal") {
        return SpamGate::Ideal;
    }
    if (name == "unitary") {
        return SpamGate::Unitary;
    }
    if (name == "channel") {
        return SpamGate::Channel;
    }
    if (name == "incoherent") {
        return SpamGate::Incoherent;
    }
    throw std::invalid_argument("unknown spam gate '" + name + "' (expected ideal, unitary, channel or incoherent)");
}

void RunConfig::validate() const {
    if (depths.empty()) {
        throw std::invalid_argument("RunConfig: at least one depth is required");
    }
    for (size_t k = 0; k < depths.size(); ++k) {
        if (depths[k] < 0) {
            throw std::invalid_argument("RunConfig: depths must be non-negative");
        }
        if (k > 0 && depths[k] <= depths[k - 1]) {
            throw std::invalid_argument("RunConfig: depths must be sorted and distinct");
        }
    }
    if (shots && *shots <= 0) {
        throw std::invalid_argument("RunConfig: shots must be positive");
    }
}

namespace {

/// Single-qubit unitary whose first column is `psi`.
CMatrix completing_unitary(const CVector &psi) {
    CMatrix u(2, 2);
    u << psi[0], -std::conj(psi[1]), psi[1], std::conj(psi[0]);
    return u;
}

CMatrix matrix_power(const CMatrix &u, int n) {
    CMatrix out = CMatrix::Identity(u.rows(), u.cols());
    for (int k = 0; k < n; ++k) {
        out = u * out;
    }
    return out;
}

/// Appends a prep or measurement layer sequence, implementing each CZ with `entangler`.
void append_layers(Circuit &circuit, const std::vector<Layer2q> &layers, const std::shared_ptr<const KrausChannel> &entangler) {
    for (const auto &layer : layers) {
        if (layer.kind == Layer2q::Kind::Cz) {
            circuit.add_channel(entangler);
            circuit.count_entangler();
        } else {
            circuit.add_unitary(layer.unitary());
        }
    }
}

}  // namespace

std::vector<CafeCircuit> build_cafe(
    const QubitGroup &group, int group_index, const RunConfig &cfg, const StateEnsemble &ensemble) {
    group.validate();
    cfg.validate();
    if (ensemble.num_qubits != group.num_qubits) {
        throw std::invalid_argument("build_cafe: ensemble size does not match group '" + group.name + "'");
    }
    const int d = group.dim();
    const CMatrix reference = group.reference_unitary();

    // Shared, immutable cycle operations.
    std::vector<std::shared_ptr<const KrausChannel>> cycle_ops;
    std::vector<bool> cycle_entangler;
    for (const auto &layer : group.layers) {
        cycle_ops.push_back(std::make_shared<const KrausChannel>(std::vector<CMatrix>{layer.actual}));
        cycle_entangler.push_back(layer.is_two_qubit() && group.num_qubits == 2);
        if (layer.noise) {
            cycle_ops.push_back(layer.noise);
            cycle_entangler.push_back(false);
        }
    }
    for (const auto &g : group.interleave) {
        cycle_ops.push_back(std::make_shared<const KrausChannel>(std::vector<CMatrix>{g}));
        cycle_entangler.push_back(false);
    }

    auto spam_entangler = std::make_shared<const KrausChannel>(std::vector<CMatrix>{gates::cz()});
    if (cfg.spam_gate != SpamGate::Ideal && group.num_qubits == 2) {
        for (const auto &layer : group.layers) {
            if (!layer.is_two_qubit()) {
                continue;
            }
            switch (cfg.spam_gate) {
                case SpamGate::Unitary:
                    spam_entangler = std::make_shared<const KrausChannel>(unitary_channel(layer.actual));
                    break;
                case SpamGate::Channel:
                    spam_entangler = std::make_shared<const KrausChannel>(layer.channel());
                    break;
                case SpamGate::Incoherent:
                    if (layer.noise) {
                        spam_entangler = std::make_shared<const KrausChannel>(compose(unitary_channel(gates::cz()), *layer.noise));
                    }
                    break;
                case SpamGate::Ideal:
                    break;
            }
            break;
        }
    }

    std::vector<CafeCircuit> out;
    for (size_t i = 0; i < ensemble.states.size(); ++i) {
        const CVector &psi = ensemble.states[i].amplitudes();
        for (int n : cfg.depths) {
            Circuit circuit(d);
            CMatrix ideal_after = matrix_power(reference, n);
            CVector predicted = ideal_after * psi;

            bool gadget = cfg.inversion == Inversion::Gadget && group.num_qubits == 2;
            CMatrix prep_unitary;
            if (group.num_qubits == 1) {
                prep_unitary = completing_unitary(psi);
                circuit.add_unitary(prep_unitary);
            } else {
                PrepCircuit prep = prep_with_cz(psi);
                if (gadget) {
                    append_layers(circuit, prep.layers, spam_entangler);
                } else {
                    prep_unitary = prep.unitary();
                    circuit.add_unitary(prep_unitary);
                }
            }

            for (int rep = 0; rep < n; ++rep) {
                for (size_t k = 0; k < cycle_ops.size(); ++k) {
                    circuit.add_channel(cycle_ops[k]);
                    if (cycle_entangler[k]) {
                        circuit.count_entangler();
                    }
                }
            }

            if (gadget) {
                append_layers(circuit, measure_gadget(predicted / predicted.norm()).layers, spam_entangler);
            } else {
                circuit.add_unitary((ideal_after * prep_unitary).adjoint());
            }
            out.push_back(CafeCircuit{group_index, static_cast<int>(i), n, std::move(circuit)});
        }
    }
    return out;
}

std::vector<CafeCircuit> build_cafe(const CycleSpec &cycle, const RunConfig &cfg) {
    std::vector<CafeCircuit> out;
    for (size_t g = 0; g < cycle.groups.size(); ++g) {
        const auto &group = cycle.groups[g];
        auto circuits = build_cafe(group, static_cast<int>(g), cfg, default_ensemble(group.num_qubits));
        std::move(circuits.begin(), circuits.end(), std::back_inserter(out));
    }
    return out;
}

CafeDataset run(const std::vector<CafeCircuit> &circuits, const CycleSpec &cycle, const RunConfig &cfg) {
    cfg.validate();
    std::vector<double> probabilities(circuits.size());
    parallel_for(circuits.size(), cfg.threads, [&](size_t k) {
        const auto &c = circuits[k];
        double p = c.circuit.survival_probability();
        if (cfg.shots) {
            std::mt19937_64 rng(derive_seed(cfg.seed, {static_cast<uint64_t>(c.group), static_cast<uint64_t>(c.state),
                                                       static_cast<uint64_t>(c.depth)}));
            std::binomial_distribution<int> draw(*cfg.shots, p);
            p = static_cast<double>(draw(rng)) / *cfg.shots;
        }
        probabilities[k] = p;
    });

    CafeDataset ds;
    ds.variant = cycle.variant();
    ds.depths = cfg.depths;
    ds.shots = cfg.shots;
    ds.seed = cfg.seed;
    for (size_t g = 0; g < cycle.groups.size(); ++g) {
        const auto &group = cycle.groups[g];
        ds.ensemble_ids.push_back(default_ensemble(group.num_qubits).id);
        GroupDataset gd;
        gd.name = group.name;
        gd.num_qubits = group.num_qubits;
        gd.variant = group.interleave.empty() ? Variant::Cafe : Variant::Decaf;
        for (int n : cfg.depths) {
            DepthPoint point;
            point.n = n;
            point.excluded = n % 2 == 1;
            for (size_t k = 0; k < circuits.size(); ++k) {
                if (circuits[k].group == static_cast<int>(g) && circuits[k].depth == n) {
                    point.state_probabilities.push_back(probabilities[k]);
                }
            }
            if (point.state_probabilities.empty()) {
                continue;
            }
            double count = static_cast<double>(point.state_probabilities.size());
            double sum = 0.0;
            double var = 0.0;
            for (double p : point.state_probabilities) {
                sum += p;
                if (cfg.shots) {
                    var += p * (1.0 - p) / *cfg.shots;
                }
            }
            point.f_hat = sum / count;
            point.sigma = std::sqrt(var) / count;
            gd.points.push_back(std::move(point));
        }
        ds.groups.push_back(std::move(gd));
    }
    return ds;
}

CafeDataset run_parallel_groups(const CycleSpec &cycle, const RunConfig &cfg) {
    if (cycle.groups.empty()) {
        throw std::invalid_argument("run_parallel_groups: no groups");
    }
    return run(build_cafe(cycle, cfg), cycle, cfg);
}

QubitGroup with_xx_decoupling(QubitGroup group) {
    CMatrix pulse = gates::x();
    for (int q = 1; q < group.num_qubits; ++q) {
        pulse = kron(pulse, gates::x());
    }
    group.interleave.push_back(pulse);
    return group;
}

QubitGroup cz_group(std::string name, const CMatrix &actual, std::optional<KrausChannel> noise) {
    QubitGroup group;
    group.name = std::move(name);
    group.num_qubits = 2;
    group.layers.push_back(CycleLayer::make("cz", gates::cz(), actual, std::move(noise)));
    return group;
}

}  // namespace cafe
