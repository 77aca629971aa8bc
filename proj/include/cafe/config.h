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

#ifndef CAFE_CONFIG_H
#define CAFE_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cafe/analysis.h"
#include "cafe/channels.h"
#include "cafe/protocol.h"
#include "cafe/sweep.h"

namespace cafe {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Named gate used by validate-ref.
struct NamedGate {
    std::string name;
    CMatrix unitary;
};

struct ExperimentConfig {
    uint64_t seed = 0;
    std::optional<int> shots = 2000;
    std::vector<int> depths{0, 2, 4, 6, 8};
    std::string out = ".";
    int threads = 1;
    Inversion inversion = Inversion::Gadget;
    SpamGate spam_gate = SpamGate::Ideal;

    std::vector<QubitGroup> groups;

    ModelKind model = ModelKind::Cz;
    bool all_depths = false;
    int max_iterations = FitOptions{}.max_iterations;
    int polish_iterations = FitOptions{}.polish_iterations;

    SweepSpec sweep;
    CompareSpec compare;

    /// prep-state target.
    std::optional<CVector> state;
    /// validate-ref: the gate actually implemented and its noise, plus candidate references.
    std::optional<CMatrix> true_gate;
    std::optional<KrausChannel> true_noise;
    std::vector<NamedGate> references;

    /// Canonical JSON the configuration was built from.
    nlohmann::json source;

    RunConfig run_config() const;
    FitOptions fit_options() const;
};

/// Builds a configuration from a JSON document. Unknown fields anywhere raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json &doc);

/// Reads and parses a JSON file; an empty path gives the defaults.
nlohmann::json load_config_json(const std::string &path);

/// Unitary described by a gate object such as {"gate": "fsim", "theta": 0.01}.
CMatrix gate_from_json(const nlohmann::json &spec);

NoiseSpec noise_from_json(const nlohmann::json &spec);

/// FNV-1a 64 of the canonical serialization.
uint64_t config_hash(const nlohmann::json &doc);

std::string hex64(uint64_t v);

}  // namespace cafe

#endif
