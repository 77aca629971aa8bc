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

#ifndef CAFE_IO_H
#define CAFE_IO_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cafe/analysis.h"
#include "cafe/irb.h"
#include "cafe/protocol.h"
#include "cafe/sweep.h"

namespace cafe {

/// Provenance written at the top of every CSV file as '#' comments.
struct OutputHeader {
    std::string command;
    uint64_t config_hash = 0;
    uint64_t seed = 0;
};

std::string csv_header(const OutputHeader &h);

/// Shortest round-trip decimal form; identical inputs give identical text.
std::string format_double(double v);

/// Columns: group, variant, n, f_hat, sigma, shots, seed, and f_model when `fits` holds one
/// entry per group.
std::string dataset_csv(const CafeDataset &ds, const OutputHeader &h, const std::vector<FitResult> &fits = {});
nlohmann::json dataset_json(const CafeDataset &ds);

/// Reads the CSV written by dataset_csv. Throws std::invalid_argument on malformed input.
CafeDataset parse_dataset_csv(const std::string &text);

nlohmann::json params_json(const ModelParams &params);
nlohmann::json fit_json(const FitResult &fit);

using NamedBudget = std::pair<std::string, ErrorBudget>;

/// Columns: group, total_infidelity, eps_incoh, eps_coh, eps_spam, residual, converged.
std::string budget_csv(const std::vector<NamedBudget> &budgets, const OutputHeader &h);
nlohmann::json budget_json(const ErrorBudget &b);

std::string rb_csv(const RbResult &rb, const OutputHeader &h);
nlohmann::json rb_json(const RbResult &rb);

std::string sweep_csv(const SweepResult &r, const OutputHeader &h);
nlohmann::json sweep_summary_json(const SweepResult &r);

std::string compare_csv(const CompareResult &r, const OutputHeader &h);
nlohmann::json compare_json(const CompareResult &r);

nlohmann::json matrix_json(const CMatrix &m);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::string &path, const std::string &content);

}  // namespace cafe

#endif
