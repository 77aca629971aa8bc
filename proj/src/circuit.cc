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

#include "cafe/circuit.h"

#include <algorithm>
#include <stdexcept>

namespace cafe {

Circuit::Circuit(int dim) : dim_(dim) {
    if (dim < 1) {
        throw std::invalid_argument("Circuit: dimension must be positive");
    }
}

void Circuit::add_unitary(const CMatrix &u) {
    add_channel(std::make_shared<const KrausChannel>(std::vector<CMatrix>{u}));
}

void Circuit::add_channel(std::shared_ptr<const KrausChannel> channel) {
    if (channel->dim() != dim_) {
        throw std::invalid_argument("Circuit: operation dimension does not match the register");
    }
    ops_.push_back(std::move(channel));
}

void Circuit::add_channel(const KrausChannel &channel) {
    add_channel(std::make_shared<const KrausChannel>(channel));
}

void Circuit::append(const Circuit &other) {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Circuit::append: dimension mismatch");
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    entanglers_ += other.entanglers_;
}

CMatrix Circuit::run(const CMatrix &rho) const {
    CMatrix state = rho;
    for (const auto &op : ops_) {
        state = op->apply(state);
    }
    return state;
}

CMatrix Circuit::final_state() const {
    CMatrix rho = CMatrix::Zero(dim_, dim_);
    rho(0, 0) = 1.0;
    return run(rho);
}

double Circuit::survival_probability() const {
    return std::clamp(final_state()(0, 0).real(), 0.0, 1.0);
}

}  // namespace cafe
