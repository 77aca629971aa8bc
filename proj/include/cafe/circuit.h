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

#ifndef CAFE_CIRCUIT_H
#define CAFE_CIRCUIT_H

#include <memory>
#include <vector>

#include "cafe/channels.h"

namespace cafe {

/// Sequence of channels on one register, simulated on density matrices starting from |0...0>.
class Circuit {
  public:
    explicit Circuit(int dim);

    void add_unitary(const CMatrix &u);
    void add_channel(std::shared_ptr<const KrausChannel> channel);
    void add_channel(const KrausChannel &channel);
    /// Marks the most recently added operation as a two-qubit entangler.
    void count_entangler() {
        ++entanglers_;
    }
    void append(const Circuit &other);

    int dim() const {
        return dim_;
    }
    size_t size() const {
        return ops_.size();
    }
    int entangler_count() const {
        return entanglers_;
    }

    CMatrix run(const CMatrix &rho) const;
    CMatrix final_state() const;
    /// <0...0| rho_final |0...0>, clamped to [0, 1].
    double survival_probability() const;

  private:
    int dim_;
    int entanglers_ = 0;
    std::vector<std::shared_ptr<const KrausChannel>> ops_;
};

}  // namespace cafe

#endif
