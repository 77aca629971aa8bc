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

#ifndef CAFE_CHANNELS_H
#define CAFE_CHANNELS_H

#include <vector>

#include "cafe/qcore.h"

namespace cafe {

/// Completely positive trace-preserving map stored as Kraus operators, E(rho) = sum_a K_a rho K_a^dagger.
class KrausChannel {
  public:
    /// Throws std::invalid_argument on an empty list, non-square or mismatched
    /// operators, or when sum_a K_a^dagger K_a deviates from I by more than 1e-10.
    explicit KrausChannel(std::vector<CMatrix> kraus);

    int dim() const {
        return dim_;
    }
    const std::vector<CMatrix> &kraus() const {
        return kraus_;
    }
    /// True when the channel is a single Kraus operator.
    bool is_unitary() const {
        return kraus_.size() == 1;
    }

    CMatrix apply(const CMatrix &rho) const;

  private:
    int dim_;
    std::vector<CMatrix> kraus_;
};

KrausChannel identity_channel(int dim);

/// (1 - p) rho + p I / d, as a uniform Pauli mixture. d must be a power of two.
KrausChannel depolarizing(double p, int dim);

/// Single-qubit amplitude damping with decay probability p_decay, followed by a
/// phase flip (Z with probability p_phaseflip).
KrausChannel amp_phase_damping(double p_decay, double p_phaseflip);

KrausChannel unitary_channel(const CMatrix &u);

/// a acts on the more significant subsystem.
KrausChannel tensor(const KrausChannel &a, const KrausChannel &b);

/// Applies `first`, then `second`.
KrausChannel compose(const KrausChannel &first, const KrausChannel &second);

/// Average gate fidelity of `e` with respect to the unitary `u`:
/// 1/(d+1) + sum_a |tr(u^dagger K_a)|^2 / (d(d+1)).
double avg_gate_fidelity(const KrausChannel &e, const CMatrix &u);

struct QubitDamping {
    double p_decay = 0.0;
    double p_phaseflip = 0.0;
};

/// Which gate layers a NoiseSpec's channel follows.
enum class AttachPoint {
    TwoQubitLayers,
    AllLayers,
};

/// Incoherent noise attached after a gate layer.
struct NoiseSpec {
    double p_depol = 0.0;
    /// Empty, or one entry per qubit (qubit 1 first).
    std::vector<QubitDamping> damping;
    AttachPoint attach = AttachPoint::TwoQubitLayers;

    /// Throws std::invalid_argument for probabilities outside [0, 1].
    void validate() const;
    bool is_noiseless() const;
    /// Per-qubit damping (if any) followed by depolarizing on all qubits.
    KrausChannel channel(int num_qubits) const;
};

}  // namespace cafe

#endif
