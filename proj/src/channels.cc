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

#include "cafe/channels.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cafe/unitaries.h"

namespace cafe {

namespace {

constexpr double kTraceTol = 1e-10;

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : dim_(0), kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw std::invalid_argument("KrausChannel: no Kraus operators");
    }
    dim_ = static_cast<int>(kraus_.front().rows());
    CMatrix sum = CMatrix::Zero(dim_, dim_);
    for (const auto &k : kraus_) {
        if (k.rows() != dim_ || k.cols() != dim_) {
            throw std::invalid_argument("KrausChannel: operators must be square with equal dimensions");
        }
        sum.noalias() += k.adjoint() * k;
    }
    if (max_abs(sum - CMatrix::Identity(dim_, dim_)) > kTraceTol) {
        throw std::invalid_argument("KrausChannel: operators are not trace preserving");
    }
}

CMatrix KrausChannel::apply(const CMatrix &rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw std::invalid_argument("KrausChannel::apply: dimension mismatch");
    }
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (const auto &k : kraus_) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

KrausChannel identity_channel(int dim) {
    return KrausChannel({CMatrix::Identity(dim, dim)});
}

KrausChannel depolarizing(double p, int dim) {
    check_probability(p, "depolarizing probability");
    int m = qubit_count(dim);
    if (p == 0.0) {
        return identity_channel(dim);
    }
    double d2 = static_cast<double>(dim) * dim;
    std::vector<CMatrix> kraus;
    kraus.reserve(static_cast<size_t>(d2));
    kraus.push_back(std::sqrt(1.0 - p * (d2 - 1.0) / d2) * CMatrix::Identity(dim, dim));
    double w = std::sqrt(p) / dim;
    for (int index = 1; index < static_cast<int>(d2); ++index) {
        kraus.push_back(w * gates::pauli_string(index, m));
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel amp_phase_damping(double p_decay, double p_phaseflip) {
    check_probability(p_decay, "decay probability");
    check_probability(p_phaseflip, "phase-flip probability");
    CMatrix a0 = CMatrix::Zero(2, 2);
    a0(0, 0) = 1.0;
    a0(1, 1) = std::sqrt(1.0 - p_decay);
    CMatrix a1 = CMatrix::Zero(2, 2);
    a1(0, 1) = std::sqrt(p_decay);
    std::vector<CMatrix> amplitude{a0};
    if (p_decay > 0.0) {
        amplitude.push_back(a1);
    }
    std::vector<CMatrix> phase{std::sqrt(1.0 - p_phaseflip) * gates::identity(2)};
    if (p_phaseflip > 0.0) {
        phase.push_back(std::sqrt(p_phaseflip) * gates::z());
    }
    return compose(KrausChannel(std::move(amplitude)), KrausChannel(std::move(phase)));
}

KrausChannel unitary_channel(const CMatrix &u) {
    if (!is_unitary(u, kTraceTol)) {
        throw std::invalid_argument("unitary_channel: matrix is not unitary");
    }
    return KrausChannel({u});
}

KrausChannel tensor(const KrausChannel &a, const KrausChannel &b) {
    std::vector<CMatrix> kraus;
    kraus.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ka : a.kraus()) {
        for (const auto &kb : b.kraus()) {
            kraus.push_back(kron(ka, kb));
        }
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel compose(const KrausChannel &first, const KrausChannel &second) {
    if (first.dim() != second.dim()) {
        throw std::invalid_argument("compose: dimension mismatch");
    }
    std::vector<CMatrix> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const auto &k1 : first.kraus()) {
        for (const auto &k2 : second.kraus()) {
            CMatrix k = k2 * k1;
            if (max_abs(k) > 0.0) {
                kraus.push_back(std::move(k));
            }
        }
    }
    return KrausChannel(std::move(kraus));
}

double avg_gate_fidelity(const KrausChannel &e, const CMatrix &u) {
    if (u.rows() != e.dim() || u.cols() != e.dim()) {
        throw std::invalid_argument("avg_gate_fidelity: dimension mismatch");
    }
    double d = e.dim();
    double overlap = 0.0;
    for (const auto &k : e.kraus()) {
        overlap += std::norm((u.adjoint() * k).trace());
    }
    return 1.0 / (d + 1.0) + overlap / (d * (d + 1.0));
}

void NoiseSpec::validate() const {
    check_probability(p_depol, "p_depol");
    for (const auto &q : damping) {
        check_probability(q.p_decay, "p_decay");
        check_probability(q.p_phaseflip, "p_phaseflip");
    }
}

bool NoiseSpec::is_noiseless() const {
    if (p_depol != 0.0) {
        return false;
    }
    for (const auto &q : damping) {
        if (q.p_decay != 0.0 || q.p_phaseflip != 0.0) {
            return false;
        }
    }
    return true;
}

KrausChannel NoiseSpec::channel(int num_qubits) const {
    validate();
    int dim = 1 << num_qubits;
    KrausChannel out = identity_channel(dim);
    if (!damping.empty()) {
        if (static_cast<int>(damping.size()) != num_qubits) {
            throw std::invalid_argument("NoiseSpec: damping needs one entry per qubit");
        }
        KrausChannel local = amp_phase_damping(damping[0].p_decay, damping[0].p_phaseflip);
        for (int q = 1; q < num_qubits; ++q) {
            local = tensor(local, amp_phase_damping(damping[q].p_decay, damping[q].p_phaseflip));
        }
        out = local;
    }
    if (p_depol > 0.0) {
        out = compose(out, depolarizing(p_depol, dim));
    }
    return out;
}

}  // namespace cafe
