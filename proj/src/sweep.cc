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

#include "cafe/sweep.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cafe/parallel.h"
#include "cafe/protocol.h"
#include "cafe/twodesign.h"

namespace cafe {

const char *noise_kind_name(NoiseKind kind) {
    return kind == NoiseKind::Damping ? "damping" : "depolarizing";
}

NoiseKind parse_noise_kind(const std::string &name) {
    if (name == "depolarizing") {
        return NoiseKind::Depolarizing;
    }
    if (name == "damping") {
        return NoiseKind::Damping;
    }
    throw std::invalid_argument("unknown noise kind '" + name + "' (expected depolarizing or damping)");
}

void SweepSpec::validate() const {
    if (num_gates < 1) {
        throw std::invalid_argument("sweep: num_gates must be at least 1");
    }
    RunConfig rc;
    rc.depths = depths;
    rc.shots = shots;
    rc.validate();
    const auto &d = distributions;
    if (d.p_depol_max < 0.0 || d.p_depol_max > 1.0 || d.angle_std < 0.0 || d.damping_std < 0.0 || d.split_std < 0.0) {
        throw std::invalid_argument("sweep: distribution parameters out of range");
    }
}

CMatrix SampledGate::unitary() const {
    return fsim(angles);
}

KrausChannel SampledGate::noise() const {
    NoiseSpec spec;
    spec.p_depol = p_depol;
    if (damping[0].p_decay > 0.0 || damping[0].p_phaseflip > 0.0 || damping[1].p_decay > 0.0 ||
        damping[1].p_phaseflip > 0.0) {
        spec.damping = {damping[0], damping[1]};
    }
    return spec.channel(2);
}

KrausChannel SampledGate::channel() const {
    return compose(unitary_channel(unitary()), noise());
}

SampledGate sample_gate(const SweepSpec &spec, int index) {
    SampledGate g;
    if (spec.force_noiseless) {
        return g;
    }
    const auto &d = spec.distributions;
    std::mt19937_64 rng(derive_seed(spec.seed, {static_cast<uint64_t>(index)}));
    std::normal_distribution<double> angle(0.0, d.angle_std);
    g.angles.theta = angle(rng);
    g.angles.zeta = angle(rng);
    g.angles.chi = angle(rng);
    g.angles.gamma = angle(rng);
    g.angles.phi = angle(rng);
    if (spec.kind == NoiseKind::Depolarizing) {
        g.p_depol = std::uniform_real_distribution<double>(0.0, d.p_depol_max)(rng);
        return g;
    }
    std::normal_distribution<double> total(0.0, d.damping_std);
    std::normal_distribution<double> split(d.split_mean, d.split_std);
    g.p_decay_total = std::min(std::abs(total(rng)), 1.0);
    g.p_phaseflip_total = std::min(std::abs(total(rng)), 1.0);
    double r_decay = std::clamp(split(rng), 0.0, 1.0);
    double r_phase = std::clamp(split(rng), 0.0, 1.0);
    g.damping[0] = {r_decay * g.p_decay_total, r_phase * g.p_phaseflip_total};
    g.damping[1] = {g.p_decay_total - g.damping[0].p_decay, g.p_phaseflip_total - g.damping[0].p_phaseflip};
    return g;
}

BudgetTruth budget_truth(const SampledGate &gate) {
    const CMatrix cz = gates::cz();
    KrausChannel noise = gate.noise();
    BudgetTruth t;
    t.infidelity = 1.0 - avg_gate_fidelity(compose(unitary_channel(gate.unitary()), noise), cz);
    t.eps_incoh = 1.0 - avg_gate_fidelity(compose(unitary_channel(cz), noise), cz);
    t.eps_coh = 1.0 - avg_gate_fidelity(unitary_channel(gate.unitary()), cz);
    return t;
}

ErrorBudget cafe_budget(const SampledGate &gate, const SweepSpec &spec, uint64_t seed) {
    CycleSpec cycle;
    cycle.groups.push_back(cz_group("cz", gate.unitary(), gate.noise()));
    RunConfig cfg;
    cfg.depths = spec.depths;
    cfg.shots = spec.shots;
    cfg.seed = seed;
    cfg.spam_gate = spec.spam_gate;
    CafeDataset ds = run_parallel_groups(cycle, cfg);
    FitOptions options;
    return budget(fit(ds.groups.front(), options));
}

SweepResult run_sweep(const SweepSpec &spec) {
    spec.validate();
    SweepResult out;
    out.spec = spec;
    out.rows.resize(spec.num_gates);
    default_ensemble(2);
    parallel_for(out.rows.size(), spec.threads, [&](size_t k) {
        SweepRow &row = out.rows[k];
        row.index = static_cast<int>(k);
        row.gate = sample_gate(spec, row.index);
        row.truth = budget_truth(row.gate);
        row.estimate = cafe_budget(row.gate, spec, derive_seed(spec.seed, {static_cast<uint64_t>(k), 1}));
        row.err_infidelity = std::abs(row.estimate.total_infidelity - row.truth.infidelity);
        row.err_incoh = std::abs(row.estimate.eps_incoh - row.truth.eps_incoh);
        row.err_coh = std::abs(row.estimate.eps_coh - row.truth.eps_coh);
    });
    std::vector<double> zeros(out.rows.size(), 0.0);
    std::vector<double> e1, e2, e3;
    for (const auto &row : out.rows) {
        e1.push_back(row.err_infidelity);
        e2.push_back(row.err_incoh);
        e3.push_back(row.err_coh);
        out.num_unconverged += row.estimate.converged ? 0 : 1;
    }
    out.mae_infidelity = mae(e1, zeros);
    out.mae_incoh = mae(e2, zeros);
    out.mae_coh = mae(e3, zeros);
    return out;
}

CompareResult run_irb_comparison(const CompareSpec &spec) {
    if (spec.num_gates < 1) {
        throw std::invalid_argument("irb comparison: num_gates must be at least 1");
    }
    SweepSpec sweep;
    sweep.kind = spec.kind;
    sweep.num_gates = spec.num_gates;
    sweep.shots = spec.shots;
    sweep.depths = spec.cafe_depths;
    sweep.seed = spec.seed;
    sweep.distributions = spec.distributions;
    sweep.spam_gate = spec.spam_gate;
    sweep.validate();
    IrbConfig irb = spec.irb;
    irb.shots = spec.shots;
    irb.threads = 1;
    irb.validate();

    CompareResult out;
    out.rows.resize(spec.num_gates);
    default_ensemble(2);
    parallel_for(out.rows.size(), spec.threads, [&](size_t k) {
        CompareRow &row = out.rows[k];
        row.index = static_cast<int>(k);
        SampledGate gate = sample_gate(sweep, row.index);
        row.truth = 1.0 - budget_truth(gate).infidelity;
        ErrorBudget b = cafe_budget(gate, sweep, derive_seed(spec.seed, {static_cast<uint64_t>(k), 1}));
        row.cafe = 1.0 - b.total_infidelity;
        row.cafe_converged = b.converged;
        IrbConfig local = irb;
        local.seed = derive_seed(spec.seed, {static_cast<uint64_t>(k), 2});
        RbResult rb = run_irb(gate.channel(), local);
        row.irb = rb.f_hat;
        row.irb_converged = rb.converged;
    });
    std::vector<double> truth, cafe_est, irb_est;
    for (const auto &row : out.rows) {
        truth.push_back(row.truth);
        cafe_est.push_back(row.cafe);
        irb_est.push_back(row.irb);
    }
    out.mae_cafe = mae(cafe_est, truth);
    out.mae_irb = mae(irb_est, truth);
    out.cafe_circuits = static_cast<int>(default_ensemble(2).states.size() * spec.cafe_depths.size());
    out.irb_circuits = irb.num_circuits * static_cast<int>(irb.depths.size()) * 2;
    return out;
}

}  // namespace cafe
