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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cafe/analysis.h"
#include "cafe/config.h"
#include "cafe/io.h"
#include "cafe/irb.h"
#include "cafe/protocol.h"
#include "cafe/stateprep.h"
#include "cafe/sweep.h"
#include "cafe/unitaries.h"

namespace cafe {

namespace {

using nlohmann::json;

/// Raised when a fit stops at its iteration cap.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<int> shots;
    bool exact = false;
    std::string depths;
    std::string out;
    std::optional<int> threads;
};

void add_common(CLI::App *cmd, CommonFlags &f) {
    cmd->add_option("--config", f.config, "JSON experiment configuration");
    cmd->add_option("--seed", f.seed, "Base seed (overrides the config)");
    cmd->add_option("--shots", f.shots, "Shots per circuit (overrides the config)")->check(CLI::PositiveNumber);
    cmd->add_flag("--exact", f.exact, "Exact probabilities instead of sampled shots");
    cmd->add_option("--depths", f.depths, "Comma-separated cycle depths, e.g. 0,2,4,6,8");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--threads", f.threads, "Worker threads; 0 uses every core")->check(CLI::NonNegativeNumber);
}

std::vector<int> parse_depths(const std::string &text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(cell, &used));
            if (used != cell.size()) {
                throw std::invalid_argument(cell);
            }
        } catch (const std::exception &) {
            throw ConfigError("--depths: '" + cell + "' is not an integer");
        }
    }
    if (out.empty()) {
        throw ConfigError("--depths: empty list");
    }
    return out;
}

/// Config file, then flags on top.
json merged_config(const CommonFlags &f) {
    json doc = load_config_json(f.config);
    if (f.seed) {
        doc["seed"] = *f.seed;
    }
    if (f.shots && f.exact) {
        throw ConfigError("--shots and --exact are mutually exclusive");
    }
    if (f.shots) {
        doc["shots"] = *f.shots;
    }
    if (f.exact) {
        doc["shots"] = "exact";
    }
    if (!f.depths.empty()) {
        doc["depths"] = parse_depths(f.depths);
    }
    if (!f.out.empty()) {
        doc["out"] = f.out;
    }
    if (f.threads) {
        doc["threads"] = *f.threads;
    }
    return doc;
}

OutputHeader header(const std::string &command, const ExperimentConfig &cfg) {
    return OutputHeader{command, config_hash(cfg.source), cfg.seed};
}

std::string out_path(const ExperimentConfig &cfg, const std::string &name) {
    return (std::filesystem::path(cfg.out) / name).string();
}

std::string json_text(const json &j) {
    return j.dump(2) + "\n";
}

CMatrix actual_cycle(const QubitGroup &g) {
    CMatrix u = CMatrix::Identity(g.dim(), g.dim());
    for (const auto &layer : g.layers) {
        u = layer.actual * u;
    }
    for (const auto &p : g.interleave) {
        u = p * u;
    }
    return u;
}

FitOptions options_for(const QubitGroup &g, const ExperimentConfig &cfg) {
    FitOptions o = cfg.fit_options();
    if (o.model == ModelKind::Cz && g.num_qubits == 1) {
        o.model = ModelKind::OneQubit;
    }
    if (o.model == ModelKind::General) {
        o.u_tilde = actual_cycle(g);
        o.u_ref = g.reference_unitary();
    }
    return o;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Fits every group; a fit that stops at its cap is kept and flagged.
std::vector<FitResult> fit_groups(const CafeDataset &ds, const std::vector<QubitGroup> &groups, const ExperimentConfig &cfg) {
    std::vector<FitResult> fits;
    for (size_t g = 0; g < ds.groups.size(); ++g) {
        FitOptions o = cfg.fit_options();
        if (g < groups.size()) {
            o = options_for(groups[g], cfg);
        } else if (ds.groups[g].num_qubits == 1 && o.model == ModelKind::Cz) {
            o.model = ModelKind::OneQubit;
        }
        fits.push_back(fit(ds.groups[g], o));
    }
    return fits;
}

int cmd_run(const CommonFlags &flags, std::ostream &out) {
    ExperimentConfig cfg = parse_config(merged_config(flags));
    CycleSpec cycle{cfg.groups};
    CafeDataset ds = run_parallel_groups(cycle, cfg.run_config());
    std::vector<FitResult> fits;
    try {
        fits = fit_groups(ds, cfg.groups, cfg);
    } catch (const std::invalid_argument &) {
        fits.clear();  // Too few depths for a model; the curve is still written.
    }
    write_file(out_path(cfg, "dataset.csv"), dataset_csv(ds, header("run", cfg), fits));
    write_file(out_path(cfg, "dataset.json"), json_text(dataset_json(ds)));
    const auto &g0 = ds.groups.front();
    out << "run: " << ds.groups.size() << " group(s), " << variant_name(ds.variant) << ", " << g0.name << " f_hat(n="
        << g0.points.back().n << ")=" << fmt(g0.points.back().f_hat) << " -> " << out_path(cfg, "dataset.csv") << "\n";
    return kExitOk;
}

int cmd_decaf(const CommonFlags &flags, std::ostream &out) {
    ExperimentConfig cfg = parse_config(merged_config(flags));
    std::vector<QubitGroup> plain;
    std::vector<QubitGroup> decoupled;
    for (const auto &g : cfg.groups) {
        QubitGroup p = g;
        p.interleave.clear();
        p.name = g.name + ":cafe";
        plain.push_back(p);
        QubitGroup d = with_xx_decoupling(p);
        d.name = g.name + ":decaf";
        decoupled.push_back(d);
    }
    std::vector<QubitGroup> all = plain;
    all.insert(all.end(), decoupled.begin(), decoupled.end());
    CycleSpec cycle{all};
    CafeDataset ds = run_parallel_groups(cycle, cfg.run_config());
    std::vector<FitResult> fits = fit_groups(ds, all, cfg);
    std::vector<NamedBudget> budgets;
    bool converged = true;
    for (size_t g = 0; g < fits.size(); ++g) {
        budgets.emplace_back(all[g].name, budget(fits[g]));
        converged = converged && fits[g].converged;
    }
    write_file(out_path(cfg, "decaf.csv"), dataset_csv(ds, header("decaf", cfg), fits));
    write_file(out_path(cfg, "decaf_budget.csv"), budget_csv(budgets, header("decaf", cfg)));
    size_t half = plain.size();
    out << "decaf: " << cfg.groups.front().name << " eps_coh CAFE=" << fmt(budgets[0].second.eps_coh)
        << " DECAF=" << fmt(budgets[half].second.eps_coh) << " -> " << out_path(cfg, "decaf_budget.csv") << "\n";
    if (!converged) {
        throw NoConvergence("decaf: a fit did not converge");
    }
    return kExitOk;
}

CafeDataset load_or_run(const std::string &data, const ExperimentConfig &cfg, std::vector<QubitGroup> &groups) {
    if (data.empty()) {
        groups = cfg.groups;
        return run_parallel_groups(CycleSpec{cfg.groups}, cfg.run_config());
    }
    std::ifstream in(data);
    if (!in) {
        throw ConfigError("cannot open data file '" + data + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    groups.clear();
    try {
        return parse_dataset_csv(buf.str());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

int cmd_fit(const CommonFlags &flags, const std::string &data, const std::string &model, bool budget_only, std::ostream &out) {
    json doc = merged_config(flags);
    if (!model.empty()) {
        doc["fit"]["model"] = model;
    }
    ExperimentConfig cfg = parse_config(doc);
    std::vector<QubitGroup> groups;
    CafeDataset ds = load_or_run(data, cfg, groups);
    if (cfg.model == ModelKind::General && groups.empty()) {
        throw ConfigError("the general model needs the cycle from a config, not a data file");
    }
    std::vector<FitResult> fits;
    try {
        fits = fit_groups(ds, groups, cfg);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    bool converged = std::all_of(fits.begin(), fits.end(), [](const FitResult &f) { return f.converged; });
    const std::string command = budget_only ? "budget" : "fit";
    if (budget_only) {
        std::vector<NamedBudget> budgets;
        json jb = json::array();
        for (size_t g = 0; g < fits.size(); ++g) {
            budgets.emplace_back(ds.groups[g].name, budget(fits[g]));
            jb.push_back({{"group", ds.groups[g].name}, {"budget", budget_json(budgets.back().second)}});
        }
        write_file(out_path(cfg, "budget.csv"), budget_csv(budgets, header(command, cfg)));
        write_file(out_path(cfg, "budget.json"), json_text(jb));
        const auto &b = budgets.front().second;
        out << "budget: " << budgets.front().first << " 1-F=" << fmt(b.total_infidelity) << " eps_incoh=" << fmt(b.eps_incoh)
            << " eps_coh=" << fmt(b.eps_coh) << " eps_spam=" << fmt(b.eps_spam) << (converged ? "" : " (not converged)")
            << "\n";
    } else {
        json jf = json::array();
        for (size_t g = 0; g < fits.size(); ++g) {
            jf.push_back({{"group", ds.groups[g].name}, {"fit", fit_json(fits[g])}});
        }
        write_file(out_path(cfg, "fit.csv"), dataset_csv(ds, header(command, cfg), fits));
        write_file(out_path(cfg, "fit.json"), json_text(jf));
        out << "fit: " << fits.size() << " group(s), model " << model_name(fits.front().model) << ", rms "
            << fmt(fits.front().rms) << (converged ? "" : " (not converged)") << "\n";
    }
    if (!converged) {
        throw NoConvergence(command + ": a fit did not converge");
    }
    return kExitOk;
}

int cmd_sweep(const CommonFlags &flags, const std::string &kind, std::optional<int> gates, std::ostream &out) {
    json doc = merged_config(flags);
    if (!kind.empty()) {
        doc["sweep"]["kind"] = kind;
    }
    if (gates) {
        doc["sweep"]["num_gates"] = *gates;
    }
    ExperimentConfig cfg = parse_config(doc);
    SweepResult r = run_sweep(cfg.sweep);
    write_file(out_path(cfg, "sweep.csv"), sweep_csv(r, header("sweep", cfg)));
    write_file(out_path(cfg, "sweep_summary.json"), json_text(sweep_summary_json(r)));
    out << "sweep: " << noise_kind_name(r.spec.kind) << ", " << r.rows.size() << " gates, MAE 1-F=" << fmt(r.mae_infidelity)
        << " eps_incoh=" << fmt(r.mae_incoh) << " eps_coh=" << fmt(r.mae_coh) << ", " << r.num_unconverged
        << " unconverged\n";
    return kExitOk;
}

int cmd_irb_compare(const CommonFlags &flags, std::optional<int> gates, std::ostream &out) {
    json doc = merged_config(flags);
    if (gates) {
        doc["irb"]["gates"] = *gates;
    }
    ExperimentConfig cfg = parse_config(doc);
    CompareResult r = run_irb_comparison(cfg.compare);
    json j = compare_json(r);
    j["seed"] = cfg.seed;
    j["config_hash"] = hex64(config_hash(cfg.source));
    write_file(out_path(cfg, "irb_compare.csv"), compare_csv(r, header("irb-compare", cfg)));
    write_file(out_path(cfg, "irb_compare.json"), json_text(j));
    out << "irb-compare: " << r.rows.size() << " gates, MAE CAFE=" << fmt(r.mae_cafe) << " IRB=" << fmt(r.mae_irb)
        << ", circuits CAFE=" << r.cafe_circuits << " IRB=" << r.irb_circuits << "\n";
    return kExitOk;
}

int cmd_prep_state(const CommonFlags &flags, const std::vector<double> &amplitudes, std::ostream &out) {
    json doc = merged_config(flags);
    if (!amplitudes.empty()) {
        if (amplitudes.size() != 8) {
            throw ConfigError("--state: expected 8 numbers (re, im for each of 4 amplitudes)");
        }
        json a = json::array();
        for (size_t k = 0; k < 8; k += 2) {
            a.push_back({amplitudes[k], amplitudes[k + 1]});
        }
        doc["state"] = {{"amplitudes", a}};
    }
    ExperimentConfig cfg = parse_config(doc);
    if (!cfg.state) {
        throw ConfigError("prep-state: no target state (use --state or the config 'state' field)");
    }
    PrepCircuit prep;
    try {
        prep = prep_with_cz(*cfg.state);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    CVector zero = CVector::Zero(4);
    zero[0] = 1.0;
    double infidelity = 1.0 - std::norm(cfg.state->dot(prep.apply(zero)));
    json layers = json::array();
    for (const auto &layer : prep.layers) {
        if (layer.kind == Layer2q::Kind::Cz) {
            layers.push_back({{"kind", "cz"}});
        } else {
            layers.push_back({{"kind", "local"}, {"q1", matrix_json(layer.q1)}, {"q2", matrix_json(layer.q2)}});
        }
    }
    json j = {{"alpha", prep.alpha},
              {"singular_values", {prep.singular_values[0], prep.singular_values[1]}},
              {"entanglers", prep.entangler_count()},
              {"roundtrip_infidelity", std::max(infidelity, 0.0)},
              {"layers", layers},
              {"config_hash", hex64(config_hash(cfg.source))}};
    write_file(out_path(cfg, "prep.json"), json_text(j));
    out << "prep-state: " << prep.entangler_count() << " CZ, alpha=" << fmt(prep.alpha)
        << ", roundtrip infidelity=" << fmt(std::max(infidelity, 0.0)) << "\n";
    return kExitOk;
}

int cmd_validate_ref(const CommonFlags &flags, std::ostream &out) {
    json doc = merged_config(flags);
    if (!doc.contains("shots")) {
        doc["shots"] = "exact";
    }
    ExperimentConfig cfg = parse_config(doc);
    CMatrix truth = cfg.true_gate ? *cfg.true_gate : fsim_delta(FsimDelta{0.02, 0.03, 0.05});
    if (truth.rows() != 4) {
        throw ConfigError("validate-ref: the true gate must be two-qubit");
    }
    std::vector<NamedGate> refs = cfg.references;
    if (refs.empty()) {
        refs = {{"ideal_cz", gates::cz()}, {"true_unitary", truth}};
    }
    std::vector<QubitGroup> groups;
    for (const auto &r : refs) {
        QubitGroup g = cz_group(r.name, truth, cfg.true_noise);
        g.reference = r.unitary;
        groups.push_back(g);
    }
    CafeDataset ds = run_parallel_groups(CycleSpec{groups}, cfg.run_config());
    std::vector<NamedBudget> budgets;
    bool converged = true;
    for (size_t g = 0; g < groups.size(); ++g) {
        FitResult f = fit(ds.groups[g], options_for(groups[g], cfg));
        converged = converged && f.converged;
        budgets.emplace_back(groups[g].name, budget(f));
    }
    write_file(out_path(cfg, "validate_ref.csv"), budget_csv(budgets, header("validate-ref", cfg)));
    out << "validate-ref:";
    for (const auto &[name, b] : budgets) {
        out << " " << name << " eps_coh=" << fmt(b.eps_coh);
    }
    out << "\n";
    if (!converged) {
        throw NoConvergence("validate-ref: a fit did not converge");
    }
    return kExitOk;
}

int cmd_groups(const CommonFlags &flags, std::ostream &out) {
    ExperimentConfig cfg = parse_config(merged_config(flags));
    CafeDataset ds = run_parallel_groups(CycleSpec{cfg.groups}, cfg.run_config());
    std::vector<FitResult> fits = fit_groups(ds, cfg.groups, cfg);
    std::vector<NamedBudget> budgets;
    bool converged = true;
    for (size_t g = 0; g < fits.size(); ++g) {
        budgets.emplace_back(cfg.groups[g].name, budget(fits[g]));
        converged = converged && fits[g].converged;
    }
    std::vector<size_t> order(budgets.size());
    for (size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return budgets[a].second.total_infidelity > budgets[b].second.total_infidelity;
    });
    json ranking = json::array();
    for (size_t k : order) {
        ranking.push_back({{"group", budgets[k].first}, {"total_infidelity", budgets[k].second.total_infidelity}});
    }
    write_file(out_path(cfg, "groups.csv"), budget_csv(budgets, header("groups", cfg)));
    write_file(out_path(cfg, "groups_dataset.csv"), dataset_csv(ds, header("groups", cfg), fits));
    write_file(out_path(cfg, "groups.json"),
               json_text({{"ranking", ranking}, {"config_hash", hex64(config_hash(cfg.source))}, {"seed", cfg.seed}}));
    out << "groups: " << budgets.size() << " group(s), worst " << budgets[order.front()].first
        << " 1-F=" << fmt(budgets[order.front()].second.total_infidelity) << "\n";
    if (!converged) {
        throw NoConvergence("groups: a fit did not converge");
    }
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Context aware fidelity estimation simulator", "cafe"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cafe 0.1.0");

    CommonFlags flags;
    std::string data;
    std::string model;
    std::string kind;
    std::optional<int> gates;
    std::vector<double> amplitudes;

    auto *run = app.add_subcommand("run", "Simulate CAFE circuits and write the fidelity curve");
    add_common(run, flags);
    auto *decaf = app.add_subcommand("decaf", "Compare CAFE with X-pulse decoupled DECAF");
    add_common(decaf, flags);
    auto *fit_cmd = app.add_subcommand("fit", "Fit a decay model to a simulated or saved curve");
    add_common(fit_cmd, flags);
    fit_cmd->add_option("--data", data, "Dataset CSV written by 'cafe run'");
    fit_cmd->add_option("--model", model, "cz, general, oneq or quad");
    auto *budget_cmd = app.add_subcommand("budget", "Fit and split the infidelity into coherent and incoherent parts");
    add_common(budget_cmd, flags);
    budget_cmd->add_option("--data", data, "Dataset CSV written by 'cafe run'");
    budget_cmd->add_option("--model", model, "cz, oneq or quad");
    auto *sweep = app.add_subcommand("sweep", "Budget accuracy over randomly sampled noisy gates");
    add_common(sweep, flags);
    sweep->add_option("--kind", kind, "depolarizing or damping");
    sweep->add_option("--gates", gates, "Number of sampled gates")->check(CLI::PositiveNumber);
    auto *irb = app.add_subcommand("irb-compare", "CAFE against interleaved randomized benchmarking");
    add_common(irb, flags);
    irb->add_option("--gates", gates, "Number of sampled gates")->check(CLI::PositiveNumber);
    auto *prep = app.add_subcommand("prep-state", "Compile a two-qubit state preparation with one CZ");
    add_common(prep, flags);
    prep->add_option("--state", amplitudes, "re0 im0 re1 im1 re2 im2 re3 im3")->delimiter(',');
    auto *validate = app.add_subcommand("validate-ref", "Fit the coherent error against candidate reference unitaries");
    add_common(validate, flags);
    auto *groups = app.add_subcommand("groups", "Parallel qubit groups with a per-group budget ranking");
    add_common(groups, flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(flags, out);
        }
        if (*decaf) {
            return cmd_decaf(flags, out);
        }
        if (*fit_cmd) {
            return cmd_fit(flags, data, model, false, out);
        }
        if (*budget_cmd) {
            return cmd_fit(flags, data, model, true, out);
        }
        if (*sweep) {
            return cmd_sweep(flags, kind, gates, out);
        }
        if (*irb) {
            return cmd_irb_compare(flags, gates, out);
        }
        if (*prep) {
            return cmd_prep_state(flags, amplitudes, out);
        }
        if (*validate) {
            return cmd_validate_ref(flags, out);
        }
        if (*groups) {
            return cmd_groups(flags, out);
        }
    } catch (const NoConvergence &e) {
        err << "cafe: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const ConfigError &e) {
        err << "cafe: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        err << "cafe: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "cafe: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace cafe
