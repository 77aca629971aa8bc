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

#include "cafe/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cafe {

using nlohmann::json;

std::string csv_header(const OutputHeader &h) {
    std::ostringstream out;
    out << "# cafe " << h.command << "\n";
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h.config_hash));
    out << "# config_hash: " << buf << "\n";
    out << "# seed: " << h.seed << "\n";
    return out.str();
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string shots_text(const std::optional<int> &shots) {
    return shots ? std::to_string(*shots) : "exact";
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string &s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("dataset csv: bad number '" + s + "'");
    }
    return v;
}

}  // namespace

std::string dataset_csv(const CafeDataset &ds, const OutputHeader &h, const std::vector<FitResult> &fits) {
    bool with_model = !fits.empty() && fits.size() == ds.groups.size();
    std::ostringstream out;
    out << csv_header(h);
    out << "group,variant,n,f_hat,sigma,shots,seed";
    if (with_model) {
        out << ",f_model";
    }
    out << "\n";
    for (size_t g = 0; g < ds.groups.size(); ++g) {
        const auto &group = ds.groups[g];
        for (const auto &p : group.points) {
            out << group.name << ',' << variant_name(group.variant) << ',' << p.n << ',' << format_double(p.f_hat) << ','
                << format_double(p.sigma) << ',' << shots_text(ds.shots) << ',' << ds.seed;
            if (with_model) {
                out << ',' << format_double(evaluate(fits[g].params, p.n));
            }
            out << "\n";
        }
    }
    return out.str();
}

json dataset_json(const CafeDataset &ds) {
    json j;
    j["variant"] = variant_name(ds.variant);
    j["depths"] = ds.depths;
    j["shots"] = ds.shots ? json(*ds.shots) : json("exact");
    j["seed"] = ds.seed;
    j["ensembles"] = ds.ensemble_ids;
    json groups = json::array();
    for (const auto &g : ds.groups) {
        json jg;
        jg["name"] = g.name;
        jg["qubits"] = g.num_qubits;
        jg["variant"] = variant_name(g.variant);
        json points = json::array();
        for (const auto &p : g.points) {
            points.push_back({{"n", p.n},
                              {"f_hat", p.f_hat},
                              {"sigma", p.sigma},
                              {"excluded", p.excluded},
                              {"state_probabilities", p.state_probabilities}});
        }
        jg["points"] = points;
        groups.push_back(jg);
    }
    j["groups"] = groups;
    return j;
}

CafeDataset parse_dataset_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> columns;
    CafeDataset ds;
    std::map<std::string, size_t> index;
    bool have_shots = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cells = split(line, ',');
        if (columns.empty()) {
            columns = cells;
            for (const char *need : {"group", "n", "f_hat"}) {
                if (std::find(columns.begin(), columns.end(), need) == columns.end()) {
                    throw std::invalid_argument(std::string("dataset csv: missing column '") + need + "'");
                }
            }
            continue;
        }
        if (cells.size() != columns.size()) {
            throw std::invalid_argument("dataset csv: row has " + std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(columns.size()));
        }
        std::map<std::string, std::string> row;
        for (size_t k = 0; k < cells.size(); ++k) {
            row[columns[k]] = cells[k];
        }
        const std::string &name = row["group"];
        if (!index.contains(name)) {
            index[name] = ds.groups.size();
            GroupDataset g;
            g.name = name;
            g.variant = row.contains("variant") && row["variant"] == "DECAF" ? Variant::Decaf : Variant::Cafe;
            ds.groups.push_back(g);
        }
        DepthPoint p;
        p.n = static_cast<int>(parse_double(row["n"]));
        p.f_hat = parse_double(row["f_hat"]);
        p.sigma = row.contains("sigma") ? parse_double(row["sigma"]) : 0.0;
        p.excluded = p.n % 2 == 1;
        ds.groups[index[name]].points.push_back(p);
        if (!have_shots && row.contains("shots")) {
            ds.shots = row["shots"] == "exact" ? std::nullopt : std::optional<int>(static_cast<int>(parse_double(row["shots"])));
            have_shots = true;
        }
        if (row.contains("seed")) {
            ds.seed = static_cast<uint64_t>(std::stoull(row["seed"]));
        }
    }
    if (ds.groups.empty()) {
        throw std::invalid_argument("dataset csv: no data rows");
    }
    for (const auto &g : ds.groups) {
        if (g.variant == Variant::Decaf) {
            ds.variant = Variant::Decaf;
        }
        for (const auto &p : g.points) {
            if (std::find(ds.depths.begin(), ds.depths.end(), p.n) == ds.depths.end()) {
                ds.depths.push_back(p.n);
            }
        }
    }
    std::sort(ds.depths.begin(), ds.depths.end());
    return ds;
}

json matrix_json(const CMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array();
        json ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"real", re}, {"imag", im}};
}

json params_json(const ModelParams &params) {
    return std::visit(
        [](const auto &p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CzModelParams>) {
                return {{"model", "cz"},       {"dtheta", p.dtheta},   {"dgamma", p.dgamma},
                        {"dphi", p.dphi},      {"p_depol", p.p_depol}, {"eps_spam", p.eps_spam}};
            } else if constexpr (std::is_same_v<T, OneQubitParams>) {
                return {{"model", "oneq"}, {"dmu", p.dmu}, {"p_depol", p.p_depol}, {"eps_spam", p.eps_spam}};
            } else if constexpr (std::is_same_v<T, QuadParams>) {
                return {{"model", "quad"}, {"eps_spam", p.eps_spam}, {"eps_lin", p.eps_lin}, {"eps_quad", p.eps_quad}};
            } else {
                return {{"model", "general"}, {"p_depol", p.p_depol}, {"eps_spam", p.eps_spam}};
            }
        },
        params);
}

json fit_json(const FitResult &fit) {
    return {{"model", model_name(fit.model)},
            {"params", params_json(fit.params)},
            {"rms", fit.rms},
            {"converged", fit.converged},
            {"depths", fit.depths}};
}

std::string budget_csv(const std::vector<NamedBudget> &budgets, const OutputHeader &h) {
    std::ostringstream out;
    out << csv_header(h);
    out << "group,total_infidelity,eps_incoh,eps_coh,eps_spam,residual,converged\n";
    for (const auto &[name, b] : budgets) {
        out << name << ',' << format_double(b.total_infidelity) << ',' << format_double(b.eps_incoh) << ','
            << format_double(b.eps_coh) << ',' << format_double(b.eps_spam) << ',' << format_double(b.residual) << ','
            << (b.converged ? "true" : "false") << "\n";
    }
    return out.str();
}

json budget_json(const ErrorBudget &b) {
    return {{"total_infidelity", b.total_infidelity},
            {"eps_incoh", b.eps_incoh},
            {"eps_coh", b.eps_coh},
            {"eps_spam", b.eps_spam},
            {"params", params_json(b.params)},
            {"residual", b.residual},
            {"converged", b.converged},
            {"depths", b.depths}};
}

std::string rb_csv(const RbResult &rb, const OutputHeader &h) {
    std::ostringstream out;
    out << csv_header(h);
    out << "n,ref_survival,int_survival,ref_model,int_model\n";
    for (size_t k = 0; k < rb.depths.size(); ++k) {
        int n = rb.depths[k];
        out << n << ',' << format_double(rb.ref_survival[k]) << ',' << format_double(rb.int_survival[k]) << ','
            << format_double(rb.ref.a * std::pow(rb.ref.p, n) + rb.ref.b) << ','
            << format_double(rb.interleaved.a * std::pow(rb.interleaved.p, n) + rb.interleaved.b) << "\n";
    }
    return out.str();
}

json rb_json(const RbResult &rb) {
    auto fit = [](const DecayFit &f) {
        return json{{"a", f.a}, {"b", f.b}, {"p", f.p}, {"rms", f.rms}, {"converged", f.converged}};
    };
    return {{"depths", rb.depths},
            {"ref_survival", rb.ref_survival},
            {"int_survival", rb.int_survival},
            {"ref", fit(rb.ref)},
            {"interleaved", fit(rb.interleaved)},
            {"f_hat", rb.f_hat},
            {"converged", rb.converged}};
}

std::string sweep_csv(const SweepResult &r, const OutputHeader &h) {
    std::ostringstream out;
    out << csv_header(h);
    out << "index,theta,zeta,chi,gamma,phi,p_depol,p_decay_total,p_phaseflip_total,"
           "true_infidelity,true_eps_incoh,true_eps_coh,est_infidelity,est_eps_incoh,est_eps_coh,est_eps_spam,"
           "err_infidelity,err_eps_incoh,err_eps_coh,residual,converged\n";
    for (const auto &row : r.rows) {
        const auto &g = row.gate;
        const double cells[] = {g.angles.theta,
                                g.angles.zeta,
                                g.angles.chi,
                                g.angles.gamma,
                                g.angles.phi,
                                g.p_depol,
                                g.p_decay_total,
                                g.p_phaseflip_total,
                                row.truth.infidelity,
                                row.truth.eps_incoh,
                                row.truth.eps_coh,
                                row.estimate.total_infidelity,
                                row.estimate.eps_incoh,
                                row.estimate.eps_coh,
                                row.estimate.eps_spam,
                                row.err_infidelity,
                                row.err_incoh,
                                row.err_coh,
                                row.estimate.residual};
        out << row.index;
        for (double c : cells) {
            out << ',' << format_double(c);
        }
        out << ',' << (row.estimate.converged ? "true" : "false") << "\n";
    }
    return out.str();
}

json sweep_summary_json(const SweepResult &r) {
    return {{"kind", noise_kind_name(r.spec.kind)},
            {"num_gates", r.spec.num_gates},
            {"shots", r.spec.shots ? json(*r.spec.shots) : json("exact")},
            {"depths", r.spec.depths},
            {"seed", r.spec.seed},
            {"spam_gate", spam_gate_name(r.spec.spam_gate)},
            {"mae_infidelity", r.mae_infidelity},
            {"mae_eps_incoh", r.mae_incoh},
            {"mae_eps_coh", r.mae_coh},
            {"unconverged", r.num_unconverged}};
}

std::string compare_csv(const CompareResult &r, const OutputHeader &h) {
    std::ostringstream out;
    out << csv_header(h);
    out << "index,true_fidelity,cafe_fidelity,irb_fidelity,cafe_converged,irb_converged\n";
    for (const auto &row : r.rows) {
        out << row.index << ',' << format_double(row.truth) << ',' << format_double(row.cafe) << ','
            << format_double(row.irb) << ',' << (row.cafe_converged ? "true" : "false") << ','
            << (row.irb_converged ? "true" : "false") << "\n";
    }
    return out.str();
}

json compare_json(const CompareResult &r) {
    return {{"gates", r.rows.size()},
            {"mae_cafe", r.mae_cafe},
            {"mae_irb", r.mae_irb},
            {"circuits", {{"cafe", r.cafe_circuits}, {"irb", r.irb_circuits}}}};
}

void write_file(const std::string &path, const std::string &content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

}  // namespace cafe
