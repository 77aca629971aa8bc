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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cafe/analysis.h"
#include "cafe/channels.h"
#include "cafe/clifford.h"
#include "cafe/config.h"
#include "cafe/io.h"
#include "cafe/protocol.h"
#include "cafe/stateprep.h"
#include "cafe/sweep.h"
#include "cafe/twodesign.h"
#include "cafe/unitaries.h"
#include "cli.h"

namespace py = pybind11;

namespace {

py::dict params_dict(const cafe::ModelParams &params) {
    py::dict d;
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, cafe::CzModelParams>) {
                d["dtheta"] = p.dtheta;
                d["dgamma"] = p.dgamma;
                d["dphi"] = p.dphi;
                d["p_depol"] = p.p_depol;
                d["eps_spam"] = p.eps_spam;
            } else if constexpr (std::is_same_v<T, cafe::OneQubitParams>) {
                d["dmu"] = p.dmu;
                d["p_depol"] = p.p_depol;
                d["eps_spam"] = p.eps_spam;
            } else if constexpr (std::is_same_v<T, cafe::QuadParams>) {
                d["eps_spam"] = p.eps_spam;
                d["eps_lin"] = p.eps_lin;
                d["eps_quad"] = p.eps_quad;
            } else {
                d["p_depol"] = p.p_depol;
                d["eps_spam"] = p.eps_spam;
            }
        },
        params);
    return d;
}

py::dict budget_dict(const cafe::ErrorBudget &b) {
    py::dict d;
    d["total_infidelity"] = b.total_infidelity;
    d["eps_incoh"] = b.eps_incoh;
    d["eps_coh"] = b.eps_coh;
    d["eps_spam"] = b.eps_spam;
    d["residual"] = b.residual;
    d["converged"] = b.converged;
    d["params"] = params_dict(b.params);
    return d;
}

cafe::FitOptions fit_options(const std::string &model, bool even_only) {
    cafe::FitOptions o;
    o.model = cafe::parse_model(model);
    o.even_only = even_only;
    if (o.model == cafe::ModelKind::General) {
        throw std::invalid_argument("the general model is not available from fit(); use the CLI with a config");
    }
    return o;
}

std::optional<cafe::KrausChannel> noise_channel(double p_depol, const std::vector<std::pair<double, double>> &damping) {
    cafe::NoiseSpec spec;
    spec.p_depol = p_depol;
    for (const auto &[decay, flip] : damping) {
        spec.damping.push_back({decay, flip});
    }
    spec.validate();
    if (spec.is_noiseless()) {
        return std::nullopt;
    }
    return spec.channel(2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Context aware fidelity estimation (CAFE) simulator";

    m.def("cz", &cafe::gates::cz, "Ideal CZ.");
    m.def("fsim",
          [](double theta, double zeta, double chi, double gamma, double phi) {
              return cafe::fsim(cafe::FsimParams{theta, zeta, chi, gamma, phi});
          },
          py::arg("theta") = 0.0, py::arg("zeta") = 0.0, py::arg("chi") = 0.0, py::arg("gamma") = 0.0,
          py::arg("phi") = 0.0);
    m.def("fsim_delta",
          [](double dtheta, double dgamma, double dphi) { return cafe::fsim_delta(cafe::FsimDelta{dtheta, dgamma, dphi}); },
          py::arg("dtheta") = 0.0, py::arg("dgamma") = 0.0, py::arg("dphi") = 0.0);
    m.def("x_delta", [](double dmu) { return cafe::x_delta(cafe::XDelta{dmu}); }, py::arg("dmu") = 0.0);

    m.def("avg_gate_fidelity",
          [](const cafe::CMatrix &actual, const cafe::CMatrix &ideal, double p_depol,
             const std::vector<std::pair<double, double>> &damping) {
              cafe::KrausChannel e = cafe::unitary_channel(actual);
              if (auto noise = noise_channel(p_depol, damping)) {
                  e = cafe::compose(e, *noise);
              }
              return cafe::avg_gate_fidelity(e, ideal);
          },
          py::arg("actual"), py::arg("ideal"), py::arg("p_depol") = 0.0,
          py::arg("damping") = std::vector<std::pair<double, double>>{},
          "Average gate fidelity of `actual` followed by noise against `ideal`.");

    m.def("model_cz",
          [](int n, double dtheta, double dgamma, double dphi, double p_depol, double eps_spam) {
              return cafe::model_cz(n, cafe::CzModelParams{dtheta, dgamma, dphi, p_depol, eps_spam});
          },
          py::arg("n"), py::arg("dtheta") = 0.0, py::arg("dgamma") = 0.0, py::arg("dphi") = 0.0,
          py::arg("p_depol") = 0.0, py::arg("eps_spam") = 0.0);
    m.def("model_1q", &cafe::model_1q, py::arg("n"), py::arg("dmu") = 0.0, py::arg("p_depol") = 0.0,
          py::arg("eps_spam") = 0.0);

    m.def("simulate",
          [](const cafe::CMatrix &actual, std::vector<int> depths, std::optional<int> shots, uint64_t seed,
             double p_depol, const std::vector<std::pair<double, double>> &damping, const std::string &spam_gate,
             bool decaf) {
              cafe::QubitGroup g = cafe::cz_group("g", actual, noise_channel(p_depol, damping));
              if (decaf) {
                  g = cafe::with_xx_decoupling(g);
              }
              cafe::RunConfig cfg;
              cfg.depths = std::move(depths);
              cfg.shots = shots;
              cfg.seed = seed;
              cfg.spam_gate = cafe::parse_spam_gate(spam_gate);
              cafe::CafeDataset ds;
              {
                  py::gil_scoped_release release;
                  ds = cafe::run_parallel_groups(cafe::CycleSpec{{g}}, cfg);
              }
              py::list n;
              py::list f;
              py::list sigma;
              for (const auto &p : ds.groups.front().points) {
                  n.append(p.n);
                  f.append(p.f_hat);
                  sigma.append(p.sigma);
              }
              py::dict d;
              d["n"] = n;
              d["f_hat"] = f;
              d["sigma"] = sigma;
              return d;
          },
          py::arg("actual"), py::arg("depths") = std::vector<int>{0, 2, 4, 6, 8}, py::arg("shots") = 2000,
          py::arg("seed") = 0, py::arg("p_depol") = 0.0,
          py::arg("damping") = std::vector<std::pair<double, double>>{}, py::arg("spam_gate") = "ideal",
          py::arg("decaf") = false,
          "Runs CAFE on one two-qubit CZ-like gate. shots=None evaluates exact probabilities.");

    m.def("fit",
          [](const std::vector<int> &depths, const std::vector<double> &fidelities, const std::string &model,
             bool even_only) {
              cafe::FitResult r = cafe::fit(depths, fidelities, fit_options(model, even_only));
              py::dict d;
              d["model"] = cafe::model_name(r.model);
              d["params"] = params_dict(r.params);
              d["rms"] = r.rms;
              d["converged"] = r.converged;
              d["depths"] = r.depths;
              return d;
          },
          py::arg("depths"), py::arg("fidelities"), py::arg("model") = "cz", py::arg("even_only") = true);

    m.def("budget",
          [](const std::vector<int> &depths, const std::vector<double> &fidelities, const std::string &model,
             bool even_only) {
              return budget_dict(cafe::budget(cafe::fit(depths, fidelities, fit_options(model, even_only))));
          },
          py::arg("depths"), py::arg("fidelities"), py::arg("model") = "cz", py::arg("even_only") = true,
          "Fits the curve and splits the infidelity into coherent and incoherent parts.");

    m.def("prep_state",
          [](const cafe::CVector &target) {
              cafe::PrepCircuit c = cafe::prep_with_cz(target);
              py::dict d;
              d["alpha"] = c.alpha;
              d["singular_values"] = std::vector<double>{c.singular_values[0], c.singular_values[1]};
              d["entanglers"] = c.entangler_count();
              d["unitary"] = cafe::layers_unitary(c.layers);
              return d;
          },
          py::arg("target"), "Compiles a two-qubit state preparation from |00> using one CZ.");

    m.def("verify_2design", [](int num_qubits) { return cafe::verify_2design(cafe::default_ensemble(num_qubits)); },
          py::arg("num_qubits"), "Frame-potential deviation of the built-in state ensemble.");

    m.def("clifford_index", &cafe::clifford_index, py::arg("unitary"));
    m.def("clifford_element", [](int index) { return cafe::clifford_element(index).unitary; }, py::arg("index"));
    m.attr("NUM_CLIFFORDS_2Q") = cafe::kNumCliffords2q;

    m.def("config_hash", [](const std::string &text) { return cafe::hex64(cafe::config_hash(nlohmann::json::parse(text))); },
          py::arg("config_json"));

    m.def("run_cli",
          [](const std::vector<std::string> &args) {
              std::ostringstream out;
              std::ostringstream err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = cafe::run_command(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs a cafe CLI subcommand in-process; returns (exit_code, stdout, stderr).");

    py::register_exception<cafe::ConfigError>(m, "ConfigError", PyExc_ValueError);
}
