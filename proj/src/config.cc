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

#include "cafe/config.h"

#include <cstdio>
#include <fstream>
#include <set>

#include "cafe/unitaries.h"

namespace cafe {

using nlohmann::json;

namespace {

void check_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError(where + ": unknown field '" + item.key() + "'");
        }
    }
}

double number(const json &obj, const char *key, double fallback, const std::string &where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(where + "." + key + ": expected a number");
    }
    return v.get<double>();
}

int integer(const json &obj, const char *key, int fallback, const std::string &where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(where + "." + key + ": expected an integer");
    }
    return v.get<int>();
}

bool boolean(const json &obj, const char *key, bool fallback, const std::string &where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(where + "." + key + ": expected true or false");
    }
    return v.get<bool>();
}

std::string text(const json &obj, const char *key, const std::string &fallback, const std::string &where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError(where + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

std::vector<int> int_list(const json &v, const std::string &where) {
    if (!v.is_array()) {
        throw ConfigError(where + ": expected a list of integers");
    }
    std::vector<int> out;
    for (const auto &x : v) {
        if (!x.is_number_integer()) {
            throw ConfigError(where + ": expected a list of integers");
        }
        out.push_back(x.get<int>());
    }
    return out;
}

std::optional<int> parse_shots(const json &v, const std::string &where) {
    if (v.is_string() && v.get<std::string>() == "exact") {
        return std::nullopt;
    }
    if (v.is_number_integer() && v.get<int>() > 0) {
        return v.get<int>();
    }
    throw ConfigError(where + ": expected a positive integer or \"exact\"");
}

CMatrix matrix_from_json(const json &spec, const std::string &where) {
    const json &re = spec.at("real");
    json im = spec.contains("imag") ? spec.at("imag") : json();
    if (!re.is_array() || re.empty()) {
        throw ConfigError(where + ".real: expected a square list of rows");
    }
    const auto n = static_cast<Eigen::Index>(re.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (!re[r].is_array() || static_cast<Eigen::Index>(re[r].size()) != n) {
            throw ConfigError(where + ".real: expected a square list of rows");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            double imag = 0.0;
            if (!im.is_null()) {
                if (!im.is_array() || static_cast<Eigen::Index>(im.size()) != n || im[r].size() != re[r].size()) {
                    throw ConfigError(where + ".imag: shape does not match real");
                }
                imag = im[r][c].get<double>();
            }
            m(r, c) = Complex(re[r][c].get<double>(), imag);
        }
    }
    if (!is_unitary(m, 1e-9)) {
        throw ConfigError(where + ": matrix is not unitary");
    }
    return m;
}

QubitGroup group_from_json(const json &g, size_t index) {
    std::string where = "groups[" + std::to_string(index) + "]";
    check_keys(g, {"name", "qubits", "layers", "noise", "decoupling", "reference"}, where);
    QubitGroup group;
    group.name = text(g, "name", "g" + std::to_string(index), where);
    group.num_qubits = integer(g, "qubits", 2, where);
    if (group.num_qubits != 1 && group.num_qubits != 2) {
        throw ConfigError(where + ".qubits: must be 1 or 2");
    }
    if (!g.contains("layers") || !g.at("layers").is_array() || g.at("layers").empty()) {
        throw ConfigError(where + ".layers: expected a non-empty list");
    }
    size_t k = 0;
    for (const auto &layer : g.at("layers")) {
        std::string lw = where + ".layers[" + std::to_string(k++) + "]";
        check_keys(layer, {"label", "ideal", "actual", "noise"}, lw);
        if (!layer.contains("ideal")) {
            throw ConfigError(lw + ": missing 'ideal'");
        }
        CMatrix ideal = gate_from_json(layer.at("ideal"));
        CMatrix actual = layer.contains("actual") ? gate_from_json(layer.at("actual")) : ideal;
        std::optional<KrausChannel> noise;
        if (layer.contains("noise")) {
            NoiseSpec spec = noise_from_json(layer.at("noise"));
            if (!spec.is_noiseless()) {
                noise = spec.channel(group.num_qubits);
            }
        }
        std::string label = text(layer, "label", layer.at("ideal").is_string() ? layer.at("ideal").get<std::string>() : "layer", lw);
        group.layers.push_back(CycleLayer::make(label, ideal, actual, std::move(noise)));
    }
    if (g.contains("noise")) {
        NoiseSpec spec = noise_from_json(g.at("noise"));
        if (!spec.is_noiseless()) {
            KrausChannel channel = spec.channel(group.num_qubits);
            int attached = 0;
            for (auto &layer : group.layers) {
                if (spec.attach == AttachPoint::AllLayers || layer.is_two_qubit()) {
                    KrausChannel combined = layer.noise ? compose(*layer.noise, channel) : channel;
                    layer.noise = std::make_shared<const KrausChannel>(std::move(combined));
                    ++attached;
                }
            }
            if (attached == 0) {
                throw ConfigError(where + ".noise: no two-qubit layer to attach to (use \"attach\": \"all\")");
            }
        }
    }
    if (g.contains("reference")) {
        group.reference = gate_from_json(g.at("reference"));
    }
    if (boolean(g, "decoupling", false, where)) {
        group = with_xx_decoupling(std::move(group));
    }
    try {
        group.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return group;
}

SweepDistributions distributions_from_json(const json &d, const std::string &where) {
    check_keys(d, {"p_depol_max", "angle_std", "damping_std", "split_mean", "split_std"}, where);
    SweepDistributions out;
    out.p_depol_max = number(d, "p_depol_max", out.p_depol_max, where);
    out.angle_std = number(d, "angle_std", out.angle_std, where);
    out.damping_std = number(d, "damping_std", out.damping_std, where);
    out.split_mean = number(d, "split_mean", out.split_mean, where);
    out.split_std = number(d, "split_std", out.split_std, where);
    return out;
}

}  // namespace

CMatrix gate_from_json(const json &spec) {
    const std::string where = "gate";
    if (spec.is_string()) {
        return gate_from_json(json{{"gate", spec.get<std::string>()}});
    }
    if (!spec.is_object() || !spec.contains("gate") || !spec.at("gate").is_string()) {
        throw ConfigError("gate: expected a name or an object with a 'gate' field");
    }
    std::string name = spec.at("gate").get<std::string>();
    std::string w = "gate '" + name + "'";
    if (name == "cz" || name == "x" || name == "h" || name == "xx" || name == "s") {
        check_keys(spec, {"gate"}, w);
        if (name == "cz") {
            return gates::cz();
        }
        if (name == "x") {
            return gates::x();
        }
        if (name == "h") {
            return gates::h();
        }
        if (name == "s") {
            return gates::s();
        }
        return gates::xx();
    }
    if (name == "identity") {
        check_keys(spec, {"gate", "qubits"}, w);
        int q = integer(spec, "qubits", 2, w);
        if (q != 1 && q != 2) {
            throw ConfigError(w + ".qubits: must be 1 or 2");
        }
        return gates::identity(1 << q);
    }
    if (name == "rx" || name == "ry" || name == "rz") {
        check_keys(spec, {"gate", "angle"}, w);
        double a = number(spec, "angle", 0.0, w);
        return name == "rx" ? gates::rx(a) : name == "ry" ? gates::ry(a) : gates::rz(a);
    }
    if (name == "fsim") {
        check_keys(spec, {"gate", "theta", "zeta", "chi", "gamma", "phi"}, w);
        FsimParams p;
        p.theta = number(spec, "theta", 0.0, w);
        p.zeta = number(spec, "zeta", 0.0, w);
        p.chi = number(spec, "chi", 0.0, w);
        p.gamma = number(spec, "gamma", 0.0, w);
        p.phi = number(spec, "phi", 0.0, w);
        return fsim(p);
    }
    if (name == "fsim_delta") {
        check_keys(spec, {"gate", "dtheta", "dgamma", "dphi"}, w);
        return fsim_delta(FsimDelta{number(spec, "dtheta", 0.0, w), number(spec, "dgamma", 0.0, w), number(spec, "dphi", 0.0, w)});
    }
    if (name == "x_delta") {
        check_keys(spec, {"gate", "dmu"}, w);
        return x_delta(XDelta{number(spec, "dmu", 0.0, w)});
    }
    if (name == "matrix") {
        check_keys(spec, {"gate", "real", "imag"}, w);
        if (!spec.contains("real")) {
            throw ConfigError(w + ": missing 'real'");
        }
        return matrix_from_json(spec, w);
    }
    throw ConfigError("gate: unknown gate '" + name + "'");
}

NoiseSpec noise_from_json(const json &spec) {
    const std::string where = "noise";
    check_keys(spec, {"p_depol", "damping", "attach"}, where);
    NoiseSpec out;
    out.p_depol = number(spec, "p_depol", 0.0, where);
    if (spec.contains("damping")) {
        if (!spec.at("damping").is_array()) {
            throw ConfigError("noise.damping: expected a list with one entry per qubit");
        }
        for (const auto &d : spec.at("damping")) {
            check_keys(d, {"p_decay", "p_phaseflip"}, "noise.damping");
            out.damping.push_back({number(d, "p_decay", 0.0, where), number(d, "p_phaseflip", 0.0, where)});
        }
    }
    std::string attach = text(spec, "attach", "two_qubit", where);
    if (attach == "two_qubit") {
        out.attach = AttachPoint::TwoQubitLayers;
    } else if (attach == "all") {
        out.attach = AttachPoint::AllLayers;
    } else {
        throw ConfigError("noise.attach: expected \"two_qubit\" or \"all\"");
    }
    try {
        out.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return out;
}

RunConfig ExperimentConfig::run_config() const {
    RunConfig rc;
    rc.depths = depths;
    rc.shots = shots;
    rc.seed = seed;
    rc.inversion = inversion;
    rc.spam_gate = spam_gate;
    rc.threads = threads;
    return rc;
}

FitOptions ExperimentConfig::fit_options() const {
    FitOptions o;
    o.model = model;
    o.even_only = !all_depths;
    o.max_iterations = max_iterations;
    o.polish_iterations = polish_iterations;
    return o;
}

ExperimentConfig parse_config(const json &doc) {
    check_keys(doc, {"seed", "shots", "depths", "out", "threads", "inversion", "spam_gate", "groups", "fit", "sweep", "irb",
                     "state", "validate"},
               "config");
    ExperimentConfig cfg;
    cfg.source = doc;
    try {
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_integer() || doc.at("seed").get<int64_t>() < 0) {
                throw ConfigError("config.seed: expected a non-negative integer");
            }
            cfg.seed = doc.at("seed").get<uint64_t>();
        }
        if (doc.contains("shots")) {
            cfg.shots = parse_shots(doc.at("shots"), "config.shots");
        }
        if (doc.contains("depths")) {
            cfg.depths = int_list(doc.at("depths"), "config.depths");
        }
        cfg.out = text(doc, "out", cfg.out, "config");
        cfg.threads = integer(doc, "threads", cfg.threads, "config");
        if (cfg.threads < 0) {
            throw ConfigError("config.threads: must be non-negative");
        }
        std::string inversion = text(doc, "inversion", "gadget", "config");
        if (inversion == "gadget") {
            cfg.inversion = Inversion::Gadget;
        } else if (inversion == "abstract") {
            cfg.inversion = Inversion::Abstract;
        } else {
            throw ConfigError("config.inversion: expected \"gadget\" or \"abstract\"");
        }
        cfg.spam_gate = parse_spam_gate(text(doc, "spam_gate", "ideal", "config"));

        if (doc.contains("groups")) {
            if (!doc.at("groups").is_array()) {
                throw ConfigError("config.groups: expected a list");
            }
            for (size_t k = 0; k < doc.at("groups").size(); ++k) {
                cfg.groups.push_back(group_from_json(doc.at("groups")[k], k));
            }
        } else {
            cfg.groups.push_back(cz_group("cz", gates::cz()));
        }
        std::set<std::string> names;
        for (const auto &g : cfg.groups) {
            if (!names.insert(g.name).second) {
                throw ConfigError("config.groups: duplicate group name '" + g.name + "'");
            }
        }

        if (doc.contains("fit")) {
            const json &f = doc.at("fit");
            check_keys(f, {"model", "all_depths", "max_iterations", "polish_iterations"}, "fit");
            cfg.model = parse_model(text(f, "model", "cz", "fit"));
            cfg.all_depths = boolean(f, "all_depths", false, "fit");
            cfg.max_iterations = integer(f, "max_iterations", cfg.max_iterations, "fit");
            cfg.polish_iterations = integer(f, "polish_iterations", cfg.polish_iterations, "fit");
            if (cfg.max_iterations < 1 || cfg.polish_iterations < 0) {
                throw ConfigError("fit: max_iterations must be positive and polish_iterations non-negative");
            }
        }

        SweepSpec &sw = cfg.sweep;
        if (doc.contains("sweep")) {
            const json &s = doc.at("sweep");
            check_keys(s, {"kind", "num_gates", "distributions", "force_noiseless", "spam_gate"}, "sweep");
            sw.kind = parse_noise_kind(text(s, "kind", "depolarizing", "sweep"));
            sw.num_gates = integer(s, "num_gates", sw.num_gates, "sweep");
            if (s.contains("distributions")) {
                sw.distributions = distributions_from_json(s.at("distributions"), "sweep.distributions");
            }
            sw.force_noiseless = boolean(s, "force_noiseless", false, "sweep");
            sw.spam_gate = parse_spam_gate(text(s, "spam_gate", spam_gate_name(sw.spam_gate), "sweep"));
        }
        sw.shots = cfg.shots;
        sw.depths = cfg.depths;
        sw.seed = cfg.seed;
        sw.threads = cfg.threads;

        CompareSpec &cmp = cfg.compare;
        if (doc.contains("irb")) {
            const json &r = doc.at("irb");
            check_keys(r, {"gates", "depths", "num_circuits", "kind", "single_qubit_noise", "distributions"}, "irb");
            cmp.num_gates = integer(r, "gates", cmp.num_gates, "irb");
            if (r.contains("depths")) {
                cmp.irb.depths = int_list(r.at("depths"), "irb.depths");
            }
            cmp.irb.num_circuits = integer(r, "num_circuits", cmp.irb.num_circuits, "irb");
            cmp.kind = parse_noise_kind(text(r, "kind", "damping", "irb"));
            if (r.contains("single_qubit_noise")) {
                NoiseSpec ns = noise_from_json(r.at("single_qubit_noise"));
                if (!ns.is_noiseless()) {
                    cmp.irb.single_qubit_noise = ns.channel(2);
                }
            }
            if (r.contains("distributions")) {
                cmp.distributions = distributions_from_json(r.at("distributions"), "irb.distributions");
            }
        }
        cmp.seed = cfg.seed;
        cmp.shots = cfg.shots;
        cmp.cafe_depths = cfg.depths;
        cmp.threads = cfg.threads;
        cmp.irb.shots = cfg.shots;
        cmp.irb.seed = cfg.seed;

        if (doc.contains("state")) {
            const json &s = doc.at("state");
            check_keys(s, {"amplitudes"}, "state");
            if (!s.contains("amplitudes") || !s.at("amplitudes").is_array()) {
                throw ConfigError("state.amplitudes: expected a list of [re, im] pairs");
            }
            const json &a = s.at("amplitudes");
            CVector v(static_cast<Eigen::Index>(a.size()));
            for (size_t k = 0; k < a.size(); ++k) {
                if (a[k].is_number()) {
                    v[k] = a[k].get<double>();
                } else if (a[k].is_array() && a[k].size() == 2) {
                    v[k] = Complex(a[k][0].get<double>(), a[k][1].get<double>());
                } else {
                    throw ConfigError("state.amplitudes: expected numbers or [re, im] pairs");
                }
            }
            cfg.state = v;
        }

        if (doc.contains("validate")) {
            const json &v = doc.at("validate");
            check_keys(v, {"true_gate", "noise", "references"}, "validate");
            if (v.contains("true_gate")) {
                cfg.true_gate = gate_from_json(v.at("true_gate"));
            }
            if (v.contains("noise")) {
                NoiseSpec ns = noise_from_json(v.at("noise"));
                if (!ns.is_noiseless()) {
                    cfg.true_noise = ns.channel(2);
                }
            }
            if (v.contains("references")) {
                for (const auto &r : v.at("references")) {
                    check_keys(r, {"name", "gate"}, "validate.references");
                    if (!r.contains("gate")) {
                        throw ConfigError("validate.references: missing 'gate'");
                    }
                    cfg.references.push_back({text(r, "name", "ref" + std::to_string(cfg.references.size()), "validate.references"),
                                              gate_from_json(r.at("gate"))});
                }
            }
        }

        cfg.run_config().validate();
        sw.validate();
    } catch (const ConfigError &) {
        throw;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

json load_config_json(const std::string &path) {
    if (path.empty()) {
        return json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        json doc = json::parse(in);
        if (!doc.is_object()) {
            throw ConfigError("config file '" + path + "' must hold a JSON object");
        }
        return doc;
    } catch (const json::parse_error &e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

uint64_t config_hash(const json &doc) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace cafe
