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

#include "gtest/gtest.h"
#include "cafe/io.h"
#include "cafe/unitaries.h"

namespace cafe {
namespace {

using nlohmann::json;

TEST(parse_config, defaults) {
    ExperimentConfig cfg = parse_config(json::object());
    EXPECT_EQ(cfg.seed, 0u);
    EXPECT_EQ(cfg.shots, 2000);
    EXPECT_EQ(cfg.depths, (std::vector<int>{0, 2, 4, 6, 8}));
    ASSERT_EQ(cfg.groups.size(), 1u);
    EXPECT_EQ(cfg.groups[0].name, "cz");
    EXPECT_EQ(cfg.groups[0].layers[0].actual, gates::cz());
    EXPECT_EQ(cfg.sweep.spam_gate, SpamGate::Incoherent);
    EXPECT_EQ(cfg.compare.irb.num_circuits, 20);
}

TEST(parse_config, rejects_unknown_fields) {
    EXPECT_THROW(parse_config(json{{"sed", 3}}), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"fit": {"modle": "cz"}})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"groups": [{"layers": [{"ideal": "cz", "nosie": {}}]}]})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"sweep": {"kind": "depolarizing", "gates": 3}})")), ConfigError);
}

TEST(parse_config, rejects_bad_values) {
    EXPECT_THROW(parse_config(json{{"shots", 0}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"shots", "many"}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"depths", {4, 2}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"seed", -1}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"spam_gate", "noisy"}}), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"groups": [{"name": "a", "layers": [{"ideal": "cz"}]}, {"name": "a", "layers": [{"ideal": "cz"}]}]})")),
                 ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"groups": [{"name": "a", "layers": [{"ideal": "warp"}]}]})")), ConfigError);
    EXPECT_THROW(
        parse_config(json::parse(R"({"groups": [{"layers": [{"ideal": {"gate": "matrix", "real": [[1, 1], [0, 1]]}}]}]})")),
        ConfigError);
}

TEST(parse_config, groups_and_noise) {
    json doc = json::parse(R"({
        "seed": 5, "shots": "exact",
        "groups": [
            {"name": "pair", "layers": [{"ideal": "cz", "actual": {"gate": "fsim_delta", "dtheta": 0.01, "dgamma": 0.02, "dphi": 0.03},
                                         "noise": {"p_depol": 0.01}}], "decoupling": true},
            {"name": "single", "qubits": 1, "layers": [{"ideal": "x", "actual": {"gate": "x_delta", "dmu": 0.05}}],
             "noise": {"p_depol": 0.002, "attach": "all"}}
        ]})");
    ExperimentConfig cfg = parse_config(doc);
    EXPECT_FALSE(cfg.shots.has_value());
    EXPECT_EQ(cfg.sweep.seed, 5u);
    ASSERT_EQ(cfg.groups.size(), 2u);
    EXPECT_EQ(cfg.groups[0].interleave.size(), 1u);
    EXPECT_LE(max_abs(cfg.groups[0].layers[0].actual - fsim_delta(FsimDelta{0.01, 0.02, 0.03})), 1e-15);
    ASSERT_TRUE(cfg.groups[0].layers[0].noise);
    ASSERT_TRUE(cfg.groups[1].layers[0].noise);
    EXPECT_EQ(cfg.groups[1].num_qubits, 1);
    json two_qubit_only = json::parse(
        R"({"groups": [{"qubits": 1, "layers": [{"ideal": "x"}], "noise": {"p_depol": 0.01}}]})");
    EXPECT_THROW(parse_config(two_qubit_only), ConfigError);
}

TEST(gate_from_json, shorthands) {
    EXPECT_EQ(gate_from_json("cz"), gates::cz());
    EXPECT_EQ(gate_from_json("xx"), gates::xx());
    EXPECT_LE(max_abs(gate_from_json(json{{"gate", "rx"}, {"angle", 0.3}}) - gates::rx(0.3)), 1e-15);
    EXPECT_LE(max_abs(gate_from_json(json{{"gate", "fsim"}, {"theta", 0.1}, {"phi", 0.2}}) -
                      fsim(FsimParams{0.1, 0, 0, 0, 0.2})),
              1e-15);
    EXPECT_EQ(gate_from_json(json{{"gate", "identity"}, {"qubits", 2}}), gates::identity(4));
    EXPECT_THROW(gate_from_json(json{{"gate", "rx"}, {"angel", 0.3}}), ConfigError);
}

TEST(config_hash, stable_and_sensitive) {
    json a = json::parse(R"({"seed": 1, "shots": 100})");
    json b = json::parse(R"({"shots": 100, "seed": 1})");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(json::parse(R"({"seed": 2, "shots": 100})")));
    EXPECT_EQ(hex64(0x1234), "0000000000001234");
}

TEST(io, csv_header_and_doubles) {
    std::string h = csv_header(OutputHeader{"run", 0xabcdef, 42});
    EXPECT_NE(h.find("# config_hash: 0000000000abcdef"), std::string::npos);
    EXPECT_NE(h.find("# seed: 42"), std::string::npos);
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(io, dataset_csv_round_trip) {
    RunConfig rc;
    rc.seed = 3;
    CafeDataset ds = run_parallel_groups(
        CycleSpec{{cz_group("g", fsim_delta(FsimDelta{0.02, 0.01, 0.03}), depolarizing(0.01, 4))}}, rc);
    std::string csv = dataset_csv(ds, OutputHeader{"run", 1, 3});
    CafeDataset back = parse_dataset_csv(csv);
    ASSERT_EQ(back.groups.size(), 1u);
    ASSERT_EQ(back.groups[0].points.size(), ds.groups[0].points.size());
    for (size_t k = 0; k < ds.groups[0].points.size(); ++k) {
        EXPECT_EQ(back.groups[0].points[k].n, ds.groups[0].points[k].n);
        EXPECT_EQ(back.groups[0].points[k].f_hat, ds.groups[0].points[k].f_hat);
    }
    EXPECT_THROW(parse_dataset_csv("a,b\n1,2\n"), std::invalid_argument);
}

}  // namespace
}  // namespace cafe
