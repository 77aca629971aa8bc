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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

namespace cafe {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cafe_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return run_command(args, out_, err_);
    }

    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }

    std::string write_config(const std::string &name, const std::string &text) const {
        std::ofstream f(path(name));
        f << text;
        return path(name);
    }

    static std::string slurp(const std::string &p) {
        std::ifstream f(p);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST_F(CliTest, run_ideal_cz_is_perfect) {
    std::string cfg = write_config("ideal_cz.json", R"({"seed": 1, "groups": [{"name": "cz", "layers": [{"ideal": "cz"}]}]})");
    ASSERT_EQ(run({"run", "--config", cfg, "--out", path("o")}), kExitOk) << err_.str();
    std::string csv = slurp(path("o/dataset.csv"));
    EXPECT_NE(csv.find("# config_hash: "), std::string::npos);
    EXPECT_NE(csv.find("# seed: 1"), std::string::npos);
    std::istringstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("group", 0) == 0) {
            continue;
        }
        ++rows;
        EXPECT_NE(line.find(",1,0,"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 5);
    EXPECT_NE(out_.str().find("run:"), std::string::npos);
}

TEST_F(CliTest, identical_config_and_seed_give_identical_bytes) {
    std::string cfg = write_config("noisy.json", R"({
        "groups": [{"name": "g", "layers": [{"ideal": "cz",
            "actual": {"gate": "fsim_delta", "dtheta": 0.02, "dgamma": 0.01, "dphi": 0.03},
            "noise": {"p_depol": 0.01}}]}]})");
    ASSERT_EQ(run({"budget", "--config", cfg, "--seed", "11", "--out", path("a")}), kExitOk) << err_.str();
    ASSERT_EQ(run({"budget", "--config", cfg, "--seed", "11", "--threads", "2", "--out", path("b")}), kExitOk);
    // The output directory and thread count are part of the hashed document, so compare past the header.
    auto body = [](const std::string &s) { return s.substr(s.find("group,")); };
    EXPECT_EQ(body(slurp(path("a/budget.csv"))), body(slurp(path("b/budget.csv"))));
    ASSERT_EQ(run({"budget", "--config", cfg, "--seed", "11", "--out", path("a2")}), kExitOk);
    ASSERT_EQ(run({"budget", "--config", cfg, "--seed", "11", "--out", path("a2")}), kExitOk);
    std::string first = slurp(path("a2/budget.csv"));
    ASSERT_EQ(run({"budget", "--config", cfg, "--seed", "11", "--out", path("a2")}), kExitOk);
    EXPECT_EQ(first, slurp(path("a2/budget.csv")));
    ASSERT_EQ(run({"run", "--config", cfg, "--seed", "11", "--out", path("r")}), kExitOk);
    std::string run1 = slurp(path("r/dataset.csv"));
    std::string json1 = slurp(path("r/dataset.json"));
    ASSERT_EQ(run({"run", "--config", cfg, "--seed", "11", "--out", path("r")}), kExitOk);
    EXPECT_EQ(run1, slurp(path("r/dataset.csv")));
    EXPECT_EQ(json1, slurp(path("r/dataset.json")));
    ASSERT_EQ(run({"run", "--config", cfg, "--seed", "12", "--out", path("r")}), kExitOk);
    EXPECT_NE(run1, slurp(path("r/dataset.csv")));
}

TEST_F(CliTest, flags_override_config) {
    std::string cfg = write_config("c.json", R"({"seed": 3, "shots": 100, "depths": [0, 2, 4, 6]})");
    ASSERT_EQ(run({"run", "--config", cfg, "--seed", "9", "--exact", "--depths", "0,2,4,6,8,10", "--out", path("o")}),
              kExitOk);
    auto j = nlohmann::json::parse(slurp(path("o/dataset.json")));
    EXPECT_EQ(j["seed"], 9);
    EXPECT_EQ(j["shots"], "exact");
    EXPECT_EQ(j["depths"].size(), 6u);
}

TEST_F(CliTest, config_errors_exit_2) {
    EXPECT_EQ(run({"run", "--config", write_config("u.json", R"({"sede": 1})")}), kExitConfig);
    EXPECT_NE(err_.str().find("sede"), std::string::npos);
    EXPECT_EQ(run({"run", "--config", path("missing.json")}), kExitConfig);
    EXPECT_EQ(run({"run", "--config", write_config("bad.json", "{not json")}), kExitConfig);
    EXPECT_EQ(run({"run", "--depths", "0,two"}), kExitConfig);
    EXPECT_EQ(run({"run", "--shots", "10", "--exact"}), kExitConfig);
    EXPECT_EQ(run({"run", "--frobnicate"}), kExitConfig);
    EXPECT_EQ(run({"teleport"}), kExitConfig);
    EXPECT_EQ(run({}), kExitConfig);
    EXPECT_EQ(run({"prep-state", "--out", path("p")}), kExitConfig);
    EXPECT_EQ(run({"prep-state", "--state", "1,0,1,0,0,0,0,0", "--out", path("p")}), kExitConfig);
    EXPECT_EQ(run({"fit", "--data", path("nope.csv")}), kExitConfig);
}

TEST_F(CliTest, fit_non_convergence_exits_3) {
    std::string cfg = write_config("capped.json", R"({
        "shots": "exact",
        "fit": {"max_iterations": 1, "polish_iterations": 0},
        "groups": [{"name": "g", "layers": [{"ideal": "cz",
            "actual": {"gate": "fsim_delta", "dtheta": 0.05, "dgamma": 0.03, "dphi": 0.08},
            "noise": {"p_depol": 0.02}}]}]})");
    EXPECT_EQ(run({"fit", "--config", cfg, "--out", path("o")}), kExitNoConvergence);
    EXPECT_TRUE(fs::exists(path("o/fit.json")));
    EXPECT_EQ(run({"budget", "--config", cfg, "--out", path("o")}), kExitNoConvergence);
}

TEST_F(CliTest, help_exits_0) {
    EXPECT_EQ(run({"--help"}), kExitOk);
    EXPECT_NE(out_.str().find("irb-compare"), std::string::npos);
    EXPECT_EQ(run({"sweep", "--help"}), kExitOk);
}

TEST_F(CliTest, fit_from_saved_data) {
    std::string cfg = write_config("n.json", R"({"groups": [{"name": "g", "layers": [{"ideal": "cz",
            "actual": {"gate": "fsim_delta", "dphi": 0.1}}]}]})");
    ASSERT_EQ(run({"run", "--config", cfg, "--exact", "--out", path("o")}), kExitOk);
    ASSERT_EQ(run({"budget", "--data", path("o/dataset.csv"), "--out", path("f")}), kExitOk) << err_.str();
    auto j = nlohmann::json::parse(slurp(path("f/budget.json")));
    EXPECT_NEAR(j[0]["budget"]["eps_coh"].get<double>(), 0.3 * (1.0 - std::cos(0.1)), 1e-8);
    ASSERT_EQ(run({"fit", "--data", path("o/dataset.csv"), "--model", "quad", "--out", path("q")}), kExitOk);
    EXPECT_EQ(run({"fit", "--data", path("o/dataset.csv"), "--model", "general", "--out", path("q")}), kExitConfig);
}

TEST_F(CliTest, validate_ref_orders_references) {
    ASSERT_EQ(run({"validate-ref", "--out", path("v")}), kExitOk) << err_.str();
    std::string csv = slurp(path("v/validate_ref.csv"));
    EXPECT_NE(csv.find("ideal_cz,"), std::string::npos);
    EXPECT_NE(csv.find("true_unitary,"), std::string::npos);
}

TEST_F(CliTest, decaf_groups_prep_sweep_and_irb) {
    std::string cfg = write_config("d.json", R"({"shots": "exact", "groups": [{"name": "g", "layers": [{"ideal": "cz",
            "actual": {"gate": "fsim", "gamma": 0.05}}]}]})");
    ASSERT_EQ(run({"decaf", "--config", cfg, "--out", path("d")}), kExitOk) << err_.str();
    EXPECT_TRUE(fs::exists(path("d/decaf.csv")));
    EXPECT_TRUE(fs::exists(path("d/decaf_budget.csv")));

    std::string groups = write_config("g.json", R"({"shots": "exact", "groups": [
        {"name": "a", "qubits": 1, "layers": [{"ideal": "x"}], "noise": {"p_depol": 0.001, "attach": "all"}},
        {"name": "b", "qubits": 1, "layers": [{"ideal": "x", "actual": {"gate": "x_delta", "dmu": 0.2}}],
         "noise": {"p_depol": 0.001, "attach": "all"}}]})");
    ASSERT_EQ(run({"groups", "--config", groups, "--out", path("g")}), kExitOk) << err_.str();
    auto j = nlohmann::json::parse(slurp(path("g/groups.json")));
    EXPECT_EQ(j["ranking"][0]["group"], "b");

    ASSERT_EQ(run({"prep-state", "--state", "0.5,0,0.5,0,0.5,0,0,0.5", "--out", path("p")}), kExitOk) << err_.str();
    auto prep = nlohmann::json::parse(slurp(path("p/prep.json")));
    EXPECT_EQ(prep["entanglers"], 1);
    EXPECT_LE(prep["roundtrip_infidelity"].get<double>(), 1e-10);

    ASSERT_EQ(run({"sweep", "--gates", "2", "--kind", "damping", "--exact", "--out", path("s")}), kExitOk) << err_.str();
    EXPECT_TRUE(fs::exists(path("s/sweep.csv")));
    auto summary = nlohmann::json::parse(slurp(path("s/sweep_summary.json")));
    EXPECT_TRUE(summary.contains("mae_infidelity"));

    std::string irb = write_config("i.json", R"({"irb": {"depths": [5, 10, 15], "num_circuits": 2}})");
    ASSERT_EQ(run({"irb-compare", "--config", irb, "--gates", "2", "--seed", "7", "--out", path("i")}), kExitOk)
        << err_.str();
    auto cmp = nlohmann::json::parse(slurp(path("i/irb_compare.json")));
    EXPECT_EQ(cmp["circuits"]["cafe"], 80);
    EXPECT_EQ(cmp["circuits"]["irb"], 12);
    EXPECT_EQ(cmp["seed"], 7);
}

}  // namespace
}  // namespace cafe
