// Copyright 2026 The xtqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "xtqm/cli/config.hpp"
#include "xtqm/cli/experiments.hpp"
#include "xtqm/cli/report.hpp"
#include "xtqm/numeric_policy.hpp"

namespace xtqm::cli {
namespace {

namespace fs = std::filesystem;

std::vector<ParamSpec> sample_schema() {
    return {{"seed", ParamKind::integer, nullptr, "seed"},
            {"beta", ParamKind::number, 1.0, "inverse temperature"},
            {"sizes", ParamKind::integer_list, Json::array({2, 3}), "sizes"},
            {"flag", ParamKind::boolean, true, "flag"}};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("xtqm_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Toml, ScalarsArraysAndTables) {
    const Json j = parse_toml(R"(# experiment file
experiment = "map"
seed = 1_000
beta = 2.5e-1   # trailing comment
name = 'lit"eral'
escaped = "a\"b\\c"
ok = false
sizes = [2, 3,
         4,]
empty = []

[policy]
equality = 1e-9
)");
    EXPECT_EQ(j.at("experiment"), "map");
    EXPECT_EQ(j.at("seed").get<std::int64_t>(), 1000);
    EXPECT_TRUE(j.at("seed").is_number_integer());
    EXPECT_DOUBLE_EQ(j.at("beta").get<double>(), 0.25);
    EXPECT_EQ(j.at("name"), "lit\"eral");
    EXPECT_EQ(j.at("escaped"), "a\"b\\c");
    EXPECT_EQ(j.at("ok"), false);
    EXPECT_EQ(j.at("sizes"), Json::array({2, 3, 4}));
    EXPECT_TRUE(j.at("empty").empty());
    EXPECT_DOUBLE_EQ(j.at("policy.equality").get<double>(), 1e-9);
}

TEST(Toml, Rejections) {
    for (const char *bad : {"a = ", "a = 1\na = 2", "a = {x = 1}", "a = \"open", "a = [1, 2", "a = inf",
                            "a = nan", "a = 1__0", "a = _1", "[[arr]]", "[bad name]", "no equals", "a = 1 2",
                            "a = \"\\q\""}) {
        EXPECT_THROW(parse_toml(bad), ConfigError) << bad;
    }
    EXPECT_THROW(load_toml_file("/nonexistent/xtqm.toml"), ConfigError);
}

TEST(Overrides, ValuesAreTypedWhenPossible) {
    Json raw = Json::object();
    apply_override(raw, "seed=7");
    apply_override(raw, "beta = 0.5");
    apply_override(raw, "sizes=[4,5]");
    apply_override(raw, "hamiltonian=sigma_x");
    EXPECT_TRUE(raw.at("seed").is_number_integer());
    EXPECT_DOUBLE_EQ(raw.at("beta").get<double>(), 0.5);
    EXPECT_EQ(raw.at("sizes"), Json::array({4, 5}));
    EXPECT_EQ(raw.at("hamiltonian"), "sigma_x");
    EXPECT_THROW(apply_override(raw, "novalue"), ConfigError);
    EXPECT_THROW(apply_override(raw, "bad key=1"), ConfigError);
}

TEST(ResolveConfig, DefaultsPromotionAndRejections) {
    const ExperimentConfig cfg = resolve_config({{"seed", 3}, {"beta", 2}}, sample_schema());
    EXPECT_EQ(cfg.params.seed(), 3u);
    EXPECT_DOUBLE_EQ(cfg.params.number("beta"), 2.0);
    EXPECT_EQ(cfg.params.integers("sizes"), (std::vector<std::int64_t>{2, 3}));
    EXPECT_TRUE(cfg.params.boolean("flag"));
    EXPECT_EQ(cfg.output_dir, fs::path("xtqm_out"));

    EXPECT_THROW(resolve_config({{"beta", 2.0}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"typo", 2.0}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1.5}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"flag", 1}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"sizes", Json::array({1.5})}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", -1}}, sample_schema()).params.seed(), ConfigError);
    EXPECT_THROW(resolve_config(Json::array(), sample_schema()), ConfigError);
}

TEST(ResolveConfig, PolicyOverrides) {
    const ExperimentConfig cfg = resolve_config({{"seed", 1}, {"policy.equality", 1e-9}}, sample_schema());
    EXPECT_DOUBLE_EQ(cfg.policy.at("equality").get<double>(), 1e-9);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"policy.bogus", 1.0}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"policy.equality", -1.0}}, sample_schema()), ConfigError);
    EXPECT_THROW(resolve_config({{"seed", 1}, {"policy.dimension_cap", 2.5}}, sample_schema()), ConfigError);
}

TEST(Report, DoubleFormatting) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
    EXPECT_EQ(format_short(0.30000000000000004), "0.3");
}

TEST(Report, CsvQuotingAndShape) {
    Table t({"name", "value", "count"});
    Table::Row row;
    row << "a,\"b\"" << 0.5 << 3;
    t.add(row);
    EXPECT_EQ(t.to_csv(), "name,value,count\n\"a,\"\"b\"\"\",0.5,3\n");
    Table::Row short_row;
    short_row << 1.0;
    EXPECT_ANY_THROW(t.add(short_row));
}

TEST(Report, PassedSemantics) {
    RunReport empty("x", Json::object());
    EXPECT_FALSE(empty.passed());
    RunReport r("x", Json::object());
    EXPECT_TRUE(r.check_close("close", 1.0, 1.0 + 1e-13, 1e-12));
    EXPECT_TRUE(r.check_at_most("at most", 1.0, 1.0));
    EXPECT_TRUE(r.check_at_least("at least", 2.0, 1.0));
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.check_at_most("nan", std::numeric_limits<double>::quiet_NaN(), 1.0));
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.checks().size(), 4u);
}

TEST(Registry, AllExperimentsRegistered) {
    const std::set<std::string> expected = {"map",        "timedep-map",    "thermal",      "qubit-appendix-d",
                                            "purify",     "p0-modes",       "propagator",   "matsubara",
                                            "covariance", "bogoliubov",     "vacuum-scaling", "classical-kg",
                                            "pb-generators", "dirac"};
    std::set<std::string> names;
    for (const auto &e : registry()) {
        EXPECT_TRUE(names.insert(e.name).second) << e.name;
        EXPECT_FALSE(e.schema.empty()) << e.name;
        EXPECT_FALSE(e.description.empty()) << e.name;
        EXPECT_TRUE(static_cast<bool>(e.run)) << e.name;
    }
    EXPECT_EQ(names, expected);
    EXPECT_EQ(find_experiment("nope"), nullptr);
}

TEST(RunExperiment, ConfigErrors) {
    EXPECT_THROW(run_experiment(Json::object()), ConfigError);
    EXPECT_THROW(run_experiment({{"experiment", "nope"}}), ConfigError);
    EXPECT_THROW(run_experiment({{"experiment", "map"}}), ConfigError);
}

TEST(RunExperiment, CsvIsDeterministic) {
    const Json raw = {{"experiment", "map"}, {"seed", 11}, {"trials", 10}, {"swap_trials", 10}};
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    RunReport first = run_experiment(raw);
    RunReport second = run_experiment(raw);
    EXPECT_TRUE(first.passed());
    const auto fa = first.write(a);
    const auto fb = second.write(b);
    ASSERT_EQ(fa.size(), fb.size());
    std::size_t csv = 0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (fa[i].extension() == ".csv") {
            ++csv;
            EXPECT_EQ(slurp(fa[i]), slurp(fb[i])) << fa[i];
        }
    }
    EXPECT_GT(csv, 0u);
}

TEST(RunExperiment, PolicyIsRestoredAfterRun) {
    const NumericPolicy before = global_policy();
    EXPECT_TRUE(run_experiment({{"experiment", "p0-modes"}, {"policy.equality", 0.25}}).passed());
    EXPECT_EQ(global_policy().equality, before.equality);
    EXPECT_THROW(run_experiment({{"experiment", "p0-modes"}, {"policy.equality", 0.25}, {"N", Json::array({0})}}),
                 InvalidArgument);
    EXPECT_EQ(global_policy().equality, before.equality);
}

TEST(MainCli, ExitCodes) {
    const fs::path out = scratch("main");
    const std::string out_str = out.string();
    const char *list[] = {"xtqm", "list"};
    EXPECT_EQ(main_cli(2, const_cast<char **>(list)), 0);
    const char *schema[] = {"xtqm", "schema", "map"};
    EXPECT_EQ(main_cli(3, const_cast<char **>(schema)), 0);
    const char *bad_schema[] = {"xtqm", "schema", "nope"};
    EXPECT_EQ(main_cli(3, const_cast<char **>(bad_schema)), 2);
    const char *missing_seed[] = {"xtqm", "run", "-e", "map", "-o", out_str.c_str()};
    EXPECT_EQ(main_cli(6, const_cast<char **>(missing_seed)), 2);
    const char *unknown_key[] = {"xtqm", "run", "-e", "p0-modes", "-s", "seed=1", "-o", out_str.c_str()};
    EXPECT_EQ(main_cli(8, const_cast<char **>(unknown_key)), 2);
    const char *no_command[] = {"xtqm"};
    EXPECT_EQ(main_cli(1, const_cast<char **>(no_command)), 2);
    const char *map[] = {"xtqm", "run", "-e", "map", "-s", "seed=7", "-s", "d=[3]", "-s", "N=[4]", "-o", out_str.c_str()};
    EXPECT_EQ(main_cli(12, const_cast<char **>(map)), 0);
    const char *ok[] = {"xtqm", "run", "-e", "p0-modes", "-o", out_str.c_str()};
    EXPECT_EQ(main_cli(6, const_cast<char **>(ok)), 0);
    EXPECT_TRUE(fs::exists(out / "p0-modes.json"));

    const fs::path toml = out / "run.toml";
    std::ofstream(toml) << "experiment = \"p0-modes\"\nN = [2, 4]\n";
    const std::string toml_str = toml.string();
    const char *from_file[] = {"xtqm", "run", "-c", toml_str.c_str(), "-o", out_str.c_str()};
    EXPECT_EQ(main_cli(6, const_cast<char **>(from_file)), 0);
}

}  // namespace
}  // namespace xtqm::cli
