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

#include "xtqm/cli/experiments.hpp"

#include <chrono>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "xtqm/numeric_policy.hpp"

namespace xtqm::cli {

namespace {

// Restores the global numeric policy when a run ends.
class PolicyScope {
   public:
    explicit PolicyScope(const Json &overrides) : saved_(global_policy()) {
        NumericPolicy &p = global_policy();
        for (const auto &[field, value] : overrides.items()) {
            const double v = value.get<double>();
            if (field == "equality") {
                p.equality = v;
            } else if (field == "overlap") {
                p.overlap = v;
            } else if (field == "degenerate_normalization") {
                p.degenerate_normalization = v;
            } else if (field == "normality") {
                p.normality = v;
            } else if (field == "truncation_bound") {
                p.truncation_bound = v;
            } else if (field == "zero_eigenvalue") {
                p.zero_eigenvalue = v;
            } else if (field == "unit_norm") {
                p.unit_norm = v;
            } else if (field == "dimension_cap") {
                p.dimension_cap = value.get<std::size_t>();
            }
        }
    }
    ~PolicyScope() {
        global_policy() = saved_;
    }
    PolicyScope(const PolicyScope &) = delete;
    PolicyScope &operator=(const PolicyScope &) = delete;

   private:
    NumericPolicy saved_;
};

std::vector<Experiment> build_registry() {
    std::vector<Experiment> all = quantum_experiments();
    for (auto &e : field_experiments()) {
        all.push_back(std::move(e));
    }
    std::set<std::string> names;
    for (const auto &e : all) {
        if (!names.insert(e.name).second) {
            throw std::logic_error("duplicate experiment name " + e.name);
        }
    }
    return all;
}

void print_schema(const Experiment &e) {
    std::cout << e.name << ": " << e.description << "\n";
    for (const auto &spec : e.schema) {
        std::cout << "  " << spec.key << " (" << to_string(spec.kind) << ") = "
                  << (spec.default_value.is_null() ? std::string("<required>") : spec.default_value.dump())
                  << "  " << spec.doc << "\n";
    }
}

}  // namespace

const std::vector<Experiment> &registry() {
    static const std::vector<Experiment> all = build_registry();
    return all;
}

const Experiment *find_experiment(const std::string &name) {
    for (const auto &e : registry()) {
        if (e.name == name) {
            return &e;
        }
    }
    return nullptr;
}

RunReport run_experiment(const Json &raw, ExperimentConfig *resolved) {
    if (!raw.contains(kExperimentKey) || !raw.at(kExperimentKey).is_string()) {
        throw ConfigError("config does not name an experiment");
    }
    const std::string name = raw.at(kExperimentKey).get<std::string>();
    const Experiment *e = find_experiment(name);
    if (e == nullptr) {
        throw ConfigError("unknown experiment '" + name + "' (see `xtqm list`)");
    }
    ExperimentConfig cfg = resolve_config(raw, e->schema);
    RunReport report(e->name, cfg.params.json());
    const auto start = std::chrono::steady_clock::now();
    {
        PolicyScope scope(cfg.policy);
        e->run(cfg.params, report);
    }
    report.set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (resolved != nullptr) {
        *resolved = std::move(cfg);
    }
    return report;
}

int main_cli(int argc, char **argv) {
    CLI::App app{"xtqm: spacetime-extended quantum mechanics experiments"};
    app.require_subcommand(1);

    auto *list = app.add_subcommand("list", "List registered experiments");
    auto *schema = app.add_subcommand("schema", "Show the parameters of one or every experiment");
    std::string schema_name;
    schema->add_option("name", schema_name, "Experiment name");

    auto *run = app.add_subcommand("run", "Run one experiment");
    std::string config_path;
    std::string experiment;
    std::string output;
    std::vector<std::string> overrides;
    run->add_option("--config,-c", config_path, "TOML experiment file");
    run->add_option("--experiment,-e", experiment, "Experiment name (instead of or on top of --config)");
    run->add_option("--set,-s", overrides, "Override key=value")->take_all();
    run->add_option("--output,-o", output, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto &e : registry()) {
                std::cout << e.name << "\t" << e.description << "\n";
            }
            return 0;
        }
        if (schema->parsed()) {
            if (schema_name.empty()) {
                for (const auto &e : registry()) {
                    print_schema(e);
                }
                return 0;
            }
            const Experiment *e = find_experiment(schema_name);
            if (e == nullptr) {
                std::cerr << "error: unknown experiment '" << schema_name << "'\n";
                return 2;
            }
            print_schema(*e);
            return 0;
        }

        Json raw = Json::object();
        if (!config_path.empty()) {
            raw = load_toml_file(config_path);
        }
        if (!experiment.empty()) {
            raw[kExperimentKey] = experiment;
        }
        if (!output.empty()) {
            raw[kOutputKey] = output;
        }
        for (const auto &o : overrides) {
            apply_override(raw, o);
        }
        ExperimentConfig cfg;
        RunReport report = run_experiment(raw, &cfg);
        const auto files = report.write(cfg.output_dir);
        for (const auto &c : report.checks()) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << format_double(c.measured)
                      << " " << c.relation << " " << format_double(c.tolerance) << "\n";
        }
        for (const auto &f : files) {
            std::cout << "wrote " << f.string() << "\n";
        }
        std::cout << (report.passed() ? "overall: PASS" : "overall: FAIL") << "\n";
        return report.passed() ? 0 : 1;
    } catch (const ConfigError &err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const InvalidArgument &err) {
        std::cerr << "invalid input: " << err.what() << "\n";
        return 2;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}

}  // namespace xtqm::cli
