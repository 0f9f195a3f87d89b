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

#ifndef XTQM_CLI_EXPERIMENTS_HPP
#define XTQM_CLI_EXPERIMENTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "xtqm/cli/config.hpp"
#include "xtqm/cli/report.hpp"

namespace xtqm::cli {

struct Experiment {
    std::string name;
    std::string description;
    std::vector<ParamSpec> schema;
    std::function<void(const Params &, RunReport &)> run;
};

/// Every registered experiment, in listing order.
const std::vector<Experiment> &registry();
const Experiment *find_experiment(const std::string &name);

std::vector<Experiment> quantum_experiments();
std::vector<Experiment> field_experiments();

/// Resolves `raw` (which must name the experiment) and runs it with policy overrides applied.
/// Config problems throw ConfigError; the report is not written.
RunReport run_experiment(const Json &raw, ExperimentConfig *resolved = nullptr);

/// Entry point of the `xtqm` executable; returns the process exit status.
int main_cli(int argc, char **argv);

}  // namespace xtqm::cli

#endif
