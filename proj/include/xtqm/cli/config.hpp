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

#ifndef XTQM_CLI_CONFIG_HPP
#define XTQM_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "xtqm/errors.hpp"

namespace xtqm::cli {

using Json = nlohmann::json;

class ConfigError : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

/// Parses the TOML subset used by experiment files: comments, [table] headers, bare or dotted
/// keys, strings, integers, floats, booleans and (nested) arrays. Returns a flat object whose
/// keys carry the table prefix, e.g. "policy.equality".
Json parse_toml(const std::string &text);
Json load_toml_file(const std::filesystem::path &path);

/// Value part of a `--set key=value` override; text that is not a TOML value is taken as a string.
Json parse_override_value(const std::string &text);

enum class ParamKind { integer, number, boolean, string, integer_list, number_list };

struct ParamSpec {
    std::string key;
    ParamKind kind;
    /// null for required keys
    Json default_value;
    std::string doc;
};

/// Resolved experiment parameters with typed access.
class Params {
   public:
    Params() = default;
    explicit Params(Json values) : values_(std::move(values)) {
    }

    std::int64_t integer(const std::string &key) const;
    std::size_t count(const std::string &key) const;
    double number(const std::string &key) const;
    bool boolean(const std::string &key) const;
    std::string string(const std::string &key) const;
    std::vector<std::int64_t> integers(const std::string &key) const;
    std::vector<double> numbers(const std::string &key) const;
    std::uint64_t seed() const;

    const Json &json() const {
        return values_;
    }

   private:
    const Json &at(const std::string &key) const;
    Json values_;
};

/// Keys every experiment accepts besides its own schema.
inline constexpr const char *kExperimentKey = "experiment";
inline constexpr const char *kOutputKey = "output";

struct ExperimentConfig {
    std::string experiment;
    Params params;
    std::filesystem::path output_dir;
    /// policy.<field> overrides, applied for the duration of the run
    Json policy;
};

/// Checks raw keys against the schema, fills defaults and type-checks every value.
ExperimentConfig resolve_config(const Json &raw, const std::vector<ParamSpec> &schema);

/// Applies `key=value` to a flat raw config; later overrides win.
void apply_override(Json &raw, const std::string &assignment);

std::string to_string(ParamKind kind);

}  // namespace xtqm::cli

#endif
