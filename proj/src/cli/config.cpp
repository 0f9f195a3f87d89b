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

#include "xtqm/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace xtqm::cli {

namespace {

class ValueParser {
   public:
    ValueParser(const std::string &text, std::size_t line) : s_(text), line_(line) {
    }

    Json parse_complete() {
        Json v = parse_value();
        skip_space();
        if (pos_ != s_.size()) {
            fail("trailing characters after value");
        }
        return v;
    }

   private:
    [[noreturn]] void fail(const std::string &what) const {
        throw ConfigError("config line " + std::to_string(line_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    Json parse_value() {
        skip_space();
        if (pos_ >= s_.size()) {
            fail("missing value");
        }
        const char c = s_[pos_];
        if (c == '"') {
            return parse_basic_string();
        }
        if (c == '\'') {
            const auto end = s_.find('\'', pos_ + 1);
            if (end == std::string::npos) {
                fail("unterminated literal string");
            }
            std::string out = s_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return out;
        }
        if (c == '[') {
            return parse_array();
        }
        if (c == '{') {
            fail("inline tables are not supported");
        }
        return parse_bare();
    }

    Json parse_basic_string() {
        std::string out;
        ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            char c = s_[pos_++];
            if (c == '\\') {
                if (pos_ >= s_.size()) {
                    fail("dangling escape");
                }
                const char e = s_[pos_++];
                switch (e) {
                    case 'n':
                        c = '\n';
                        break;
                    case 't':
                        c = '\t';
                        break;
                    case '"':
                    case '\\':
                        c = e;
                        break;
                    default:
                        fail(std::string("unsupported escape \\") + e);
                }
            }
            out.push_back(c);
        }
        if (pos_ >= s_.size()) {
            fail("unterminated string");
        }
        ++pos_;
        return out;
    }

    Json parse_array() {
        Json arr = Json::array();
        ++pos_;
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            return arr;
        }
        while (true) {
            arr.push_back(parse_value());
            skip_space();
            if (pos_ >= s_.size()) {
                fail("unterminated array");
            }
            if (s_[pos_] == ',') {
                ++pos_;
                skip_space();
                if (pos_ < s_.size() && s_[pos_] == ']') {
                    ++pos_;
                    return arr;
                }
                continue;
            }
            if (s_[pos_] == ']') {
                ++pos_;
                return arr;
            }
            fail("expected ',' or ']' in array");
        }
    }

    Json parse_bare() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' &&
               !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        std::string tok = s_.substr(start, pos_ - start);
        if (tok == "true") {
            return true;
        }
        if (tok == "false") {
            return false;
        }
        std::string clean;
        for (std::size_t i = 0; i < tok.size(); ++i) {
            if (tok[i] == '_') {
                if (i == 0 || i + 1 == tok.size() || !std::isdigit(static_cast<unsigned char>(tok[i - 1])) ||
                    !std::isdigit(static_cast<unsigned char>(tok[i + 1]))) {
                    fail("misplaced underscore in '" + tok + "'");
                }
                continue;
            }
            clean.push_back(tok[i]);
        }
        const bool is_float = clean.find_first_of(".eE") != std::string::npos || clean.find("inf") != std::string::npos ||
                              clean.find("nan") != std::string::npos;
        std::string body = clean;
        if (!body.empty() && body[0] == '+') {
            body.erase(0, 1);
        }
        if (!is_float) {
            std::int64_t v = 0;
            const auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
            if (ec != std::errc() || p != body.data() + body.size() || body.empty()) {
                fail("cannot parse value '" + tok + "'");
            }
            return v;
        }
        if (body == "inf" || body == "-inf" || body == "nan" || body == "-nan") {
            fail("non-finite numbers are not accepted");
        }
        double v = 0.0;
        const auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec != std::errc() || p != body.data() + body.size()) {
            fail("cannot parse value '" + tok + "'");
        }
        return v;
    }

    const std::string &s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string &line) {
    bool in_basic = false;
    bool in_literal = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_basic) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_basic = false;
            }
        } else if (in_literal) {
            if (c == '\'') {
                in_literal = false;
            }
        } else if (c == '"') {
            in_basic = true;
        } else if (c == '\'') {
            in_literal = true;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_key(const std::string &key) {
    if (key.empty() || key.front() == '.' || key.back() == '.' || key.find("..") != std::string::npos) {
        return false;
    }
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
            return false;
        }
    }
    return true;
}

// Brackets still open outside strings, to join multi-line arrays.
int bracket_balance(const std::string &s) {
    int depth = 0;
    bool in_basic = false;
    bool in_literal = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_basic) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_basic = false;
            }
        } else if (in_literal) {
            in_literal = c != '\'';
        } else if (c == '"') {
            in_basic = true;
        } else if (c == '\'') {
            in_literal = true;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
        }
    }
    return depth;
}

bool matches(const Json &v, ParamKind kind) {
    switch (kind) {
        case ParamKind::integer:
            return v.is_number_integer();
        case ParamKind::number:
            return v.is_number();
        case ParamKind::boolean:
            return v.is_boolean();
        case ParamKind::string:
            return v.is_string();
        case ParamKind::integer_list:
            if (!v.is_array() || v.empty()) {
                return false;
            }
            for (const auto &e : v) {
                if (!e.is_number_integer()) {
                    return false;
                }
            }
            return true;
        case ParamKind::number_list:
            if (!v.is_array() || v.empty()) {
                return false;
            }
            for (const auto &e : v) {
                if (!e.is_number()) {
                    return false;
                }
            }
            return true;
    }
    return false;
}

// A scalar where a list is expected becomes a one-element list.
Json promote(const Json &v, ParamKind kind) {
    if ((kind == ParamKind::integer_list || kind == ParamKind::number_list) && !v.is_array()) {
        return Json::array({v});
    }
    return v;
}

const std::set<std::string> &policy_fields() {
    static const std::set<std::string> fields{"equality",       "overlap",          "degenerate_normalization",
                                              "normality",      "truncation_bound", "zero_eigenvalue",
                                              "unit_norm",      "dimension_cap"};
    return fields;
}

}  // namespace

std::string to_string(ParamKind kind) {
    switch (kind) {
        case ParamKind::integer:
            return "integer";
        case ParamKind::number:
            return "number";
        case ParamKind::boolean:
            return "boolean";
        case ParamKind::string:
            return "string";
        case ParamKind::integer_list:
            return "integer list";
        case ParamKind::number_list:
            return "number list";
    }
    return "unknown";
}

Json parse_toml(const std::string &text) {
    Json out = Json::object();
    std::istringstream in(text);
    std::string raw;
    std::string prefix;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t start_line = line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[' && line.find('=') == std::string::npos) {
            if (line.size() < 3 || line.back() != ']' || line[1] == '[') {
                throw ConfigError("config line " + std::to_string(line_no) + ": malformed table header");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) {
                throw ConfigError("config line " + std::to_string(line_no) + ": bad table name '" + name + "'");
            }
            prefix = name + ".";
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad key '" + key + "'");
        }
        std::string value = trim(line.substr(eq + 1));
        while (bracket_balance(value) > 0 && std::getline(in, raw)) {
            ++line_no;
            value += " " + trim(strip_comment(raw));
        }
        const std::string full = prefix + key;
        if (out.contains(full)) {
            throw ConfigError("config line " + std::to_string(start_line) + ": duplicate key '" + full + "'");
        }
        out[full] = ValueParser(value, start_line).parse_complete();
    }
    return out;
}

Json load_toml_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_toml(buf.str());
}

Json parse_override_value(const std::string &text) {
    try {
        return ValueParser(text, 0).parse_complete();
    } catch (const ConfigError &) {
        return text;
    }
}

void apply_override(Json &raw, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    }
    const std::string key = trim(assignment.substr(0, eq));
    if (!valid_key(key)) {
        throw ConfigError("override has a bad key '" + key + "'");
    }
    raw[key] = parse_override_value(trim(assignment.substr(eq + 1)));
}

ExperimentConfig resolve_config(const Json &raw, const std::vector<ParamSpec> &schema) {
    if (!raw.is_object()) {
        throw ConfigError("config must be a table of keys");
    }
    ExperimentConfig cfg;
    cfg.policy = Json::object();
    Json values = Json::object();
    std::set<std::string> known;
    for (const auto &spec : schema) {
        known.insert(spec.key);
    }
    for (const auto &[key, value] : raw.items()) {
        if (key == kExperimentKey) {
            if (!value.is_string()) {
                throw ConfigError("'experiment' must be a string");
            }
            cfg.experiment = value.get<std::string>();
        } else if (key == kOutputKey) {
            if (!value.is_string()) {
                throw ConfigError("'output' must be a string path");
            }
            cfg.output_dir = value.get<std::string>();
        } else if (key.rfind("policy.", 0) == 0) {
            const std::string field = key.substr(7);
            if (policy_fields().count(field) == 0) {
                throw ConfigError("unknown numeric policy field '" + field + "'");
            }
            if (!value.is_number() || !(value.get<double>() > 0.0)) {
                throw ConfigError("policy override '" + key + "' must be a positive number");
            }
            if (field == "dimension_cap" && !value.is_number_integer()) {
                throw ConfigError("policy.dimension_cap must be an integer");
            }
            cfg.policy[field] = value;
        } else if (known.count(key) == 0) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    for (const auto &spec : schema) {
        if (raw.contains(spec.key)) {
            const Json v = promote(raw.at(spec.key), spec.kind);
            if (!matches(v, spec.kind)) {
                throw ConfigError("key '" + spec.key + "' expects a " + to_string(spec.kind));
            }
            values[spec.key] = v;
        } else if (spec.default_value.is_null()) {
            throw ConfigError("missing required key '" + spec.key + "'");
        } else {
            values[spec.key] = spec.default_value;
        }
    }
    if (cfg.output_dir.empty()) {
        cfg.output_dir = "xtqm_out";
    }
    cfg.params = Params(std::move(values));
    return cfg;
}

const Json &Params::at(const std::string &key) const {
    if (!values_.contains(key)) {
        throw ConfigError("parameter '" + key + "' is not in the schema");
    }
    return values_.at(key);
}

std::int64_t Params::integer(const std::string &key) const {
    return at(key).get<std::int64_t>();
}

std::size_t Params::count(const std::string &key) const {
    const std::int64_t v = integer(key);
    if (v < 0) {
        throw ConfigError("parameter '" + key + "' must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

double Params::number(const std::string &key) const {
    return at(key).get<double>();
}

bool Params::boolean(const std::string &key) const {
    return at(key).get<bool>();
}

std::string Params::string(const std::string &key) const {
    return at(key).get<std::string>();
}

std::vector<std::int64_t> Params::integers(const std::string &key) const {
    return at(key).get<std::vector<std::int64_t>>();
}

std::vector<double> Params::numbers(const std::string &key) const {
    return at(key).get<std::vector<double>>();
}

std::uint64_t Params::seed() const {
    const std::int64_t v = integer("seed");
    if (v < 0) {
        throw ConfigError("seed must be non-negative");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace xtqm::cli
