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

#include "xtqm/cli/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xtqm::cli {

namespace {

std::string quote_csv(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string render(const Cell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_double(*d);
    }
    if (const auto *i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return quote_csv(std::get<std::string>(cell));
}

Json finite_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ResourceError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw ResourceError("write failed for " + path.string());
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_short(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
    return std::string(buf.data(), res.ptr);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
}

Table::Row &Table::Row::operator<<(double v) {
    cells_.emplace_back(v);
    return *this;
}

Table::Row &Table::Row::operator<<(int v) {
    cells_.emplace_back(static_cast<std::int64_t>(v));
    return *this;
}

Table::Row &Table::Row::operator<<(std::int64_t v) {
    cells_.emplace_back(v);
    return *this;
}

Table::Row &Table::Row::operator<<(std::size_t v) {
    cells_.emplace_back(static_cast<std::int64_t>(v));
    return *this;
}

Table::Row &Table::Row::operator<<(const std::string &v) {
    cells_.emplace_back(v);
    return *this;
}

Table::Row &Table::Row::operator<<(const char *v) {
    cells_.emplace_back(std::string(v));
    return *this;
}

Table::Row &Table::Row::operator<<(std::complex<double> v) {
    cells_.emplace_back(v.real());
    cells_.emplace_back(v.imag());
    return *this;
}

void Table::add(const Row &row) {
    if (row.cells_.size() != columns_.size()) {
        throw InvalidArgument("table: row has " + std::to_string(row.cells_.size()) + " cells, header has " +
                              std::to_string(columns_.size()));
    }
    rows_.push_back(row.cells_);
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out += (i ? "," : "") + quote_csv(columns_[i]);
    }
    out += '\n';
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + render(row[i]);
        }
        out += '\n';
    }
    return out;
}

RunReport::RunReport(std::string experiment, Json parameters)
    : experiment_(std::move(experiment)), parameters_(std::move(parameters)) {
}

bool RunReport::check_close(const std::string &name, double measured, double expected, double tolerance) {
    const bool ok = std::abs(measured - expected) <= tolerance;
    checks_.push_back({name, measured, expected, tolerance, "abs_diff<=", ok});
    return ok;
}

bool RunReport::check_at_most(const std::string &name, double measured, double bound) {
    const bool ok = measured <= bound;
    checks_.push_back({name, measured, bound, bound, "<=", ok});
    return ok;
}

bool RunReport::check_at_least(const std::string &name, double measured, double bound) {
    const bool ok = measured >= bound;
    checks_.push_back({name, measured, bound, bound, ">=", ok});
    return ok;
}

bool RunReport::check_true(const std::string &name, bool ok) {
    checks_.push_back({name, ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok});
    return ok;
}

Table &RunReport::table(const std::string &name, std::vector<std::string> columns) {
    auto [it, inserted] = tables_.try_emplace(name, std::move(columns));
    if (!inserted) {
        throw InvalidArgument("report: table '" + name + "' already exists");
    }
    return it->second;
}

void RunReport::note(const std::string &text) {
    notes_.push_back(text);
}

bool RunReport::passed() const {
    if (checks_.empty()) {
        return false;
    }
    for (const auto &c : checks_) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

Json RunReport::to_json() const {
    Json checks = Json::array();
    for (const auto &c : checks_) {
        checks.push_back({{"name", c.name},
                          {"measured", finite_or_null(c.measured)},
                          {"expected", finite_or_null(c.expected)},
                          {"tolerance", finite_or_null(c.tolerance)},
                          {"relation", c.relation},
                          {"pass", c.pass}});
    }
    return {{"experiment", experiment_}, {"parameters", parameters_}, {"checks", checks},
            {"pass", passed()},          {"wall_time_s", wall_time_},  {"artifacts", artifacts_},
            {"notes", notes_}};
}

std::vector<std::filesystem::path> RunReport::write(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ResourceError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    artifacts_.clear();
    for (const auto &[name, table] : tables_) {
        const std::filesystem::path path = dir / (experiment_ + "_" + name + ".csv");
        write_file(path, table.to_csv());
        artifacts_.push_back(path.filename().string());
        written.push_back(path);
    }
    const std::filesystem::path json_path = dir / (experiment_ + ".json");
    write_file(json_path, to_json().dump(2) + "\n");
    written.push_back(json_path);
    return written;
}

}  // namespace xtqm::cli
