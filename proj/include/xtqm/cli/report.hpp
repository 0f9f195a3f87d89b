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

#ifndef XTQM_CLI_REPORT_HPP
#define XTQM_CLI_REPORT_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "xtqm/cli/config.hpp"

namespace xtqm::cli {

/// 17 significant digits in the C locale.
std::string format_double(double v);
/// Six significant digits, for labels.
std::string format_short(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

/// CSV table with a fixed header. Complex values occupy two columns, `<name>_re` and `<name>_im`.
class Table {
   public:
    Table() = default;
    explicit Table(std::vector<std::string> columns);

    class Row {
       public:
        Row &operator<<(double v);
        Row &operator<<(int v);
        Row &operator<<(std::int64_t v);
        Row &operator<<(std::size_t v);
        Row &operator<<(const std::string &v);
        Row &operator<<(const char *v);
        Row &operator<<(std::complex<double> v);

       private:
        friend class Table;
        std::vector<Cell> cells_;
    };

    /// Appends a row; throws if the cell count does not match the header.
    void add(const Row &row);
    const std::vector<std::string> &columns() const {
        return columns_;
    }
    std::size_t rows() const {
        return rows_.size();
    }
    std::string to_csv() const;

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    /// "abs_diff<=", "<=", ">=" or "true"
    std::string relation;
    bool pass = false;
};

class RunReport {
   public:
    RunReport(std::string experiment, Json parameters);

    /// |measured - expected| <= tolerance
    bool check_close(const std::string &name, double measured, double expected, double tolerance);
    /// measured <= bound
    bool check_at_most(const std::string &name, double measured, double bound);
    /// measured >= bound
    bool check_at_least(const std::string &name, double measured, double bound);
    bool check_true(const std::string &name, bool ok);

    Table &table(const std::string &name, std::vector<std::string> columns);
    void note(const std::string &text);

    bool passed() const;
    const std::string &experiment() const {
        return experiment_;
    }
    const std::vector<CheckRecord> &checks() const {
        return checks_;
    }
    const std::map<std::string, Table> &tables() const {
        return tables_;
    }
    void set_wall_time(double seconds) {
        wall_time_ = seconds;
    }

    /// Writes <experiment>_<table>.csv files and <experiment>.json into `dir`.
    std::vector<std::filesystem::path> write(const std::filesystem::path &dir);
    Json to_json() const;

   private:
    std::string experiment_;
    Json parameters_;
    std::vector<CheckRecord> checks_;
    std::map<std::string, Table> tables_;
    std::vector<std::string> notes_;
    std::vector<std::string> artifacts_;
    double wall_time_ = 0.0;
};

}  // namespace xtqm::cli

#endif
