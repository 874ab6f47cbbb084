// Copyright 2026 The qmetro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qmetro {

inline constexpr const char* kVersion = "0.1.0";

/// Doubles are printed with 17 significant digits so the text round-trips to
/// the identical bit pattern; the C locale keeps the '.' separator.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Rectangular output table with one '#'-prefixed metadata line.
struct DataTable {
    using Cell = std::variant<double, std::string>;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string csv_cell(const DataTable::Cell& cell) {
    if (std::holds_alternative<double>(cell)) {
        return format_double(std::get<double>(cell));
    }
    std::string s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    }
    return s;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const DataTable& table) {
    os << "#";
    for (const auto& [key, value] : table.metadata) {
        os << ' ' << key << '=' << value;
    }
    os << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) os << ',';
            os << detail::csv_cell(row[i]);
        }
        os << '\n';
    }
}

/// Array of flat records, one per row; numeric cells stay numbers.
inline void write_json(std::ostream& os, const DataTable& table) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json rec = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            if (std::holds_alternative<double>(row[i])) {
                rec[table.columns[i]] = std::get<double>(row[i]);
            } else {
                rec[table.columns[i]] = std::get<std::string>(row[i]);
            }
        }
        records.push_back(std::move(rec));
    }
    os << records.dump(2) << '\n';
}

}  // namespace qmetro
