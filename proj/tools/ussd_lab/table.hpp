// Copyright 2026 The ussdlab Authors
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

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ussdlab::cli {

/// Empty cells print as nothing in CSV and as null in JSON.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

enum class Format { Csv, Json };

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
};

/// printf("%.12g"), with -0 printed as 0.
std::string format_number(double v);

std::string render(const Table& table, Format format);
std::string render_csv(const Table& table);
std::string render_json(const Table& table);

}  // namespace ussdlab::cli
