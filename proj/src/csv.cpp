// Copyright 2026 The scatlab Authors
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

#include "scatlab/csv.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "scatlab/error.hpp"

namespace scatlab {

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_meta(const std::string& key, const std::string& value) {
  meta_ += fmt::format("# {}: {}\n", key, value);
}

void CsvTable::add_meta(const std::string& key, double value) { add_meta(key, format_double(value)); }

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw ValidationError(fmt::format("CSV row has {} cells, expected {}", cells.size(), columns_.size()));
  body_ += fmt::format("{}\n", fmt::join(cells, ","));
  ++rows_;
}

std::string CsvTable::str() const {
  return meta_ + fmt::format("{}\n", fmt::join(columns_, ",")) + body_;
}

}  // namespace scatlab
