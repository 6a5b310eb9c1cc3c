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

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace scatlab {

/// Shortest round-trip-safe text for doubles: 17 significant digits.
std::string format_double(double x);

/// In-memory CSV document with optional '#' metadata lines and a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, double value);
  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);

  std::size_t rows() const noexcept { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::string meta_;
  std::string body_;
  std::size_t rows_ = 0;
};

}  // namespace scatlab
