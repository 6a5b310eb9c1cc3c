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

/** \file cli.hpp
 *
 *  Batch experiment runner behind the `scatlab` executable. A run is
 *  configured by an optional JSON document and command-line flags (flags
 *  win), computes every artifact in memory, and writes them together with
 *  summary.txt and MANIFEST.txt only after the computation succeeded.
 *
 *  Exit status: 0 success, 2 configuration or input error, 3 numerical
 *  non-convergence, 4 file system error.
 */

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace scatlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitIo = 4;

const std::vector<std::string>& commands();

struct ExperimentConfig {
  std::string command;
  std::string out_dir = "out";
  std::string potential;
  std::string q1;
  std::string q2;
  std::string index_set;
  std::optional<int> lmax;
  std::optional<double> tol;
  std::optional<int> grid_xi;
  std::optional<int> grid_eta;
  int threads = 1;
};

/// Applies the fields of a JSON config document to cfg. Relative paths are
/// resolved against base_dir. Throws ParseError or ValidationError.
void apply_config_json(ExperimentConfig& cfg, const std::string& text, const std::string& base_dir);

/// Checks the command name, the numeric ranges and that input files exist.
/// Throws ValidationError.
void validate(const ExperimentConfig& cfg);

struct Artifact {
  std::string name;
  std::string content;
};

struct RunOutput {
  std::vector<Artifact> artifacts;  ///< summary.txt last
  std::string summary;
};

/// Runs the experiment without touching the output directory.
RunOutput run(const ExperimentConfig& cfg);

/// Writes the artifacts and MANIFEST.txt into dir. Throws IoError.
void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Full command-line entry point; returns the exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scatlab::cli
