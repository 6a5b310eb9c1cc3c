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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scatlab/cli.hpp"
#include "scatlab/error.hpp"

namespace fs = std::filesystem;
using namespace scatlab::cli;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "scatlab");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("scatlab_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kCatalog = SCATLAB_CATALOG_DIR;

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("unknown command exits 2 without artifacts") {
  const fs::path dir = fresh_dir("unknown");
  const Invocation r = invoke({"frobnicate", "--out", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("missing potential file exits 2") {
  const fs::path dir = fresh_dir("missing");
  const Invocation r = invoke({"phase-shifts", "--potential", "/nonexistent.json", "--out", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("out of range overrides exit 2") {
  const fs::path dir = fresh_dir("range");
  CHECK(invoke({"phase-shifts", "--potential", kCatalog + "/zero.json", "--lmax", "-3", "--out", dir.string()}).code ==
        kExitConfig);
  CHECK(invoke({"muntz", "--index-set", "geometric:1", "--out", dir.string()}).code == kExitConfig);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("phase shifts of the zero potential") {
  const fs::path dir = fresh_dir("zero");
  const Invocation r = invoke({"phase-shifts", "--potential", kCatalog + "/zero.json", "--lmax", "5", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  const std::string csv = slurp(dir / "phase_shifts.csv");
  CHECK(csv.find("ell,delta,jost_magnitude") != std::string::npos);
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("ell", 0) == 0) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::abs(std::stod(line.substr(c1 + 1, c2 - c1 - 1))) <= 1e-10);
    ++rows;
  }
  CHECK(rows == 6);
  CHECK(fs::exists(dir / "MANIFEST.txt"));
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("manifest hashes every artifact") {
  const fs::path dir = fresh_dir("manifest");
  REQUIRE(invoke({"muntz", "--index-set", "primes", "--lmax", "50", "--out", dir.string()}).code == kExitOk);
  std::istringstream m(slurp(dir / "MANIFEST.txt"));
  std::string hash, name;
  int n = 0;
  while (m >> hash >> name) {
    CHECK(sha256_hex(slurp(dir / name)) == hash);
    ++n;
  }
  CHECK(n == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  const std::vector<std::string> base = {"discriminate", "--q1", kCatalog + "/well_1.json", "--q2",
                                         kCatalog + "/well_1_1.json", "--lmax", "8"};
  auto a1 = base;
  a1.insert(a1.end(), {"--out", d1.string()});
  auto a2 = base;
  a2.insert(a2.end(), {"--out", d2.string()});
  REQUIRE(invoke(a1).code == kExitOk);
  REQUIRE(invoke(a2).code == kExitOk);
  for (const char* f : {"discrimination.csv", "summary.txt", "MANIFEST.txt"})
    CHECK(slurp(d1 / f) == slurp(d2 / f));
}

TEST_CASE("config file with flag overrides") {
  const fs::path dir = fresh_dir("config");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.json";
  {
    std::ofstream o(cfg);
    o << R"({"command": "phase-shifts", "potential": ")" << kCatalog
      << R"(/well_1.json", "lmax": 2, "out": "res"})";
  }
  REQUIRE(invoke({"--config", cfg.string(), "--lmax", "3"}).code == kExitOk);
  const std::string csv = slurp(dir / "res" / "phase_shifts.csv");
  CHECK(csv.find("\n3,") != std::string::npos);

  std::ofstream(dir / "bad.json") << R"({"command": "muntz", "colour": 1})";
  CHECK(invoke({"--config", (dir / "bad.json").string()}).code == kExitConfig);
  std::ofstream(dir / "broken.json") << "{";
  CHECK(invoke({"--config", (dir / "broken.json").string()}).code == kExitConfig);
}

TEST_CASE("transform check summary") {
  const fs::path dir = fresh_dir("transform");
  const Invocation r =
      invoke({"transform-check", "--potential", kCatalog + "/well_1.json", "--lmax", "3", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(slurp(dir / "summary.txt").find("max rel err <= 1e-4: yes") != std::string::npos);
  CHECK(fs::exists(dir / "transform_check.csv"));
}

TEST_CASE("unwritable output directory exits 4") {
  const fs::path dir = fresh_dir("io");
  fs::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  const Invocation r = invoke({"muntz", "--out", (dir / "blocker" / "sub").string()});
  CHECK(r.code == kExitIo);
}
