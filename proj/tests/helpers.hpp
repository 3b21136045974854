// Copyright 2026 The Floorplan Authors
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

#ifndef FLOORPLAN_TESTS_HELPERS_H_
#define FLOORPLAN_TESTS_HELPERS_H_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "floorplan/ingest.hpp"
#include "floorplan/model.hpp"
#include "floorplan/solver.hpp"

namespace floorplan::testing {

inline std::string FixturePath(const std::string& name) {
  return std::string(FLOORPLAN_SOURCE_DIR) + "/tests/fixtures/" + name;
}

inline std::string ReadFileText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline ProblemInstance LoadFixture(const std::string& name) {
  return ParseNative(ReadFileText(FixturePath(name)), FixturePath(name));
}

// Backend under test: FLOORPLAN_BACKEND when set, else the bundled z3 WASM
// shim. Tests that spawn a solver fail loudly when neither works; see
// tools/backends/z3wasm/setup.sh.
inline std::string TestBackendPath() {
  if (const char* env = std::getenv("FLOORPLAN_BACKEND");
      env != nullptr && *env != '\0') {
    return env;
  }
  return std::string(FLOORPLAN_SOURCE_DIR) + "/tools/backends/z3wasm/z3";
}

inline BackendConfig TestBackendConfig(const std::string& runs_subdir,
                                       double timeout_sec = 60.0) {
  BackendConfig config;
  config.executable = TestBackendPath();
  config.timeout_sec = timeout_sec;
  config.runs_dir = "test-runs/" + runs_subdir;
  return config;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::string templ =
        (std::filesystem::temp_directory_path() / "floorplan-test-XXXXXX")
            .string();
    if (mkdtemp(templ.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    path_ = templ;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }

  std::string WriteFile(const std::string& name, const std::string& content,
                        bool executable = false) const {
    std::string full = path_ + "/" + name;
    {
      std::ofstream out(full, std::ios::binary);
      out << content;
    }
    if (executable) {
      std::filesystem::permissions(full,
                                   std::filesystem::perms::owner_all |
                                       std::filesystem::perms::group_exec |
                                       std::filesystem::perms::others_exec,
                                   std::filesystem::perm_options::add);
    }
    return full;
  }

 private:
  std::string path_;
};

// Seeded integer draw in [lo, hi]; mt19937 output is standardized, so the
// modulo keeps fuzzed corpora identical across platforms.
inline int PickInt(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

}  // namespace floorplan::testing

#endif  // FLOORPLAN_TESTS_HELPERS_H_
