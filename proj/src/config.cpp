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

#include "floorplan/config.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "floorplan/errors.hpp"

namespace floorplan {

namespace {

std::string Strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> ParseConfigText(const std::string& text) {
  static const std::set<std::string> kKnown = {"backend", "dialect", "timeout",
                                               "jobs", "runs_dir"};
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::kConfigError,
                  "line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = Strip(line.substr(0, eq));
    std::string value = Strip(line.substr(eq + 1));
    if (!kKnown.count(key)) {
      throw Error(Errc::kConfigError,
                  "line " + std::to_string(lineno) + ": unknown key '" + key +
                      "'");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (value.empty()) {
      throw Error(Errc::kConfigError, "line " + std::to_string(lineno) +
                                          ": empty value for '" + key + "'");
    }
    if (out.count(key)) {
      throw Error(Errc::kConfigError, "line " + std::to_string(lineno) +
                                          ": duplicate key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

BackendConfig ResolveBackend(const std::optional<std::string>& cli_backend,
                             const std::map<std::string, std::string>& config,
                             const char* env_backend) {
  BackendConfig out;

  if (cli_backend && !cli_backend->empty()) {
    out.executable = *cli_backend;
  } else if (auto it = config.find("backend");
             it != config.end() && !it->second.empty()) {
    out.executable = it->second;
  } else if (env_backend && *env_backend) {
    out.executable = env_backend;
  } else {
    out.executable = "z3";
  }

  if (auto it = config.find("dialect"); it != config.end()) {
    if (it->second == "plain") {
      out.dialect = Dialect::kPlainSmt2;
    } else if (it->second == "optimizing") {
      out.dialect = Dialect::kOptimizingSmt2;
    } else {
      throw Error(Errc::kConfigError,
                  "dialect must be 'plain' or 'optimizing', got '" +
                      it->second + "'");
    }
  }
  if (auto it = config.find("timeout"); it != config.end()) {
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0' || v <= 0) {
      throw Error(Errc::kConfigError,
                  "timeout must be a positive number of seconds");
    }
    out.timeout_sec = v;
  }
  if (auto it = config.find("jobs"); it != config.end()) {
    char* end = nullptr;
    long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0' || v < 1 || v > 256) {
      throw Error(Errc::kConfigError, "jobs must be an integer in [1, 256]");
    }
    out.jobs = static_cast<int>(v);
  }
  if (auto it = config.find("runs_dir"); it != config.end()) {
    out.runs_dir = it->second;
  }
  return out;
}

}  // namespace floorplan
