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

#ifndef FLOORPLAN_CONFIG_H_
#define FLOORPLAN_CONFIG_H_

#include <map>
#include <optional>
#include <string>

#include "floorplan/solver.hpp"

namespace floorplan {

// floorplan.toml-style key/value text: `key = value` lines, '#' comments,
// optional double quotes around values. Recognized keys: backend, dialect
// (plain|optimizing), timeout (seconds), jobs, runs_dir. Unknown keys are
// rejected so typos fail loudly.
std::map<std::string, std::string> ParseConfigText(const std::string& text);

// Builds the backend configuration with the documented precedence: CLI flag
// beats the config file, which beats the FLOORPLAN_BACKEND environment
// variable, which beats a bare `z3` looked up on PATH.
BackendConfig ResolveBackend(const std::optional<std::string>& cli_backend,
                             const std::map<std::string, std::string>& config,
                             const char* env_backend);

}  // namespace floorplan

#endif  // FLOORPLAN_CONFIG_H_
