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

#include "floorplan/placement_io.hpp"

#include <sstream>
#include <vector>

#include "floorplan/errors.hpp"

namespace floorplan {

std::string WritePlacement(const Placement& placement) {
  std::ostringstream out;
  out << "placement " << placement.instance_name << " region "
      << FormatRational(placement.region_w) << " "
      << FormatRational(placement.region_h) << "\n";
  for (const PlacedBlock& b : placement.blocks) {
    out << b.id << " " << FormatRational(b.x) << " " << FormatRational(b.y)
        << " " << FormatRational(b.placed_w) << " "
        << FormatRational(b.placed_h) << " " << (b.rotated ? 1 : 0) << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void Fail(const std::string& path, int line,
                       const std::string& what) {
  throw Error(Errc::kFormatError,
              path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> SplitWs(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

Rat ParseCoord(const std::string& text, const std::string& path, int line) {
  auto value = ParseRational(text);
  if (!value) Fail(path, line, "bad number '" + text + "'");
  return *value;
}

}  // namespace

Placement ReadPlacement(const std::string& text,
                        const std::string& source_path) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Placement placement;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = SplitWs(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens.size() != 5 || tokens[0] != "placement" ||
          tokens[2] != "region") {
        Fail(source_path, lineno,
             "expected 'placement <instance> region <w> <h>'");
      }
      placement.instance_name = tokens[1];
      placement.region_w = ParseCoord(tokens[3], source_path, lineno);
      placement.region_h = ParseCoord(tokens[4], source_path, lineno);
      have_header = true;
      continue;
    }

    if (tokens.size() != 6) {
      Fail(source_path, lineno,
           "expected '<id> <x> <y> <w> <h> <rotated>' (6 fields, got " +
               std::to_string(tokens.size()) + ")");
    }
    PlacedBlock b;
    b.id = tokens[0];
    b.x = ParseCoord(tokens[1], source_path, lineno);
    b.y = ParseCoord(tokens[2], source_path, lineno);
    b.placed_w = ParseCoord(tokens[3], source_path, lineno);
    b.placed_h = ParseCoord(tokens[4], source_path, lineno);
    if (tokens[5] == "0") {
      b.rotated = false;
    } else if (tokens[5] == "1") {
      b.rotated = true;
    } else {
      Fail(source_path, lineno,
           "rotation flag must be 0 or 1, got '" + tokens[5] + "'");
    }
    placement.blocks.push_back(std::move(b));
  }

  if (!have_header) {
    Fail(source_path, lineno ? lineno : 1, "missing placement header");
  }
  return placement;
}

}  // namespace floorplan
