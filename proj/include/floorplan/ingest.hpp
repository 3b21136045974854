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

#ifndef FLOORPLAN_INGEST_H_
#define FLOORPLAN_INGEST_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floorplan/model.hpp"

namespace floorplan {

struct ParseDiagnostics {
  std::string source_path;
  // (1-based line number, message)
  std::vector<std::pair<int, std::string>> warnings;
};

// Native instance format. One header line
//   instance <name> mode <case1|case2|case3> [sort <int|real>]
// followed by one line per block:
//   hard <id> <w> <h>
//   rot <id> <w> <h>
//   soft <id> <area> <amin> <amax>
// '#' starts a comment; blank lines are ignored. When the sort token is
// absent it defaults to int for case1/case2 and real for case3.
ProblemInstance ParseNative(const std::string& text,
                            const std::string& source_path = "<string>");

// Canonical writer: header with explicit sort token, blocks in order, LF
// endings, rationals in p/q form when non-integral.
std::string SerializeNative(const ProblemInstance& instance);

struct GsrcBlocks {
  std::vector<Block> blocks;  // file order
  ParseDiagnostics diagnostics;
};

// GSRC bookshelf .blocks reader. Accepts the header `UCSC blocks <version>`,
// the three Num* counts, `<name> softrectangular <area> <minAspect>
// <maxAspect>` and `<name> hardrectilinear 4 (x,y) ...` block lines.
// Terminals are skipped with a warning. Declared counts must match parsed
// counts. Hard outlines must be axis-aligned rectangles given as exactly four
// vertices.
GsrcBlocks ParseGsrcBlocks(const std::string& text,
                           const std::string& source_path = "<string>");

// Wraps parsed GSRC blocks into an instance. `mode` may be omitted only when
// every block is soft (inferred Case3). Under Case2 the parsed hard outlines
// become rotatable blocks (that is what asking for the rotating mode means).
// `force_aspect`, when set, replaces each soft block's ratio band.
ProblemInstance InstanceFromGsrc(
    const GsrcBlocks& parsed, const std::string& name,
    std::optional<SolveMode> mode,
    std::optional<std::pair<Rat, Rat>> force_aspect = std::nullopt);

}  // namespace floorplan

#endif  // FLOORPLAN_INGEST_H_
