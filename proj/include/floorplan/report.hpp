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

#ifndef FLOORPLAN_REPORT_H_
#define FLOORPLAN_REPORT_H_

#include <string>
#include <vector>

#include "floorplan/model.hpp"

namespace floorplan {

struct SvgOptions {
  Rat scale = 10;            // drawing units per model unit
  bool label_blocks = true;  // emit a <text> per block
  bool shade_dead_space = true;
};

// Deterministic SVG: region outline first, one rect per block in placement
// order, y axis flipped so (0,0) renders bottom-left, rotated blocks hatched.
// Decimals carry at most 6 significant digits.
std::string RenderSvg(const Placement& placement, const SvgOptions& options);

enum class TableFormat { kText, kCsv };

// Columns: circuit, blocks, area, dead %, time (s), queries, status. Rows in
// input order. CSV quoting per RFC 4180.
std::string EmitTable(const std::vector<SolveReport>& reports,
                      TableFormat format);

}  // namespace floorplan

#endif  // FLOORPLAN_REPORT_H_
