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

#ifndef FLOORPLAN_VALIDATE_H_
#define FLOORPLAN_VALIDATE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floorplan/model.hpp"

namespace floorplan {

enum class Rule {
  kOverlap,
  kBoundary,
  kNonPositive,
  kDimensionMismatch,
  kRotationFlag,
  kAreaMismatch,
  kAspectBand,
};

const char* RuleName(Rule rule);

struct Violation {
  Rule rule;
  std::string block_a;
  std::string block_b;  // empty for single-block rules
  Rat margin;           // how far past the rule the placement is
  std::string message;
};

// Geometry-only feasibility checks, independent of the encoder: pairwise
// disjointness, region containment, origin, per-mode shape consistency
// (Case2 rotation flags, Case3 area and aspect band). `tol` is a relative
// tolerance for real/soft data; pass 0 for exact integer checking. Throws
// kInstanceMismatch when the placement does not cover exactly the instance's
// block ids.
std::vector<Violation> Validate(const Placement& placement,
                                const ProblemInstance& instance,
                                const Rat& tol);

// 0 for Integer-sorted instances, 1e-6 for Real ones.
Rat DefaultTolerance(const ProblemInstance& instance);

// dead_pct = 100 * (area - total) / area.
Rat DeadSpacePct(const Rat& region_area, const Rat& total_block_area);

// (region area, dead-space percentage); block areas are the declared ones
// for soft blocks.
std::pair<Rat, Rat> DeadSpace(const Placement& placement,
                              const ProblemInstance& instance);

// Exhaustive minimal-bounding-box packing oracle for tests: enumerates
// orientation assignments (when allow_rotation, Rotatable blocks only) and
// integer bottom-left positions on the subset-sum grids, with
// branch-and-bound pruning. Guard: integer dims, n <= 5,
// width_sum*height_sum <= 10000; beyond that throws kOracleTooLarge.
// `region_cap`, when set, restricts packings to extents within the cap so
// the oracle can mirror the encoder's region bounds.
struct OracleResult {
  Rat area;
  Placement witness;
};

OracleResult BruteForceOptimum(
    const ProblemInstance& instance, bool allow_rotation,
    std::optional<std::pair<Rat, Rat>> region_cap = std::nullopt);

}  // namespace floorplan

#endif  // FLOORPLAN_VALIDATE_H_
