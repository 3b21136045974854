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

#ifndef FLOORPLAN_MODEL_H_
#define FLOORPLAN_MODEL_H_

#include <string>
#include <vector>

#include "floorplan/errors.hpp"
#include "floorplan/rational.hpp"

namespace floorplan {

enum class BlockKind { kHard, kRotatable, kSoft };

// Case1: fixed blocks. Case2: fixed blocks, 90-degree rotation allowed.
// Case3: soft blocks of fixed area and variable shape.
enum class SolveMode { kCase1, kCase2, kCase3 };

enum class CoordSort { kInteger, kReal };

// One placeable module. Hard and Rotatable blocks carry fixed dimensions;
// Soft blocks carry an area plus an allowed band on the height/width ratio.
struct Block {
  std::string id;
  BlockKind kind = BlockKind::kHard;
  Rat width;       // Hard, Rotatable
  Rat height;      // Hard, Rotatable
  Rat area;        // Soft
  Rat aspect_min;  // Soft: lower bound on height/width
  Rat aspect_max;  // Soft: upper bound on height/width

  static Block Hard(std::string id, Rat w, Rat h);
  static Block Rotatable(std::string id, Rat w, Rat h);
  static Block Soft(std::string id, Rat area, Rat aspect_min, Rat aspect_max);

  // width*height for fixed blocks, the declared area for soft ones.
  Rat BlockArea() const;
};

struct ProblemInstance {
  std::string name;
  SolveMode mode = SolveMode::kCase1;
  CoordSort coordinate_sort = CoordSort::kInteger;
  std::vector<Block> blocks;  // input order is meaningful and preserved

  // Throws Error on broken invariants: duplicate ids, kind/mode conflicts,
  // non-positive dimensions, fractional data under the Integer sort.
  void Check() const;
};

CoordSort DefaultSort(SolveMode mode);
const char* ModeName(SolveMode mode);

// Region bounds used by the big-M encodings. width_sum / height_sum are the
// stacked extents of all blocks; every placement compacted toward the origin
// fits inside them, so they double as region upper bounds. Soft blocks
// contribute synthetic dimensions ceil(sqrt(area/aspect_min)) wide by
// ceil(sqrt(area*aspect_max)) tall, which bound any shape inside the band.
struct BigMParams {
  Rat width_sum;
  Rat height_sum;
  Rat big_m;  // max(width_sum, height_sum)
};

// Throws kInstanceEmpty on an empty block list.
BigMParams ComputeBigMParams(const ProblemInstance& instance);

// Axis-aligned rectangle anchored at its bottom-left corner.
struct Rect {
  Rat x, y, w, h;
};

// True iff the interiors are disjoint; shared edges and corners are legal.
bool RectsDisjoint(const Rect& a, const Rect& b);

// A solved position for one block. placed_w / placed_h are the realized
// dimensions: post-rotation for Case2, solver-chosen for Case3.
struct PlacedBlock {
  std::string id;
  Rat x, y;
  Rat placed_w, placed_h;
  bool rotated = false;

  Rect AsRect() const { return Rect{x, y, placed_w, placed_h}; }
};

struct Placement {
  std::string instance_name;
  Rat region_w, region_h;  // region spans [0, region_w] x [0, region_h]
  std::vector<PlacedBlock> blocks;

  Rat RegionArea() const { return region_w * region_h; }
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimeout };
const char* StatusName(SolveStatus status);

struct SolveReport {
  std::string instance_name;
  int block_count = 0;
  Rat area;              // region_w * region_h of the returned placement
  Rat total_block_area;  // sum of block areas
  Rat dead_space_pct;    // 100 * (area - total_block_area) / area
  double wall_time_sec = 0.0;
  int solver_queries = 0;
  SolveStatus status = SolveStatus::kInfeasible;
};

}  // namespace floorplan

#endif  // FLOORPLAN_MODEL_H_
