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

#include "floorplan/model.hpp"

#include <set>

namespace floorplan {

Block Block::Hard(std::string id, Rat w, Rat h) {
  Block b;
  b.id = std::move(id);
  b.kind = BlockKind::kHard;
  b.width = std::move(w);
  b.height = std::move(h);
  return b;
}

Block Block::Rotatable(std::string id, Rat w, Rat h) {
  Block b = Hard(std::move(id), std::move(w), std::move(h));
  b.kind = BlockKind::kRotatable;
  return b;
}

Block Block::Soft(std::string id, Rat area, Rat aspect_min, Rat aspect_max) {
  Block b;
  b.id = std::move(id);
  b.kind = BlockKind::kSoft;
  b.area = std::move(area);
  b.aspect_min = std::move(aspect_min);
  b.aspect_max = std::move(aspect_max);
  return b;
}

Rat Block::BlockArea() const {
  if (kind == BlockKind::kSoft) return area;
  return width * height;
}

CoordSort DefaultSort(SolveMode mode) {
  return mode == SolveMode::kCase3 ? CoordSort::kReal : CoordSort::kInteger;
}

const char* ModeName(SolveMode mode) {
  switch (mode) {
    case SolveMode::kCase1:
      return "case1";
    case SolveMode::kCase2:
      return "case2";
    case SolveMode::kCase3:
      return "case3";
  }
  return "?";
}

const char* StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kFeasible:
      return "Feasible";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kTimeout:
      return "Timeout";
  }
  return "?";
}

void ProblemInstance::Check() const {
  std::set<std::string> seen;
  for (const Block& b : blocks) {
    if (b.id.empty()) {
      throw Error(Errc::kFormatError, "block with empty id");
    }
    if (!seen.insert(b.id).second) {
      throw Error(Errc::kDuplicateId, b.id);
    }
    switch (b.kind) {
      case BlockKind::kHard:
      case BlockKind::kRotatable:
        if (mode == SolveMode::kCase3) {
          throw Error(Errc::kModeMismatch,
                      b.id + ": fixed block in a case3 instance");
        }
        if (mode == SolveMode::kCase1 && b.kind == BlockKind::kRotatable) {
          throw Error(Errc::kModeMismatch,
                      b.id + ": rotatable block in a case1 instance");
        }
        if (b.width <= 0 || b.height <= 0) {
          throw Error(Errc::kBadDimension, b.id);
        }
        if (coordinate_sort == CoordSort::kInteger &&
            (!IsInteger(b.width) || !IsInteger(b.height))) {
          throw Error(Errc::kBadDimension,
                      b.id + ": fractional dimensions need sort real");
        }
        break;
      case BlockKind::kSoft:
        if (mode != SolveMode::kCase3) {
          throw Error(Errc::kModeMismatch,
                      b.id + ": soft block outside case3");
        }
        if (b.area <= 0 || b.aspect_min <= 0 || b.aspect_min > b.aspect_max) {
          throw Error(Errc::kBadDimension, b.id);
        }
        break;
    }
  }
  if (mode == SolveMode::kCase3 && coordinate_sort != CoordSort::kReal) {
    throw Error(Errc::kModeMismatch, "case3 requires sort real");
  }
}

BigMParams ComputeBigMParams(const ProblemInstance& instance) {
  if (instance.blocks.empty()) {
    throw Error(Errc::kInstanceEmpty, instance.name);
  }
  BigMParams p;
  p.width_sum = 0;
  p.height_sum = 0;
  for (const Block& b : instance.blocks) {
    if (b.kind == BlockKind::kSoft) {
      // Widest legal shape: w = sqrt(area/aspect_min); tallest:
      // h = sqrt(area*aspect_max). Integer ceilings keep the bounds exact.
      p.width_sum += Rat(CeilSqrt(b.area / b.aspect_min));
      p.height_sum += Rat(CeilSqrt(b.area * b.aspect_max));
    } else {
      p.width_sum += b.width;
      p.height_sum += b.height;
    }
  }
  p.big_m = p.width_sum > p.height_sum ? p.width_sum : p.height_sum;
  return p;
}

bool RectsDisjoint(const Rect& a, const Rect& b) {
  return a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y ||
         b.y + b.h <= a.y;
}

}  // namespace floorplan
