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

#include "floorplan/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace floorplan {

const char* RuleName(Rule rule) {
  switch (rule) {
    case Rule::kOverlap:
      return "Overlap";
    case Rule::kBoundary:
      return "Boundary";
    case Rule::kNonPositive:
      return "NonPositive";
    case Rule::kDimensionMismatch:
      return "DimensionMismatch";
    case Rule::kRotationFlag:
      return "RotationFlag";
    case Rule::kAreaMismatch:
      return "AreaMismatch";
    case Rule::kAspectBand:
      return "AspectBand";
  }
  return "?";
}

Rat DefaultTolerance(const ProblemInstance& instance) {
  return instance.coordinate_sort == CoordSort::kInteger ? Rat(0)
                                                         : Rat(1, 1000000);
}

namespace {

Rat Abs(const Rat& v) { return v < 0 ? -v : v; }

Rat Max(const Rat& a, const Rat& b) { return a > b ? a : b; }

void Add(std::vector<Violation>& out, Rule rule, std::string a, std::string b,
         Rat margin, std::string message) {
  out.push_back(Violation{rule, std::move(a), std::move(b), std::move(margin),
                          std::move(message)});
}

}  // namespace

std::vector<Violation> Validate(const Placement& placement,
                                const ProblemInstance& instance,
                                const Rat& tol) {
  std::map<std::string, const Block*> by_id;
  for (const Block& b : instance.blocks) by_id[b.id] = &b;
  std::set<std::string> placed_ids;
  for (const PlacedBlock& p : placement.blocks) {
    if (!placed_ids.insert(p.id).second) {
      throw Error(Errc::kInstanceMismatch, "duplicate placement id " + p.id);
    }
    if (!by_id.count(p.id)) {
      throw Error(Errc::kInstanceMismatch, "unknown block " + p.id);
    }
  }
  if (placed_ids.size() != by_id.size()) {
    throw Error(Errc::kInstanceMismatch,
                "placement covers " + std::to_string(placed_ids.size()) +
                    " of " + std::to_string(by_id.size()) + " blocks");
  }

  std::vector<Violation> out;
  // Geometry tolerance scales with the region so the relative tol survives
  // large coordinates; shape tolerances scale with the block data below.
  Rat eps = tol * Max(Rat(1), Max(placement.region_w, placement.region_h));

  for (const PlacedBlock& p : placement.blocks) {
    const Block& b = *by_id.at(p.id);

    if (p.placed_w <= 0 || p.placed_h <= 0) {
      Add(out, Rule::kNonPositive, p.id, "",
          Max(-p.placed_w, -p.placed_h),
          p.id + ": non-positive placed dimensions");
      continue;  // the remaining checks would be meaningless
    }

    if (p.x < -eps || p.y < -eps) {
      Add(out, Rule::kBoundary, p.id, "", Max(-p.x, -p.y),
          p.id + ": negative corner");
    }
    if (p.x + p.placed_w > placement.region_w + eps) {
      Add(out, Rule::kBoundary, p.id, "",
          p.x + p.placed_w - placement.region_w,
          p.id + ": crosses the right region edge");
    }
    if (p.y + p.placed_h > placement.region_h + eps) {
      Add(out, Rule::kBoundary, p.id, "",
          p.y + p.placed_h - placement.region_h,
          p.id + ": crosses the top region edge");
    }

    switch (b.kind) {
      case BlockKind::kHard:
      case BlockKind::kRotatable: {
        Rat dim_eps = tol * Max(Rat(1), Max(b.width, b.height));
        bool straight = Abs(p.placed_w - b.width) <= dim_eps &&
                        Abs(p.placed_h - b.height) <= dim_eps;
        bool turned = Abs(p.placed_w - b.height) <= dim_eps &&
                      Abs(p.placed_h - b.width) <= dim_eps;
        if (instance.mode == SolveMode::kCase1 ||
            b.kind == BlockKind::kHard) {
          if (!straight) {
            Add(out, Rule::kDimensionMismatch, p.id, "",
                Max(Abs(p.placed_w - b.width), Abs(p.placed_h - b.height)),
                p.id + ": placed dimensions differ from the block");
          }
          if (p.rotated) {
            Add(out, Rule::kRotationFlag, p.id, "", Rat(1),
                p.id + ": rotation flag set on a fixed block");
          }
        } else {
          if (!straight && !turned) {
            Add(out, Rule::kDimensionMismatch, p.id, "",
                Max(Abs(p.placed_w - b.width), Abs(p.placed_w - b.height)),
                p.id + ": placed dimensions are neither orientation");
          } else if (b.width != b.height) {
            // With w == h both orientations coincide and the flag is moot.
            bool expect_rotated = turned && !straight;
            if (p.rotated != expect_rotated) {
              Add(out, Rule::kRotationFlag, p.id, "", Rat(1),
                  p.id + ": rotation flag disagrees with placed dimensions");
            }
          }
        }
        break;
      }
      case BlockKind::kSoft: {
        if (p.rotated) {
          Add(out, Rule::kRotationFlag, p.id, "", Rat(1),
              p.id + ": rotation flag set on a soft block");
        }
        Rat realized = p.placed_w * p.placed_h;
        if (Abs(realized - b.area) > tol * b.area) {
          Add(out, Rule::kAreaMismatch, p.id, "", Abs(realized - b.area),
              p.id + ": realized area " + FormatRational(realized) +
                  " differs from " + FormatRational(b.area));
        }
        // h/w inside [amin, amax], multiplicatively and tolerance-relaxed.
        if (p.placed_h < b.aspect_min * p.placed_w * (Rat(1) - tol)) {
          Add(out, Rule::kAspectBand, p.id, "",
              b.aspect_min * p.placed_w - p.placed_h,
              p.id + ": flatter than aspect_min allows");
        }
        if (p.placed_h > b.aspect_max * p.placed_w * (Rat(1) + tol)) {
          Add(out, Rule::kAspectBand, p.id, "",
              p.placed_h - b.aspect_max * p.placed_w,
              p.id + ": taller than aspect_max allows");
        }
        break;
      }
    }
  }

  for (size_t i = 0; i < placement.blocks.size(); ++i) {
    for (size_t j = i + 1; j < placement.blocks.size(); ++j) {
      const PlacedBlock& a = placement.blocks[i];
      const PlacedBlock& b = placement.blocks[j];
      Rat ox = std::min(a.x + a.placed_w, b.x + b.placed_w) - Max(a.x, b.x);
      Rat oy = std::min(a.y + a.placed_h, b.y + b.placed_h) - Max(a.y, b.y);
      if (ox > eps && oy > eps) {
        Add(out, Rule::kOverlap, a.id, b.id, std::min(ox, oy),
            a.id + " overlaps " + b.id);
      }
    }
  }
  return out;
}

Rat DeadSpacePct(const Rat& region_area, const Rat& total_block_area) {
  if (region_area == 0) return 0;
  return Rat(100) * (region_area - total_block_area) / region_area;
}

std::pair<Rat, Rat> DeadSpace(const Placement& placement,
                              const ProblemInstance& instance) {
  Rat total = 0;
  for (const Block& b : instance.blocks) total += b.BlockArea();
  Rat area = placement.RegionArea();
  return {area, DeadSpacePct(area, total)};
}

namespace {

struct OrientedBlock {
  const Block* block;
  BigInt w, h;
  bool rotated;
};

struct PlacedRect {
  BigInt x, y, w, h;
};

struct SearchState {
  std::vector<OrientedBlock> blocks;  // fixed order, chosen orientations
  std::vector<BigInt> xs, ys;         // candidate coordinates
  std::optional<BigInt> cap_w, cap_h;
  BigInt total_area;
  BigInt best_area;                   // incumbent
  std::vector<PlacedRect> best, current;
  bool perfect = false;  // incumbent area == total area, cannot improve
};

bool Disjoint(const PlacedRect& a, const PlacedRect& b) {
  return a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y ||
         b.y + b.h <= a.y;
}

void Search(SearchState& s, size_t k, const BigInt& extent_w,
            const BigInt& extent_h) {
  if (k == s.blocks.size()) {
    BigInt area = extent_w * extent_h;
    if (area < s.best_area) {
      s.best_area = area;
      s.best = s.current;
      if (area == s.total_area) s.perfect = true;
    }
    return;
  }
  const OrientedBlock& ob = s.blocks[k];
  for (const BigInt& y : s.ys) {
    if (s.perfect) return;
    if (s.cap_h && y + ob.h > *s.cap_h) break;  // ys sorted ascending
    for (const BigInt& x : s.xs) {
      if (s.cap_w && x + ob.w > *s.cap_w) break;
      BigInt new_w = extent_w < x + ob.w ? x + ob.w : extent_w;
      BigInt new_h = extent_h < y + ob.h ? y + ob.h : extent_h;
      // Even the area sum itself can beat the incumbent after the extents
      // grow; both bounds are monotone along the recursion.
      BigInt lb = new_w * new_h;
      if (lb < s.total_area) lb = s.total_area;
      if (lb >= s.best_area) continue;
      PlacedRect candidate{x, y, ob.w, ob.h};
      bool ok = true;
      for (const PlacedRect& placed : s.current) {
        if (!Disjoint(candidate, placed)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      s.current.push_back(candidate);
      Search(s, k + 1, new_w, new_h);
      s.current.pop_back();
    }
  }
}

std::vector<BigInt> SubsetSums(const std::vector<BigInt>& values,
                               const std::optional<BigInt>& cap) {
  std::set<BigInt> sums = {BigInt(0)};
  for (const BigInt& v : values) {
    std::set<BigInt> next = sums;
    for (const BigInt& s : sums) {
      BigInt candidate = s + v;
      if (!cap || candidate <= *cap) next.insert(candidate);
    }
    sums = std::move(next);
  }
  return {sums.begin(), sums.end()};
}

}  // namespace

OracleResult BruteForceOptimum(
    const ProblemInstance& instance, bool allow_rotation,
    std::optional<std::pair<Rat, Rat>> region_cap) {
  if (instance.blocks.size() > 5) {
    throw Error(Errc::kOracleTooLarge,
                std::to_string(instance.blocks.size()) + " blocks (max 5)");
  }
  for (const Block& b : instance.blocks) {
    if (b.kind == BlockKind::kSoft || !IsInteger(b.width) ||
        !IsInteger(b.height)) {
      throw Error(Errc::kOracleTooLarge,
                  b.id + ": oracle needs fixed integer dimensions");
    }
  }
  BigMParams bounds = ComputeBigMParams(instance);
  if (bounds.width_sum * bounds.height_sum > 10000) {
    throw Error(Errc::kOracleTooLarge,
                "width_sum*height_sum exceeds 10000");
  }

  // Search order: big blocks first tightens the incumbent early.
  std::vector<const Block*> order;
  for (const Block& b : instance.blocks) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](const Block* a, const Block* b) {
                     return a->BlockArea() > b->BlockArea();
                   });

  BigInt total_area = 0;
  for (const Block& b : instance.blocks) {
    total_area += numerator(b.BlockArea());
  }

  std::optional<BigInt> cap_w, cap_h;
  if (region_cap) {
    cap_w = FloorRat(region_cap->first);
    cap_h = FloorRat(region_cap->second);
  }

  BigInt best_area = -1;
  std::vector<PlacedRect> best;
  std::vector<OrientedBlock> best_blocks;

  // Orientation assignments, then positions on the subset-sum grids; any
  // packing slid left and down lands its coordinates on sums of other
  // blocks' dimensions, so the grids cover some optimal packing.
  size_t n = order.size();
  size_t combos = size_t{1} << n;
  for (size_t mask = 0; mask < combos; ++mask) {
    std::vector<OrientedBlock> oriented;
    bool valid = true;
    for (size_t i = 0; i < n; ++i) {
      const Block& b = *order[i];
      bool rotate = (mask >> i) & 1;
      if (rotate) {
        bool rotatable = allow_rotation && b.kind == BlockKind::kRotatable &&
                         b.width != b.height;
        if (!rotatable) {
          valid = false;
          break;
        }
      }
      OrientedBlock ob;
      ob.block = &b;
      ob.w = numerator(rotate ? b.height : b.width);
      ob.h = numerator(rotate ? b.width : b.height);
      ob.rotated = rotate;
      oriented.push_back(ob);
    }
    if (!valid) continue;

    std::vector<BigInt> widths, heights;
    for (const OrientedBlock& ob : oriented) {
      widths.push_back(ob.w);
      heights.push_back(ob.h);
    }

    SearchState s;
    s.blocks = oriented;
    s.xs = SubsetSums(widths, cap_w);
    s.ys = SubsetSums(heights, cap_h);
    s.cap_w = cap_w;
    s.cap_h = cap_h;
    s.total_area = total_area;
    s.best_area = best_area < 0 ? bounds.width_sum.convert_to<BigInt>() *
                                          bounds.height_sum.convert_to<BigInt>() +
                                      1
                                : best_area;
    Search(s, 0, 0, 0);
    if (!s.best.empty() && (best_area < 0 || s.best_area < best_area)) {
      best_area = s.best_area;
      best = s.best;
      best_blocks = oriented;
    }
    if (best_area == total_area) break;  // provably optimal already
  }

  if (best.empty()) {
    throw Error(Errc::kEncodingBug, "region cap excludes every packing");
  }

  Placement witness;
  witness.instance_name = instance.name;
  BigInt ext_w = 0, ext_h = 0;
  for (size_t i = 0; i < best.size(); ++i) {
    const PlacedRect& r = best[i];
    PlacedBlock p;
    p.id = best_blocks[i].block->id;
    p.x = Rat(r.x);
    p.y = Rat(r.y);
    p.placed_w = Rat(r.w);
    p.placed_h = Rat(r.h);
    p.rotated = best_blocks[i].rotated;
    witness.blocks.push_back(p);
    if (r.x + r.w > ext_w) ext_w = r.x + r.w;
    if (r.y + r.h > ext_h) ext_h = r.y + r.h;
  }
  // Keep the witness in instance order for readability.
  std::map<std::string, size_t> instance_pos;
  for (size_t i = 0; i < instance.blocks.size(); ++i) {
    instance_pos[instance.blocks[i].id] = i;
  }
  std::sort(witness.blocks.begin(), witness.blocks.end(),
            [&](const PlacedBlock& a, const PlacedBlock& b) {
              return instance_pos.at(a.id) < instance_pos.at(b.id);
            });
  witness.region_w = Rat(ext_w);
  witness.region_h = Rat(ext_h);

  OracleResult result;
  result.area = Rat(best_area);
  result.witness = std::move(witness);
  return result;
}

}  // namespace floorplan
