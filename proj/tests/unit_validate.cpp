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

#include "doctest.h"
#include "floorplan/errors.hpp"
#include "helpers.hpp"

namespace floorplan {
namespace {

using testing::LoadFixture;

ProblemInstance TwoHard() {
  ProblemInstance inst;
  inst.name = "two";
  inst.mode = SolveMode::kCase1;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Hard("a", 2, 1), Block::Hard("b", 1, 1)};
  return inst;
}

Placement TwoHardPlacement() {
  Placement p;
  p.instance_name = "two";
  p.region_w = 3;
  p.region_h = 1;
  p.blocks = {{"a", 0, 0, 2, 1, false}, {"b", 2, 0, 1, 1, false}};
  return p;
}

bool HasRule(const std::vector<Violation>& vs, Rule rule) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

TEST_CASE("a clean placement validates with no violations") {
  CHECK(Validate(TwoHardPlacement(), TwoHard(), Rat(0)).empty());
}

TEST_CASE("overlaps are caught") {
  Placement p = TwoHardPlacement();
  p.blocks[1].x = 1;  // a covers [0,2), b starts inside it
  auto vs = Validate(p, TwoHard(), Rat(0));
  CHECK(HasRule(vs, Rule::kOverlap));
}

TEST_CASE("region breaches and negative origins are caught") {
  Placement p = TwoHardPlacement();
  p.blocks[1].x = 3;  // pokes past region_w = 3
  CHECK(HasRule(Validate(p, TwoHard(), Rat(0)), Rule::kBoundary));

  p = TwoHardPlacement();
  p.blocks[0].y = -1;
  CHECK(HasRule(Validate(p, TwoHard(), Rat(0)), Rule::kBoundary));
}

TEST_CASE("dimension tampering is caught for fixed blocks") {
  Placement p = TwoHardPlacement();
  p.blocks[0].placed_w = 1;  // declared 2x1
  CHECK(HasRule(Validate(p, TwoHard(), Rat(0)), Rule::kDimensionMismatch));

  p = TwoHardPlacement();
  p.blocks[0].placed_w = 0;
  auto vs = Validate(p, TwoHard(), Rat(0));
  CHECK(HasRule(vs, Rule::kNonPositive));
}

TEST_CASE("rotation flags must match the placed dimensions") {
  ProblemInstance inst;
  inst.name = "r";
  inst.mode = SolveMode::kCase2;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Rotatable("a", 3, 1), Block::Hard("b", 1, 1)};

  Placement p;
  p.instance_name = "r";
  p.region_w = 4;
  p.region_h = 3;
  p.blocks = {{"a", 0, 0, 1, 3, true}, {"b", 1, 0, 1, 1, false}};
  CHECK(Validate(p, inst, Rat(0)).empty());

  p.blocks[0].rotated = false;  // dims say rotated, flag says not
  CHECK(HasRule(Validate(p, inst, Rat(0)), Rule::kRotationFlag));

  // Hard blocks may not rotate even under case2.
  p.blocks[0] = {"a", 0, 0, 1, 3, true};
  p.blocks[1] = {"b", 1, 0, 1, 1, true};
  CHECK(HasRule(Validate(p, inst, Rat(0)), Rule::kRotationFlag));
}

TEST_CASE("soft blocks must keep their area and aspect band") {
  ProblemInstance inst;
  inst.name = "s";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("a", 6, Rat(1, 2), Rat(2))};

  Placement p;
  p.instance_name = "s";
  p.region_w = 3;
  p.region_h = 2;
  p.blocks = {{"a", 0, 0, 3, 2, false}};
  CHECK(Validate(p, inst, DefaultTolerance(inst)).empty());

  p.blocks[0].placed_h = Rat(3, 2);  // area 4.5 != 6
  CHECK(HasRule(Validate(p, inst, DefaultTolerance(inst)),
                Rule::kAreaMismatch));

  p.region_w = 6;
  p.blocks[0] = {"a", 0, 0, 6, 1, false};  // aspect 1/6 < 1/2
  CHECK(HasRule(Validate(p, inst, DefaultTolerance(inst)),
                Rule::kAspectBand));
}

TEST_CASE("the relative tolerance forgives solver round-off") {
  ProblemInstance inst;
  inst.name = "s";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("a", 6, Rat(1, 2), Rat(2))};

  Placement p;
  p.instance_name = "s";
  p.region_w = 3;
  p.region_h = Rat(2) + Rat(1, 10000000);
  p.blocks = {{"a", 0, 0, 3, Rat(2) + Rat(1, 10000000), false}};
  CHECK(Validate(p, inst, Rat(1, 1000000)).empty());
  CHECK_FALSE(Validate(p, inst, Rat(0)).empty());
}

TEST_CASE("placements must cover exactly the instance blocks") {
  Placement p = TwoHardPlacement();
  p.blocks.pop_back();
  CHECK_THROWS_AS(Validate(p, TwoHard(), Rat(0)), Error);

  p = TwoHardPlacement();
  p.blocks.push_back({"ghost", 0, 0, 1, 1, false});
  CHECK_THROWS_AS(Validate(p, TwoHard(), Rat(0)), Error);
}

TEST_CASE("default tolerance keys off the coordinate sort") {
  CHECK(DefaultTolerance(TwoHard()) == Rat(0));
  ProblemInstance soft = LoadFixture("soft5.native");
  CHECK(DefaultTolerance(soft) == Rat(1, 1000000));
}

TEST_CASE("dead space percentage arithmetic") {
  CHECK(DeadSpacePct(Rat(12), Rat(6)) == Rat(50));
  CHECK(DeadSpacePct(Rat(396), Rat(362)) == Rat(100) * Rat(34, 396));
  CHECK(DeadSpacePct(Rat(10), Rat(10)) == Rat(0));

  auto [area, dead] = DeadSpace(TwoHardPlacement(), TwoHard());
  CHECK(area == Rat(3));
  CHECK(dead == Rat(0));
}

TEST_CASE("oracle optimum for the two-block instance") {
  OracleResult r = BruteForceOptimum(TwoHard(), false);
  CHECK(r.area == Rat(3));
  CHECK(Validate(r.witness, TwoHard(), Rat(0)).empty());
}

TEST_CASE("oracle shows rotation strictly helps the L-pair") {
  ProblemInstance inst;
  inst.name = "pair";
  inst.mode = SolveMode::kCase2;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Rotatable("a", 3, 1), Block::Rotatable("b", 1, 3)};
  CHECK(BruteForceOptimum(inst, true).area == Rat(6));
  CHECK(BruteForceOptimum(inst, false).area == Rat(12));
}

TEST_CASE("oracle region caps can forbid the unconstrained optimum") {
  // Three rotatable blocks whose best packing is a 17x3 strip; the dimension
  // sums 12x14 cap it out, pushing the constrained optimum to 54.
  ProblemInstance inst;
  inst.name = "capgap";
  inst.mode = SolveMode::kCase2;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Rotatable("a", 3, 5), Block::Rotatable("b", 3, 6),
                 Block::Rotatable("c", 6, 3)};
  BigMParams bounds = ComputeBigMParams(inst);
  CHECK(bounds.width_sum == Rat(12));
  CHECK(bounds.height_sum == Rat(14));
  CHECK(BruteForceOptimum(inst, true).area == Rat(51));
  CHECK(BruteForceOptimum(
            inst, true,
            std::make_pair(bounds.width_sum, bounds.height_sum))
            .area == Rat(54));
}

TEST_CASE("oracle guard rejects oversized inputs") {
  ProblemInstance big;
  big.name = "big";
  big.mode = SolveMode::kCase1;
  big.coordinate_sort = CoordSort::kInteger;
  for (int i = 0; i < 6; ++i) {
    big.blocks.push_back(Block::Hard("b" + std::to_string(i), 1, 1));
  }
  CHECK_THROWS_AS(BruteForceOptimum(big, false), Error);
}

}  // namespace
}  // namespace floorplan
