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

TEST_CASE("block factories fill the right fields") {
  Block h = Block::Hard("h", 3, 4);
  CHECK(h.kind == BlockKind::kHard);
  CHECK(h.BlockArea() == Rat(12));

  Block r = Block::Rotatable("r", 2, 5);
  CHECK(r.kind == BlockKind::kRotatable);
  CHECK(r.BlockArea() == Rat(10));

  Block s = Block::Soft("s", Rat(9), Rat(1, 2), Rat(2));
  CHECK(s.kind == BlockKind::kSoft);
  CHECK(s.BlockArea() == Rat(9));
  CHECK(s.aspect_min == Rat(1, 2));
  CHECK(s.aspect_max == Rat(2));
}

TEST_CASE("Check accepts a well-formed instance") {
  CHECK_NOTHROW(TwoHard().Check());
}

TEST_CASE("Check rejects duplicate ids") {
  ProblemInstance inst = TwoHard();
  inst.blocks.push_back(Block::Hard("a", 1, 1));
  bool threw = false;
  try {
    inst.Check();
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Errc::kDuplicateId);
    CHECK(std::string(e.what()).find("a") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("Check ties block kinds to the mode") {
  ProblemInstance inst = TwoHard();
  inst.blocks[0] = Block::Rotatable("a", 2, 1);
  CHECK_THROWS_AS(inst.Check(), Error);  // rotatable needs case2

  inst = TwoHard();
  inst.mode = SolveMode::kCase2;
  CHECK_NOTHROW(inst.Check());  // hard blocks stay legal under case2

  inst = TwoHard();
  inst.blocks[0] = Block::Soft("a", 4, Rat(1, 2), 2);
  CHECK_THROWS_AS(inst.Check(), Error);  // soft needs case3

  inst.mode = SolveMode::kCase3;
  CHECK_THROWS_AS(inst.Check(), Error);  // case3 allows only soft blocks
}

TEST_CASE("Check demands real coordinates for case3") {
  ProblemInstance inst;
  inst.name = "s";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Soft("a", 4, Rat(1, 2), 2)};
  CHECK_THROWS_AS(inst.Check(), Error);
  inst.coordinate_sort = CoordSort::kReal;
  CHECK_NOTHROW(inst.Check());
}

TEST_CASE("Check demands integral dimensions under the integer sort") {
  ProblemInstance inst = TwoHard();
  inst.blocks[0].width = Rat(3, 2);
  CHECK_THROWS_AS(inst.Check(), Error);
  inst.coordinate_sort = CoordSort::kReal;
  CHECK_NOTHROW(inst.Check());
}

TEST_CASE("Check rejects degenerate dimensions and bands") {
  ProblemInstance inst = TwoHard();
  inst.blocks[0].width = 0;
  CHECK_THROWS_AS(inst.Check(), Error);

  ProblemInstance soft;
  soft.name = "s";
  soft.mode = SolveMode::kCase3;
  soft.coordinate_sort = CoordSort::kReal;
  soft.blocks = {Block::Soft("a", 4, Rat(2), Rat(1))};  // min > max
  CHECK_THROWS_AS(soft.Check(), Error);
}

TEST_CASE("big-M parameters are the dimension sums") {
  ProblemInstance hard5 = LoadFixture("hard5.native");
  BigMParams p = ComputeBigMParams(hard5);
  CHECK(p.width_sum == Rat(43));
  CHECK(p.height_sum == Rat(41));
  CHECK(p.big_m == Rat(43));
}

TEST_CASE("big-M parameters bound soft blocks by their widest legal shape") {
  ProblemInstance soft5 = LoadFixture("soft5.native");
  BigMParams p = ComputeBigMParams(soft5);
  // ceil(sqrt(10*area)) per block: 39 + 22 + 22 + 26 + 24.
  CHECK(p.width_sum == Rat(133));
  CHECK(p.height_sum == Rat(133));
  CHECK(p.big_m == Rat(133));
}

TEST_CASE("big-M computation refuses an empty instance") {
  ProblemInstance inst;
  inst.name = "empty";
  CHECK_THROWS_AS(ComputeBigMParams(inst), Error);
}

TEST_CASE("rectangle disjointness counts shared edges as disjoint") {
  Rect a{0, 0, 2, 2};
  CHECK(RectsDisjoint(a, Rect{2, 0, 1, 1}));  // touching right edge
  CHECK(RectsDisjoint(a, Rect{0, 2, 2, 1}));  // touching top edge
  CHECK(RectsDisjoint(a, Rect{2, 2, 1, 1}));  // touching corner
  CHECK_FALSE(RectsDisjoint(a, Rect{1, 1, 2, 2}));
  CHECK_FALSE(RectsDisjoint(a, Rect{0, 0, 1, 1}));  // containment
}

TEST_CASE("status and mode names match the reporting vocabulary") {
  CHECK(std::string(StatusName(SolveStatus::kOptimal)) == "Optimal");
  CHECK(std::string(StatusName(SolveStatus::kFeasible)) == "Feasible");
  CHECK(std::string(StatusName(SolveStatus::kInfeasible)) == "Infeasible");
  CHECK(std::string(StatusName(SolveStatus::kTimeout)) == "Timeout");
  CHECK(std::string(ModeName(SolveMode::kCase2)) == "case2");
}

}  // namespace
}  // namespace floorplan
