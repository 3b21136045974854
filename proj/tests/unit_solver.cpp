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

#include "floorplan/solver.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>

#include "doctest.h"
#include "floorplan/errors.hpp"
#include "floorplan/validate.hpp"
#include "helpers.hpp"

namespace floorplan {
namespace {

using testing::LoadFixture;
using testing::TempDir;
using testing::TestBackendConfig;

ProblemInstance TwoHard() {
  ProblemInstance inst;
  inst.name = "two";
  inst.mode = SolveMode::kCase1;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Hard("a", 2, 1), Block::Hard("b", 1, 1)};
  return inst;
}

ProblemInstance LPair(SolveMode mode) {
  ProblemInstance inst;
  inst.name = mode == SolveMode::kCase1 ? "pair1" : "pair2";
  inst.mode = mode;
  inst.coordinate_sort = CoordSort::kInteger;
  if (mode == SolveMode::kCase1) {
    inst.blocks = {Block::Hard("a", 3, 1), Block::Hard("b", 1, 3)};
  } else {
    inst.blocks = {Block::Rotatable("a", 3, 1), Block::Rotatable("b", 1, 3)};
  }
  return inst;
}

// Two squares pinned by their aspect bands; best box is 3x4 = 12.
ProblemInstance PinnedSquares() {
  ProblemInstance inst;
  inst.name = "squares";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("a", 1, 1, 1), Block::Soft("b", 9, 1, 1)};
  return inst;
}

Errc CodeOfRun(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an Error");
}

TEST_CASE("model values parse exactly across the printable forms") {
  std::string model =
      "(\n"
      "  (define-fun x_a () Int 3)\n"
      "  (define-fun y_a () Int (- 2))\n"
      "  (define-fun half () Real (/ 1 2))\n"
      "  (define-fun neg_half () Real (- (/ 1 2)))\n"
      "  (define-fun dec () Real 1.5)\n"
      "  (define-fun approx () Real 1.414213562373?)\n"
      "  (define-fun cast () Real (to_real 5))\n"
      "  (define-fun flag () Bool true)\n"
      "  (define-fun off () Bool false)\n"
      "  (define-fun fun ((a Int)) Int 0)\n"
      ")\n";
  auto values = ParseModelValues(model);
  CHECK(values.at("x_a") == Rat(3));
  CHECK(values.at("y_a") == Rat(-2));
  CHECK(values.at("half") == Rat(1, 2));
  CHECK(values.at("neg_half") == Rat(-1, 2));
  CHECK(values.at("dec") == Rat(3, 2));
  CHECK(values.at("approx") == Rat(BigInt("1414213562373")) /
                                   Rat(BigInt("1000000000000")));
  CHECK(values.at("cast") == Rat(5));
  CHECK(values.at("flag") == Rat(1));
  CHECK(values.at("off") == Rat(0));
  CHECK(values.count("fun") == 0);  // bindings with arguments are skipped
}

TEST_CASE("placement extraction reads coordinates, rotations and shapes") {
  ProblemInstance inst;
  inst.name = "mix";
  inst.mode = SolveMode::kCase2;
  inst.coordinate_sort = CoordSort::kInteger;
  inst.blocks = {Block::Rotatable("a", 3, 1), Block::Hard("b", 1, 1)};
  ConstraintSystem sys = EncodeCase2(inst, ComputeBigMParams(inst), {});

  std::string model =
      "((define-fun x_a () Int 0)\n"
      " (define-fun y_a () Int 0)\n"
      " (define-fun rot_a () Int 1)\n"
      " (define-fun x_b () Int 1)\n"
      " (define-fun y_b () Int 0)\n"
      " (define-fun rot_b () Int 0)\n"
      " (define-fun c () Int 4)\n"
      " (define-fun d () Int 3))\n";
  Placement p = ExtractPlacement(model, sys, inst);
  CHECK(p.instance_name == "mix");
  CHECK(p.region_w == Rat(4));
  REQUIRE(p.blocks.size() == 2);
  CHECK(p.blocks[0].rotated);
  CHECK(p.blocks[0].placed_w == Rat(1));
  CHECK(p.blocks[0].placed_h == Rat(3));
  CHECK_FALSE(p.blocks[1].rotated);

  std::string missing = model.substr(0, model.find("(define-fun x_b"));
  missing += ")\n";
  CHECK(CodeOfRun([&] { ExtractPlacement(missing, sys, inst); }) ==
        Errc::kIncompleteModel);

  std::string bad_rot = model;
  bad_rot.replace(bad_rot.find("rot_a () Int 1"), 14, "rot_a () Int 2");
  CHECK(CodeOfRun([&] { ExtractPlacement(bad_rot, sys, inst); }) ==
        Errc::kProtocolError);
}

TEST_CASE("extraction rejects non-positive soft dimensions") {
  ProblemInstance inst;
  inst.name = "s";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("s1", 6, Rat(1, 2), 2)};
  ConstraintSystem sys = EncodeCase3(inst, ComputeBigMParams(inst), {});
  std::string model =
      "((define-fun x_s1 () Real 0)\n"
      " (define-fun y_s1 () Real 0)\n"
      " (define-fun w_s1 () Real 0)\n"
      " (define-fun h_s1 () Real 2)\n"
      " (define-fun c () Real 3)\n"
      " (define-fun d () Real 2))\n";
  CHECK(CodeOfRun([&] { ExtractPlacement(model, sys, inst); }) ==
        Errc::kProtocolError);
}

TEST_CASE("region tightening shrinks but never hides a breach") {
  Placement p;
  p.instance_name = "t";
  p.region_w = 10;
  p.region_h = 10;
  p.blocks = {{"a", 0, 0, 3, 1, false}, {"b", 0, 1, 2, 1, false}};
  TightenRegion(p);
  CHECK(p.region_w == Rat(3));
  CHECK(p.region_h == Rat(2));

  p.region_w = 2;  // block a pokes out; tightening must not expand
  TightenRegion(p);
  CHECK(p.region_w == Rat(2));
}

TEST_CASE("constructive incumbents always validate") {
  for (const char* name :
       {"hard5.native", "rot5.native", "soft5.native"}) {
    ProblemInstance inst = LoadFixture(name);
    BigMParams bounds = ComputeBigMParams(inst);
    auto placement = ConstructiveIncumbent(inst, bounds);
    REQUIRE_MESSAGE(placement.has_value(), name);
    CHECK_MESSAGE(
        Validate(*placement, inst, DefaultTolerance(inst)).empty(), name);
    CHECK(placement->region_w <= bounds.width_sum);
    CHECK(placement->region_h <= bounds.height_sum);
  }
}

TEST_CASE("soft strips realize the block-area sum exactly") {
  ProblemInstance soft5 = LoadFixture("soft5.native");
  auto placement = ConstructiveIncumbent(soft5, ComputeBigMParams(soft5));
  REQUIRE(placement.has_value());
  CHECK(placement->RegionArea() == Rat(362));
}

TEST_CASE("exact-square aspect bands get a constructive witness") {
  ProblemInstance inst;
  inst.name = "sq";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("a", 4, 1, 1)};
  auto placement = ConstructiveIncumbent(inst, ComputeBigMParams(inst));
  REQUIRE(placement.has_value());
  CHECK(placement->RegionArea() == Rat(4));
  CHECK(placement->blocks[0].placed_w == Rat(2));
}

TEST_CASE("irrational pinned shapes yield no incumbent") {
  ProblemInstance inst;
  inst.name = "irr";
  inst.mode = SolveMode::kCase3;
  inst.coordinate_sort = CoordSort::kReal;
  inst.blocks = {Block::Soft("a", 2, 1, 1)};  // side sqrt(2)
  CHECK_FALSE(ConstructiveIncumbent(inst, ComputeBigMParams(inst)));
}

TEST_CASE("sweep width candidates are the reachable subset sums") {
  ProblemInstance two = TwoHard();
  auto c1 = SweepWidthCandidates(two, ComputeBigMParams(two), 4096);
  CHECK(c1 == std::vector<Rat>{Rat(2), Rat(3)});

  ProblemInstance pair = LPair(SolveMode::kCase2);
  auto c2 = SweepWidthCandidates(pair, ComputeBigMParams(pair), 4096);
  CHECK(c2 == std::vector<Rat>{Rat(1), Rat(2), Rat(3), Rat(4)});

  CHECK(SweepWidthCandidates(pair, ComputeBigMParams(pair), 1).empty());
}

TEST_CASE("strategy defaults follow the sort and the dialect") {
  BackendConfig plain;
  plain.dialect = Dialect::kPlainSmt2;
  BackendConfig opt;
  opt.dialect = Dialect::kOptimizingSmt2;

  CHECK(DefaultStrategy(TwoHard(), plain) == StrategyKind::kWidthSweep);
  CHECK(DefaultStrategy(PinnedSquares(), plain) ==
        StrategyKind::kAreaBisection);
  CHECK(DefaultStrategy(TwoHard(), opt) == StrategyKind::kNativeObjective);
}

TEST_CASE("query protocol: verdicts, timeouts and failures") {
  TempDir dir;
  BackendConfig config;
  config.timeout_sec = 10;
  config.runs_dir = dir.path() + "/runs";

  SUBCASE("sat with a model body") {
    config.executable = dir.WriteFile(
        "sat.sh", "#!/bin/sh\necho sat\necho '((define-fun v () Int 7))'\n",
        true);
    QueryOutcome out = RunQuery("(check-sat)\n", config);
    CHECK(out.verdict == Verdict::kSat);
    CHECK(out.model_text.find("define-fun v") != std::string::npos);
  }

  SUBCASE("unsat and unknown verdicts") {
    config.executable =
        dir.WriteFile("unsat.sh", "#!/bin/sh\necho unsat\n", true);
    CHECK(RunQuery("(check-sat)\n", config).verdict == Verdict::kUnsat);
    config.executable =
        dir.WriteFile("unknown.sh", "#!/bin/sh\necho unknown\n", true);
    CHECK(RunQuery("(check-sat)\n", config).verdict == Verdict::kUnknown);
  }

  SUBCASE("scripts can arrive on stdin") {
    config.executable = dir.WriteFile(
        "stdin.sh", "#!/bin/sh\ncat > /dev/null\necho unsat\n", true);
    config.script_as_file = false;
    CHECK(RunQuery("(check-sat)\n", config).verdict == Verdict::kUnsat);
  }

  SUBCASE("output without a verdict is a protocol error") {
    config.executable = dir.WriteFile(
        "garbage.sh", "#!/bin/sh\necho 'flibbertigibbet'\n", true);
    try {
      RunQuery("(check-sat)\n", config);
      FAIL_CHECK("expected kProtocolError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kProtocolError);
      CHECK(std::string(e.what()).find("flibbertigibbet") !=
            std::string::npos);
    }
  }

  SUBCASE("a missing executable is a backend failure") {
    config.executable = dir.path() + "/does-not-exist";
    CHECK(CodeOfRun([&] { RunQuery("(check-sat)\n", config); }) ==
          Errc::kBackendUnavailable);
  }

  SUBCASE("a hung backend is killed at the deadline") {
    config.executable =
        dir.WriteFile("hang.sh", "#!/bin/sh\nsleep 30\n", true);
    config.timeout_sec = 0.3;
    auto start = std::chrono::steady_clock::now();
    QueryOutcome out = RunQuery("(check-sat)\n", config);
    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    CHECK(out.verdict == Verdict::kTimedOut);
    CHECK(elapsed < 10);
  }
}

TEST_CASE("configuration errors surface before any backend runs") {
  BackendConfig config;
  config.executable = "/nonexistent-backend";

  CHECK(CodeOfRun([&] {
          MinimizeArea(PinnedSquares(), StrategyKind::kWidthSweep, config,
                       Rat(1));
        }) == Errc::kConfigError);  // sweep needs the integer sort
  CHECK(CodeOfRun([&] {
          MinimizeArea(TwoHard(), StrategyKind::kNativeObjective, config,
                       Rat(0));
        }) == Errc::kConfigError);  // plain dialect has no minimize
  CHECK(CodeOfRun([&] {
          MinimizeArea(PinnedSquares(), StrategyKind::kAreaBisection, config,
                       Rat(0));
        }) == Errc::kConfigError);  // real bisection needs a tolerance
  ProblemInstance empty;
  empty.name = "none";
  CHECK(CodeOfRun([&] {
          MinimizeArea(empty, StrategyKind::kWidthSweep, config, Rat(0));
        }) == Errc::kInstanceEmpty);
}

TEST_CASE("sweep proves optimality without queries when the incumbent wins") {
  // 2x1 + 1x1 pack perfectly into 3x1; every candidate bracket is empty.
  BackendConfig config;
  config.executable = "/nonexistent-backend";  // must never be spawned
  TempDir dir;
  config.runs_dir = dir.path() + "/runs";
  SolveOutcome out =
      MinimizeArea(TwoHard(), StrategyKind::kWidthSweep, config, Rat(0));
  CHECK(out.report.status == SolveStatus::kOptimal);
  CHECK(out.report.area == Rat(3));
  CHECK(out.report.solver_queries == 0);
  REQUIRE(out.placement.has_value());
  CHECK(Validate(*out.placement, TwoHard(), Rat(0)).empty());
}

TEST_CASE("sweep refutes the L-pair below its shelf area") {
  TempDir dir;
  BackendConfig config = TestBackendConfig("sweep-pair");
  config.runs_dir = dir.path() + "/runs";
  ProblemInstance pair = LPair(SolveMode::kCase1);
  SolveOutcome out =
      MinimizeArea(pair, StrategyKind::kWidthSweep, config, Rat(0));
  CHECK(out.report.status == SolveStatus::kOptimal);
  CHECK(out.report.area == Rat(12));
  CHECK(out.report.solver_queries == 1);  // one unsat probe at 3x3
  REQUIRE(out.placement.has_value());
  CHECK(Validate(*out.placement, pair, Rat(0)).empty());
  CHECK(std::filesystem::exists(dir.path() + "/runs/pair1/query-1.smt2"));
  CHECK(std::filesystem::exists(dir.path() + "/runs/pair1/query-1.out"));
}

TEST_CASE("rotation lets the L-pair close at its block area") {
  TempDir dir;
  BackendConfig config = TestBackendConfig("sweep-pair2");
  config.runs_dir = dir.path() + "/runs";
  ProblemInstance pair = LPair(SolveMode::kCase2);
  SolveOutcome out =
      MinimizeArea(pair, StrategyKind::kWidthSweep, config, Rat(0));
  CHECK(out.report.status == SolveStatus::kOptimal);
  CHECK(out.report.area == Rat(6));
  REQUIRE(out.placement.has_value());
  CHECK(Validate(*out.placement, pair, Rat(0)).empty());
}

TEST_CASE("real bisection closes a fractional bracket") {
  TempDir dir;
  BackendConfig config = TestBackendConfig("bisect-squares");
  config.runs_dir = dir.path() + "/runs";
  ProblemInstance squares = PinnedSquares();
  SolveOutcome out = MinimizeArea(squares, StrategyKind::kAreaBisection,
                                  config, Rat(1, 2));
  CHECK(out.report.status == SolveStatus::kOptimal);
  CHECK(out.report.area == Rat(12));
  CHECK(out.report.solver_queries >= 1);
  REQUIRE(out.placement.has_value());
  CHECK(Validate(*out.placement, squares, DefaultTolerance(squares)).empty());
}

TEST_CASE("query timeouts degrade to a feasible incumbent") {
  TempDir dir;
  BackendConfig config;
  config.executable = dir.WriteFile("hang.sh", "#!/bin/sh\nsleep 30\n", true);
  config.timeout_sec = 0.3;
  config.runs_dir = dir.path() + "/runs";
  ProblemInstance pair = LPair(SolveMode::kCase1);
  SolveOutcome out =
      MinimizeArea(pair, StrategyKind::kWidthSweep, config, Rat(0));
  CHECK(out.report.status == SolveStatus::kFeasible);
  CHECK(out.report.area == Rat(12));  // shelf incumbent stands
  REQUIRE(out.placement.has_value());
}

TEST_CASE("no incumbent plus timeouts reports an honest timeout") {
  TempDir dir;
  BackendConfig config;
  config.executable = dir.WriteFile("hang.sh", "#!/bin/sh\nsleep 30\n", true);
  config.timeout_sec = 0.3;
  config.runs_dir = dir.path() + "/runs";
  ProblemInstance irr;  // sqrt(2) square: no constructive witness
  irr.name = "irr";
  irr.mode = SolveMode::kCase3;
  irr.coordinate_sort = CoordSort::kReal;
  irr.blocks = {Block::Soft("a", 2, 1, 1)};
  SolveOutcome out = MinimizeArea(irr, StrategyKind::kAreaBisection, config,
                                  Rat(1, 1000));
  CHECK(out.report.status == SolveStatus::kTimeout);
  CHECK_FALSE(out.placement.has_value());
}

}  // namespace
}  // namespace floorplan
