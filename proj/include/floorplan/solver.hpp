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

#ifndef FLOORPLAN_SOLVER_H_
#define FLOORPLAN_SOLVER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floorplan/encoder.hpp"
#include "floorplan/model.hpp"

namespace floorplan {

// PlainSmt2: standard solver, no optimization directives. OptimizingSmt2:
// the backend accepts (minimize ...) before (check-sat).
enum class Dialect { kPlainSmt2, kOptimizingSmt2 };

struct BackendConfig {
  std::string executable;  // path or bare name looked up on PATH
  Dialect dialect = Dialect::kPlainSmt2;
  double timeout_sec = 60.0;  // per query
  std::vector<std::string> extra_args;
  // When false the script goes to the child's stdin instead of a temp file
  // passed as the last argument.
  bool script_as_file = true;
  // Real-sorted scripts get a prelude asking the solver to print model
  // values as decimals (finite precision); exact parses still win when the
  // output stays rational. Understood by z3-style backends; turn off for
  // backends that reject unknown options.
  bool decimal_model_prelude = true;
  std::string runs_dir = "runs";  // query transcripts live here
  int jobs = 1;                   // parallel process budget
};

enum class Verdict { kSat, kUnsat, kUnknown, kTimedOut };

struct QueryOutcome {
  Verdict verdict = Verdict::kUnknown;
  std::string model_text;  // everything after the verdict line when sat
  std::string raw_output;
};

// One solver process per query: spawns config.executable, feeds the script,
// parses the sat/unsat/unknown verdict, kills the child at timeout.
// Throws kBackendUnavailable when the executable cannot be started and
// kProtocolError when the output carries no verdict.
QueryOutcome RunQuery(const std::string& script, const BackendConfig& config);

// Zero-arity define-fun bindings from a get-model block, parsed exactly:
// integers, decimals (a trailing '?' marking an approximation is accepted),
// (/ p q), unary minus, true/false as 1/0. Bindings with arguments are
// ignored.
std::map<std::string, Rat> ParseModelValues(const std::string& model_text);

// Binds the system's symbols out of a model and builds the placement.
// Throws kIncompleteModel naming the first missing symbol.
Placement ExtractPlacement(const std::string& model_text,
                           const ConstraintSystem& system,
                           const ProblemInstance& instance);

// Shrinks the region to the exact bounding box of the placed blocks. Any
// model region can only be enlarged by slack; this never invalidates a
// placement.
void TightenRegion(Placement& placement);

enum class StrategyKind { kNativeObjective, kAreaBisection, kWidthSweep };

// NativeObjective when the dialect supports it, else WidthSweep for integer
// instances and AreaBisection for real ones.
StrategyKind DefaultStrategy(const ProblemInstance& instance,
                             const BackendConfig& config);

// Deterministic solver-free packing used to seed the search with a feasible
// incumbent (shelf packing for fixed blocks, stacked shaped strips for soft
// ones). The result always passes the validator and stays within the
// region bounds. Returns nullopt only for soft instances whose aspect bands
// admit no convenient rational witness (e.g. a degenerate band pinning an
// irrational shape).
std::optional<Placement> ConstructiveIncumbent(const ProblemInstance& instance,
                                               const BigMParams& bounds);

struct SolveOutcome {
  std::optional<Placement> placement;
  SolveReport report;
};

// Area minimization around repeated satisfiability queries. All strategies
// start from the constructive incumbent, validate every model before
// accepting it, tighten regions, and log every query transcript under
// <runs_dir>/<instance>/. Statuses: kOptimal when the bracket provably
// closed, kFeasible when a timeout or unknown stopped the search with an
// incumbent in hand, kTimeout when there is no incumbent at all.
SolveOutcome MinimizeArea(const ProblemInstance& instance,
                          StrategyKind strategy, const BackendConfig& config,
                          const Rat& tolerance);

// Subset-sum candidate widths for the sweep strategy; exposed for tests.
// Sorted ascending, capped at bounds.width_sum. Over `limit` candidates the
// sweep falls back to bisection.
std::vector<Rat> SweepWidthCandidates(const ProblemInstance& instance,
                                      const BigMParams& bounds, size_t limit);

SolveReport MakeReport(const ProblemInstance& instance,
                       const std::optional<Placement>& placement,
                       SolveStatus status, double wall_time_sec, int queries);

}  // namespace floorplan

#endif  // FLOORPLAN_SOLVER_H_
