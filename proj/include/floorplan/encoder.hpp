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

#ifndef FLOORPLAN_ENCODER_H_
#define FLOORPLAN_ENCODER_H_

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "floorplan/model.hpp"

namespace floorplan {

enum class SmtSort { kInt, kReal, kBool };

// Arithmetic expression tree over rational constants and declared symbols.
// Kept deliberately small: the encodings need sums, differences and products.
struct Term {
  enum class Kind { kConst, kVar, kAdd, kSub, kMul };

  Kind kind = Kind::kConst;
  Rat value;           // kConst
  std::string symbol;  // kVar
  std::vector<Term> args;

  static Term Const(Rat v);
  static Term Var(std::string symbol);
  static Term Add(std::vector<Term> ts);
  static Term Sub(Term a, Term b);
  static Term Mul(std::vector<Term> ts);
};

enum class CmpOp { kLe, kLt, kGe, kGt, kEq };

// A single comparison, or a disjunction of comparisons when more than one
// entry is present.
struct Constraint {
  struct Cmp {
    CmpOp op;
    Term lhs, rhs;
  };
  std::vector<Cmp> disjuncts;

  static Constraint Single(CmpOp op, Term lhs, Term rhs);
  static Constraint AnyOf(std::vector<Cmp> cmps);
};

// The SMT symbols belonging to one block.
struct BlockVars {
  std::string x, y;
  std::string rotation;       // Case2 only
  std::string width, height;  // Case3 only
};

// Per unordered block pair: the two 0/1 selector variables whose four value
// combinations pick which separating inequality must bind.
struct PairVars {
  std::string first;
  std::string second;
};

struct RegionCap {
  Rat width, height;
};

// Assertion categories, tagged in emission order so tests and tooling can
// count them without re-deriving the layout.
enum class AssertTag { kDomain, kBoundary, kPairwise, kRegion, kExtra };

struct ConstraintSystem {
  CoordSort sort = CoordSort::kInteger;
  std::vector<std::pair<std::string, SmtSort>> declarations;
  std::vector<Constraint> assertions;
  std::vector<AssertTag> assertion_tags;  // parallel to assertions

  std::vector<std::string> block_order;
  std::map<std::string, BlockVars> block_vars;
  // (id_i, id_j, vars) for i<j by input order.
  std::vector<std::tuple<std::string, std::string, PairVars>> pair_vars;

  std::string region_w_sym = "c";
  std::string region_h_sym = "d";

  void AddAssertion(Constraint c, AssertTag tag);
  int CountTag(AssertTag tag) const;
};

// Emission layout, shared by all three cases and relied on by golden tests:
// per block in input order, its domain assertions (selector/rotation/shape
// bounds) then its origin and boundary assertions x>=0, y>=0, x+w<=c,
// y+h<=d; then per pair (i<j by input order) the selector domain followed by
// the four big-M inequalities in left/right/below/above order; then the
// region bounds c <= width_sum, d <= height_sum and any explicit region cap.

// Fixed blocks, no rotation. Selector pair (p,q) per block pair with big-M
// coefficients width_sum on x inequalities and height_sum on y inequalities.
ConstraintSystem EncodeCase1(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap);

// Fixed blocks with optional 90-degree rotation via a 0/1 variable per
// block; effective dimensions rot*h + (1-rot)*w and rot*w + (1-rot)*h, big-M
// constant max(width_sum, height_sum) on all four inequalities. Hard blocks
// get rotation pinned to 0.
ConstraintSystem EncodeCase2(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap);

// Soft blocks: per-block width/height variables with w*h = area and the
// aspect band encoded multiplicatively (h >= amin*w, h <= amax*w); pairwise
// constraints as Case1 with variable dimensions.
ConstraintSystem EncodeCase3(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap);

// Appends the area bound c*d <= bound (tag kExtra). Used by the bisection
// strategy and `encode --area-bound`.
void AddAreaBound(ConstraintSystem& system, const Rat& bound);

enum class Objective { kNone, kMinimizeProduct };

// QF_LIA / QF_NIA / QF_LRA / QF_NRA depending on the coordinate sort and on
// whether any assertion (or the objective) multiplies two variables.
std::string ChooseLogic(const ConstraintSystem& system, Objective objective);

// Deterministic SMT-LIB2 serialization: (set-logic <hint>), declare-const
// lines sorted by symbol, assert lines in assertion order, the optional
// (minimize (* c d)), then (check-sat) and (get-model).
std::string EmitSmtlib(const ConstraintSystem& system,
                       const std::string& logic_hint, Objective objective);

// Exact evaluation used by property tests and by the driver's sanity checks.
// Throws kIncompleteModel when a symbol is missing from env.
Rat EvalTerm(const Term& term, const std::map<std::string, Rat>& env);
bool EvalConstraint(const Constraint& constraint,
                    const std::map<std::string, Rat>& env);

}  // namespace floorplan

#endif  // FLOORPLAN_ENCODER_H_
