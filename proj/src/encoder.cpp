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

#include "floorplan/encoder.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace floorplan {

Term Term::Const(Rat v) {
  Term t;
  t.kind = Kind::kConst;
  t.value = std::move(v);
  return t;
}

Term Term::Var(std::string symbol) {
  Term t;
  t.kind = Kind::kVar;
  t.symbol = std::move(symbol);
  return t;
}

Term Term::Add(std::vector<Term> ts) {
  Term t;
  t.kind = Kind::kAdd;
  t.args = std::move(ts);
  return t;
}

Term Term::Sub(Term a, Term b) {
  Term t;
  t.kind = Kind::kSub;
  t.args.push_back(std::move(a));
  t.args.push_back(std::move(b));
  return t;
}

Term Term::Mul(std::vector<Term> ts) {
  Term t;
  t.kind = Kind::kMul;
  t.args = std::move(ts);
  return t;
}

Constraint Constraint::Single(CmpOp op, Term lhs, Term rhs) {
  Constraint c;
  c.disjuncts.push_back(Cmp{op, std::move(lhs), std::move(rhs)});
  return c;
}

Constraint Constraint::AnyOf(std::vector<Cmp> cmps) {
  Constraint c;
  c.disjuncts = std::move(cmps);
  return c;
}

void ConstraintSystem::AddAssertion(Constraint c, AssertTag tag) {
  assertions.push_back(std::move(c));
  assertion_tags.push_back(tag);
}

int ConstraintSystem::CountTag(AssertTag tag) const {
  return static_cast<int>(
      std::count(assertion_tags.begin(), assertion_tags.end(), tag));
}

namespace {

// SMT symbols derived from user block ids: keep [A-Za-z0-9_], map the rest
// to '_', prefix a letter when needed, and deduplicate deterministically.
class SymbolTable {
 public:
  std::string Fresh(const std::string& wanted) {
    std::string base;
    for (char c : wanted) {
      base += (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                  ? c
                  : '_';
    }
    if (base.empty() || std::isdigit(static_cast<unsigned char>(base[0]))) {
      base = "b" + base;
    }
    std::string candidate = base;
    int suffix = 2;
    while (!used_.insert(candidate).second) {
      candidate = base + "_" + std::to_string(suffix++);
    }
    return candidate;
  }

 private:
  std::set<std::string> used_;
};

class SystemBuilder {
 public:
  SystemBuilder(const ProblemInstance& instance, const BigMParams& bounds)
      : instance_(instance), bounds_(bounds) {
    sys_.sort = instance.coordinate_sort;
    sys_.region_w_sym = table_.Fresh("c");
    sys_.region_h_sym = table_.Fresh("d");
  }

  void Declare(const std::string& symbol) {
    sys_.declarations.emplace_back(symbol,
                                   sys_.sort == CoordSort::kInteger
                                       ? SmtSort::kInt
                                       : SmtSort::kReal);
  }

  // 0/1 selector domain. Integer sort: 0 <= v <= 1. Real sort: v = 0 or
  // v = 1 as a disjunction, which keeps the whole system in one sort (mixed
  // Int/Real systems push solvers into much weaker tactics).
  void AssertZeroOne(const std::string& symbol, AssertTag tag) {
    if (sys_.sort == CoordSort::kInteger) {
      sys_.AddAssertion(Constraint::Single(CmpOp::kGe, Term::Var(symbol),
                                           Term::Const(0)),
                        tag);
      sys_.AddAssertion(Constraint::Single(CmpOp::kLe, Term::Var(symbol),
                                           Term::Const(1)),
                        tag);
    } else {
      sys_.AddAssertion(
          Constraint::AnyOf(
              {Constraint::Cmp{CmpOp::kEq, Term::Var(symbol), Term::Const(0)},
               Constraint::Cmp{CmpOp::kEq, Term::Var(symbol),
                               Term::Const(1)}}),
          tag);
    }
  }

  void DeclareBlocks(bool with_rotation, bool with_shape) {
    for (const Block& b : instance_.blocks) {
      BlockVars vars;
      vars.x = table_.Fresh("x_" + b.id);
      vars.y = table_.Fresh("y_" + b.id);
      Declare(vars.x);
      Declare(vars.y);
      if (with_rotation) {
        vars.rotation = table_.Fresh("rot_" + b.id);
        Declare(vars.rotation);
      }
      if (with_shape) {
        vars.width = table_.Fresh("w_" + b.id);
        vars.height = table_.Fresh("h_" + b.id);
        Declare(vars.width);
        Declare(vars.height);
      }
      sys_.block_order.push_back(b.id);
      sys_.block_vars[b.id] = vars;
    }
    Declare(sys_.region_w_sym);
    Declare(sys_.region_h_sym);
    for (size_t i = 0; i < instance_.blocks.size(); ++i) {
      for (size_t j = i + 1; j < instance_.blocks.size(); ++j) {
        PairVars pv;
        const std::string& a = instance_.blocks[i].id;
        const std::string& bb = instance_.blocks[j].id;
        pv.first = table_.Fresh("px_" + a + "_" + bb);
        pv.second = table_.Fresh("py_" + a + "_" + bb);
        Declare(pv.first);
        Declare(pv.second);
        sys_.pair_vars.emplace_back(a, bb, pv);
      }
    }
  }

  // Effective width of a block under the rotation variable:
  // rot*h + (1-rot)*w. Height swaps the roles.
  Term EffectiveDim(const Block& b, bool width) const {
    const BlockVars& vars = sys_.block_vars.at(b.id);
    if (b.kind == BlockKind::kSoft) {
      return Term::Var(width ? vars.width : vars.height);
    }
    if (vars.rotation.empty()) {
      return Term::Const(width ? b.width : b.height);
    }
    Rat straight = width ? b.width : b.height;
    Rat turned = width ? b.height : b.width;
    return Term::Add(
        {Term::Mul({Term::Const(turned), Term::Var(vars.rotation)}),
         Term::Mul({Term::Const(straight),
                    Term::Sub(Term::Const(1), Term::Var(vars.rotation))})});
  }

  void AssertBoundary(const Block& b) {
    const BlockVars& vars = sys_.block_vars.at(b.id);
    sys_.AddAssertion(
        Constraint::Single(CmpOp::kGe, Term::Var(vars.x), Term::Const(0)),
        AssertTag::kBoundary);
    sys_.AddAssertion(
        Constraint::Single(CmpOp::kGe, Term::Var(vars.y), Term::Const(0)),
        AssertTag::kBoundary);
    sys_.AddAssertion(
        Constraint::Single(CmpOp::kLe,
                           Term::Add({Term::Var(vars.x),
                                      EffectiveDim(b, /*width=*/true)}),
                           Term::Var(sys_.region_w_sym)),
        AssertTag::kBoundary);
    sys_.AddAssertion(
        Constraint::Single(CmpOp::kLe,
                           Term::Add({Term::Var(vars.y),
                                      EffectiveDim(b, /*width=*/false)}),
                           Term::Var(sys_.region_h_sym)),
        AssertTag::kBoundary);
  }

  // The four separating inequalities for pair (i,j) with selector pair
  // (p,q): (0,0) places i left of j, (1,0) right, (0,1) below, (1,1) above.
  // Each non-selected inequality is slackened by the big-M constant times a
  // non-negative selector expression.
  void AssertPairwise(const Block& bi, const Block& bj, const PairVars& pv,
                      const Rat& mx, const Rat& my) {
    const BlockVars& vi = sys_.block_vars.at(bi.id);
    const BlockVars& vj = sys_.block_vars.at(bj.id);
    Term p = Term::Var(pv.first);
    Term q = Term::Var(pv.second);

    // left: x_i + w_i <= x_j + Mx*(p + q)
    sys_.AddAssertion(
        Constraint::Single(
            CmpOp::kLe,
            Term::Add({Term::Var(vi.x), EffectiveDim(bi, true)}),
            Term::Add({Term::Var(vj.x),
                       Term::Mul({Term::Const(mx), Term::Add({p, q})})})),
        AssertTag::kPairwise);
    // right: x_i - w_j >= x_j - Mx*(1 - p + q)
    sys_.AddAssertion(
        Constraint::Single(
            CmpOp::kGe,
            Term::Sub(Term::Var(vi.x), EffectiveDim(bj, true)),
            Term::Sub(Term::Var(vj.x),
                      Term::Mul({Term::Const(mx),
                                 Term::Sub(Term::Add({Term::Const(1), q}),
                                           p)}))),
        AssertTag::kPairwise);
    // below: y_i + h_i <= y_j + My*(1 + p - q)
    sys_.AddAssertion(
        Constraint::Single(
            CmpOp::kLe,
            Term::Add({Term::Var(vi.y), EffectiveDim(bi, false)}),
            Term::Add({Term::Var(vj.y),
                       Term::Mul({Term::Const(my),
                                  Term::Sub(Term::Add({Term::Const(1), p}),
                                            q)})})),
        AssertTag::kPairwise);
    // above: y_i - h_j >= y_j - My*(2 - p - q)
    sys_.AddAssertion(
        Constraint::Single(
            CmpOp::kGe,
            Term::Sub(Term::Var(vi.y), EffectiveDim(bj, false)),
            Term::Sub(Term::Var(vj.y),
                      Term::Mul({Term::Const(my),
                                 Term::Sub(Term::Const(2),
                                           Term::Add({p, q}))}))),
        AssertTag::kPairwise);
  }

  void AssertRegionBounds(const std::optional<RegionCap>& cap) {
    sys_.AddAssertion(Constraint::Single(CmpOp::kLe,
                                         Term::Var(sys_.region_w_sym),
                                         Term::Const(bounds_.width_sum)),
                      AssertTag::kRegion);
    sys_.AddAssertion(Constraint::Single(CmpOp::kLe,
                                         Term::Var(sys_.region_h_sym),
                                         Term::Const(bounds_.height_sum)),
                      AssertTag::kRegion);
    if (cap) {
      sys_.AddAssertion(Constraint::Single(CmpOp::kLe,
                                           Term::Var(sys_.region_w_sym),
                                           Term::Const(ClampToSort(cap->width))),
                        AssertTag::kRegion);
      sys_.AddAssertion(
          Constraint::Single(CmpOp::kLe, Term::Var(sys_.region_h_sym),
                             Term::Const(ClampToSort(cap->height))),
          AssertTag::kRegion);
    }
  }

  // Integer-sorted systems cannot compare an Int symbol with a fractional
  // literal; flooring the cap keeps the meaning (c <= 5/2 iff c <= 2).
  Rat ClampToSort(const Rat& v) const {
    if (sys_.sort == CoordSort::kInteger && !IsInteger(v)) {
      return Rat(FloorRat(v));
    }
    return v;
  }

  ConstraintSystem Take() { return std::move(sys_); }

  ConstraintSystem sys_;
  SymbolTable table_;
  const ProblemInstance& instance_;
  const BigMParams& bounds_;
};

void RequireMode(const ProblemInstance& instance, SolveMode mode) {
  if (instance.mode != mode) {
    throw Error(Errc::kModeMismatch,
                std::string("encoder for ") + ModeName(mode) + " got a " +
                    ModeName(instance.mode) + " instance");
  }
  instance.Check();
}

}  // namespace

ConstraintSystem EncodeCase1(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap) {
  RequireMode(instance, SolveMode::kCase1);
  SystemBuilder b(instance, bounds);
  b.DeclareBlocks(/*with_rotation=*/false, /*with_shape=*/false);
  for (const Block& blk : instance.blocks) {
    b.AssertBoundary(blk);
  }
  for (const auto& [ia, ib, pv] : b.sys_.pair_vars) {
    b.AssertZeroOne(pv.first, AssertTag::kDomain);
    b.AssertZeroOne(pv.second, AssertTag::kDomain);
    const Block* bi = nullptr;
    const Block* bj = nullptr;
    for (const Block& blk : instance.blocks) {
      if (blk.id == ia) bi = &blk;
      if (blk.id == ib) bj = &blk;
    }
    b.AssertPairwise(*bi, *bj, pv, bounds.width_sum, bounds.height_sum);
  }
  b.AssertRegionBounds(region_cap);
  return b.Take();
}

ConstraintSystem EncodeCase2(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap) {
  RequireMode(instance, SolveMode::kCase2);
  SystemBuilder b(instance, bounds);
  b.DeclareBlocks(/*with_rotation=*/true, /*with_shape=*/false);
  for (const Block& blk : instance.blocks) {
    const std::string& rot = b.sys_.block_vars.at(blk.id).rotation;
    b.AssertZeroOne(rot, AssertTag::kDomain);
    if (blk.kind == BlockKind::kHard) {
      b.sys_.AddAssertion(
          Constraint::Single(CmpOp::kEq, Term::Var(rot), Term::Const(0)),
          AssertTag::kDomain);
    }
    b.AssertBoundary(blk);
  }
  for (const auto& [ia, ib, pv] : b.sys_.pair_vars) {
    b.AssertZeroOne(pv.first, AssertTag::kDomain);
    b.AssertZeroOne(pv.second, AssertTag::kDomain);
    const Block* bi = nullptr;
    const Block* bj = nullptr;
    for (const Block& blk : instance.blocks) {
      if (blk.id == ia) bi = &blk;
      if (blk.id == ib) bj = &blk;
    }
    b.AssertPairwise(*bi, *bj, pv, bounds.big_m, bounds.big_m);
  }
  b.AssertRegionBounds(region_cap);
  return b.Take();
}

ConstraintSystem EncodeCase3(const ProblemInstance& instance,
                             const BigMParams& bounds,
                             std::optional<RegionCap> region_cap) {
  RequireMode(instance, SolveMode::kCase3);
  SystemBuilder b(instance, bounds);
  b.DeclareBlocks(/*with_rotation=*/false, /*with_shape=*/true);
  for (const Block& blk : instance.blocks) {
    const BlockVars& vars = b.sys_.block_vars.at(blk.id);
    b.sys_.AddAssertion(Constraint::Single(CmpOp::kGt, Term::Var(vars.width),
                                           Term::Const(0)),
                        AssertTag::kDomain);
    b.sys_.AddAssertion(Constraint::Single(CmpOp::kGt, Term::Var(vars.height),
                                           Term::Const(0)),
                        AssertTag::kDomain);
    b.sys_.AddAssertion(
        Constraint::Single(CmpOp::kEq,
                           Term::Mul({Term::Var(vars.width),
                                      Term::Var(vars.height)}),
                           Term::Const(blk.area)),
        AssertTag::kDomain);
    // Multiplicative aspect band: amin*w <= h <= amax*w.
    b.sys_.AddAssertion(
        Constraint::Single(CmpOp::kGe, Term::Var(vars.height),
                           Term::Mul({Term::Const(blk.aspect_min),
                                      Term::Var(vars.width)})),
        AssertTag::kDomain);
    b.sys_.AddAssertion(
        Constraint::Single(CmpOp::kLe, Term::Var(vars.height),
                           Term::Mul({Term::Const(blk.aspect_max),
                                      Term::Var(vars.width)})),
        AssertTag::kDomain);
    b.AssertBoundary(blk);
  }
  for (const auto& [ia, ib, pv] : b.sys_.pair_vars) {
    b.AssertZeroOne(pv.first, AssertTag::kDomain);
    b.AssertZeroOne(pv.second, AssertTag::kDomain);
    const Block* bi = nullptr;
    const Block* bj = nullptr;
    for (const Block& blk : instance.blocks) {
      if (blk.id == ia) bi = &blk;
      if (blk.id == ib) bj = &blk;
    }
    b.AssertPairwise(*bi, *bj, pv, bounds.width_sum, bounds.height_sum);
  }
  b.AssertRegionBounds(region_cap);
  return b.Take();
}

void AddAreaBound(ConstraintSystem& system, const Rat& bound) {
  Rat b = bound;
  if (system.sort == CoordSort::kInteger && !IsInteger(b)) {
    b = Rat(FloorRat(b));
  }
  system.AddAssertion(
      Constraint::Single(CmpOp::kLe,
                         Term::Mul({Term::Var(system.region_w_sym),
                                    Term::Var(system.region_h_sym)}),
                         Term::Const(b)),
      AssertTag::kExtra);
}

namespace {

bool TermHasVar(const Term& t) {
  if (t.kind == Term::Kind::kVar) return true;
  for (const Term& a : t.args) {
    if (TermHasVar(a)) return true;
  }
  return false;
}

bool TermNonlinear(const Term& t) {
  if (t.kind == Term::Kind::kMul) {
    int with_vars = 0;
    for (const Term& a : t.args) {
      if (TermHasVar(a)) ++with_vars;
    }
    if (with_vars >= 2) return true;
  }
  for (const Term& a : t.args) {
    if (TermNonlinear(a)) return true;
  }
  return false;
}

void EmitTerm(std::ostringstream& out, const Term& t, CoordSort sort);

void EmitNumeral(std::ostringstream& out, const Rat& v, CoordSort sort) {
  bool negative = v < 0;
  Rat a = negative ? -v : v;
  std::string body;
  if (sort == CoordSort::kInteger) {
    if (!IsInteger(a)) {
      throw Error(Errc::kEncodingBug,
                  "fractional constant in an integer-sorted system");
    }
    body = numerator(a).str();
  } else if (IsInteger(a)) {
    body = numerator(a).str() + ".0";
  } else {
    body = "(/ " + numerator(a).str() + ".0 " + denominator(a).str() + ".0)";
  }
  if (negative) {
    out << "(- " << body << ")";
  } else {
    out << body;
  }
}

void EmitNary(std::ostringstream& out, const char* op,
              const std::vector<Term>& args, CoordSort sort) {
  if (args.size() == 1) {
    EmitTerm(out, args[0], sort);
    return;
  }
  out << "(" << op;
  for (const Term& a : args) {
    out << " ";
    EmitTerm(out, a, sort);
  }
  out << ")";
}

void EmitTerm(std::ostringstream& out, const Term& t, CoordSort sort) {
  switch (t.kind) {
    case Term::Kind::kConst:
      EmitNumeral(out, t.value, sort);
      break;
    case Term::Kind::kVar:
      out << t.symbol;
      break;
    case Term::Kind::kAdd:
      EmitNary(out, "+", t.args, sort);
      break;
    case Term::Kind::kSub:
      EmitNary(out, "-", t.args, sort);
      break;
    case Term::Kind::kMul:
      EmitNary(out, "*", t.args, sort);
      break;
  }
}

const char* OpName(CmpOp op) {
  switch (op) {
    case CmpOp::kLe:
      return "<=";
    case CmpOp::kLt:
      return "<";
    case CmpOp::kGe:
      return ">=";
    case CmpOp::kGt:
      return ">";
    case CmpOp::kEq:
      return "=";
  }
  return "?";
}

void EmitCmp(std::ostringstream& out, const Constraint::Cmp& cmp,
             CoordSort sort) {
  out << "(" << OpName(cmp.op) << " ";
  EmitTerm(out, cmp.lhs, sort);
  out << " ";
  EmitTerm(out, cmp.rhs, sort);
  out << ")";
}

}  // namespace

std::string ChooseLogic(const ConstraintSystem& system, Objective objective) {
  bool nonlinear = objective == Objective::kMinimizeProduct;
  for (const Constraint& c : system.assertions) {
    for (const Constraint::Cmp& cmp : c.disjuncts) {
      if (TermNonlinear(cmp.lhs) || TermNonlinear(cmp.rhs)) nonlinear = true;
    }
  }
  if (system.sort == CoordSort::kInteger) {
    return nonlinear ? "QF_NIA" : "QF_LIA";
  }
  return nonlinear ? "QF_NRA" : "QF_LRA";
}

std::string EmitSmtlib(const ConstraintSystem& system,
                       const std::string& logic_hint, Objective objective) {
  std::ostringstream out;
  out << "(set-logic " << logic_hint << ")\n";

  std::vector<std::pair<std::string, SmtSort>> decls = system.declarations;
  std::sort(decls.begin(), decls.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [symbol, sort] : decls) {
    const char* name = sort == SmtSort::kInt    ? "Int"
                       : sort == SmtSort::kReal ? "Real"
                                                : "Bool";
    out << "(declare-const " << symbol << " " << name << ")\n";
  }

  for (const Constraint& c : system.assertions) {
    out << "(assert ";
    if (c.disjuncts.size() == 1) {
      EmitCmp(out, c.disjuncts[0], system.sort);
    } else {
      out << "(or";
      for (const Constraint::Cmp& cmp : c.disjuncts) {
        out << " ";
        EmitCmp(out, cmp, system.sort);
      }
      out << ")";
    }
    out << ")\n";
  }

  if (objective == Objective::kMinimizeProduct) {
    out << "(minimize (* " << system.region_w_sym << " "
        << system.region_h_sym << "))\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

Rat EvalTerm(const Term& term, const std::map<std::string, Rat>& env) {
  switch (term.kind) {
    case Term::Kind::kConst:
      return term.value;
    case Term::Kind::kVar: {
      auto it = env.find(term.symbol);
      if (it == env.end()) {
        throw Error(Errc::kIncompleteModel, term.symbol);
      }
      return it->second;
    }
    case Term::Kind::kAdd: {
      Rat sum = 0;
      for (const Term& a : term.args) sum += EvalTerm(a, env);
      return sum;
    }
    case Term::Kind::kSub: {
      Rat acc = EvalTerm(term.args[0], env);
      for (size_t i = 1; i < term.args.size(); ++i) {
        acc -= EvalTerm(term.args[i], env);
      }
      return acc;
    }
    case Term::Kind::kMul: {
      Rat prod = 1;
      for (const Term& a : term.args) prod *= EvalTerm(a, env);
      return prod;
    }
  }
  throw Error(Errc::kEncodingBug, "unreachable term kind");
}

bool EvalConstraint(const Constraint& constraint,
                    const std::map<std::string, Rat>& env) {
  for (const Constraint::Cmp& cmp : constraint.disjuncts) {
    Rat l = EvalTerm(cmp.lhs, env);
    Rat r = EvalTerm(cmp.rhs, env);
    bool ok = false;
    switch (cmp.op) {
      case CmpOp::kLe:
        ok = l <= r;
        break;
      case CmpOp::kLt:
        ok = l < r;
        break;
      case CmpOp::kGe:
        ok = l >= r;
        break;
      case CmpOp::kGt:
        ok = l > r;
        break;
      case CmpOp::kEq:
        ok = l == r;
        break;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace floorplan
