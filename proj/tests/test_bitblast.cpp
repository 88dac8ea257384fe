// Copyright 2026 The dqsynth Authors. All rights reserved.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dqsynth/bitblast.hpp"
#include "dqsynth/eval.hpp"
#include "dqsynth/sat.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

#include <random>

using namespace dqsynth;
using namespace dqsynth::testing;

namespace {

Sort bv(uint32_t w) { return Sort::bitvec(w); }

DqfFormula and_gate_formula() {
  // forall x1 x2 exists^{x1,x2} y . y = x1 & x2, all of width 1
  DqfFormula f;
  f.universals = {{"x1", bv(1)}, {"x2", bv(1)}};
  DqfExistential e;
  e.var = {"y", bv(1)};
  e.deps = {"x1", "x2"};
  f.existentials = {e};
  f.body = mk_eq(mk_var("y", bv(1)),
                 mk_app(Op::BvAnd, {mk_var("x1", bv(1)), mk_var("x2", bv(1))}));
  return f;
}

} // namespace

TEST_CASE("width-1 conjunction: numbering, grouping, and truth table") {
  DqfFormula f = and_gate_formula();
  DqbfInstance inst = blast(f);

  // Deterministic numbering: universals first, then the existential word.
  CHECK(inst.universal_bits == std::vector<int>{1, 2});
  REQUIRE(inst.existentials.size() == 1);
  CHECK(inst.existentials[0].source == "y");
  CHECK(inst.existentials[0].bits == std::vector<int>{3});
  CHECK(inst.existentials[0].deps == std::vector<int>{1, 2});
  for (int aux : inst.aux_bits)
    CHECK(aux > 3);
  CHECK(inst.num_vars == 3 + static_cast<int>(inst.aux_bits.size()));

  // The CNF must agree with the word-level body on all 2^3 assignments of
  // x1, x2, y, with the auxiliary (Tseitin) variables left free.
  std::string why;
  CHECK_MESSAGE(blast_matches_eval(f, &why), why);
}

TEST_CASE("auxiliary gate variables are functions of their inputs") {
  // With x1, x2 and y all fixed, the auxiliary variables of the
  // bi-implicational encoding have exactly one consistent completion, so
  // the CNF plus a wrong unit for any auxiliary must be unsatisfiable.
  DqbfInstance inst = blast(and_gate_formula());
  for (uint64_t a = 0; a < 8; ++a) {
    std::vector<std::vector<int>> clauses = inst.clauses;
    for (int b = 1; b <= 3; ++b)
      clauses.push_back({((a >> (b - 1)) & 1) ? b : -b});
    SatOutcome base = sat_solve(inst.num_vars, clauses);
    if (base.result != SatResult::Sat)
      continue;
    for (int aux : inst.aux_bits) {
      auto flipped = clauses;
      flipped.push_back({base.model[static_cast<size_t>(aux)] ? -aux : aux});
      CHECK(sat_solve(inst.num_vars, flipped).result == SatResult::Unsat);
    }
  }
}

TEST_CASE("constant tautology collapses to a single unit clause") {
  // #b01 + #b01 = #b10 folds away entirely: no universals, no
  // existentials, one pinned auxiliary.
  DqfFormula f;
  f.body = mk_eq(mk_app(Op::BvAdd, {mk_const(BvValue::from_uint(2, 1)),
                                    mk_const(BvValue::from_uint(2, 1))}),
                 mk_const(BvValue::from_uint(2, 2)));
  DqbfInstance inst = blast(f);
  CHECK(inst.universal_bits.empty());
  CHECK(inst.existentials.empty());
  CHECK(inst.num_vars == 1);
  CHECK(inst.aux_bits == std::vector<int>{1});
  REQUIRE(inst.clauses.size() == 1);
  CHECK(inst.clauses[0] == std::vector<int>{1});
  CHECK(sat_solve(inst.num_vars, inst.clauses).result == SatResult::Sat);
}

TEST_CASE("constant contradiction produces an unsatisfiable CNF") {
  DqfFormula f;
  f.body = mk_eq(mk_const(BvValue::from_uint(2, 1)),
                 mk_const(BvValue::from_uint(2, 2)));
  DqbfInstance inst = blast(f);
  CHECK(sat_solve(inst.num_vars, inst.clauses).result == SatResult::Unsat);
}

TEST_CASE("bit counting: m words of width w give m groups of w bits") {
  DqfFormula f;
  f.universals = {{"u", bv(3)}};
  for (int i = 0; i < 4; ++i) {
    DqfExistential e;
    e.var = {"y" + std::to_string(i), bv(5)};
    e.deps = {"u"};
    f.existentials.push_back(e);
  }
  f.body = mk_true();
  DqbfInstance inst = blast(f);
  CHECK(inst.universal_bits.size() == 3);
  REQUIRE(inst.existentials.size() == 4);
  int next = 4;
  for (const ExistentialGroup &g : inst.existentials) {
    CHECK(g.bits.size() == 5);
    CHECK(g.deps == std::vector<int>{1, 2, 3});
    for (int b : g.bits)
      CHECK(b == next++);
  }
  ClauseStats stats = clause_stats(inst);
  CHECK(stats.vars == 3 + 4 * 5 + stats.aux);
  CHECK(stats.clauses == static_cast<int>(inst.clauses.size()));
}

TEST_CASE("booleans occupy a single bit") {
  DqfFormula f;
  f.universals = {{"p", Sort::boolean()}, {"u", bv(2)}};
  DqfExistential e;
  e.var = {"q", Sort::boolean()};
  e.deps = {"p"};
  f.existentials = {e};
  f.body = mk_app(Op::Implies, {mk_var("p", Sort::boolean()),
                                mk_var("q", Sort::boolean())});
  DqbfInstance inst = blast(f);
  CHECK(inst.universal_bits == std::vector<int>{1, 2, 3});
  CHECK(inst.bitmap.find("p")->bits == std::vector<int>{1});
  CHECK(inst.bitmap.find("u")->bits == std::vector<int>{2, 3});
  CHECK(inst.existentials[0].bits == std::vector<int>{4});
  CHECK(inst.existentials[0].deps == std::vector<int>{1});
  std::string why;
  CHECK_MESSAGE(blast_matches_eval(f, &why), why);
}

TEST_CASE("bitmap maps ids back to word positions") {
  DqfFormula f = and_gate_formula();
  DqbfInstance inst = blast(f);
  REQUIRE(inst.bitmap.reverse.count(3) == 1);
  CHECK(inst.bitmap.reverse.at(3).first == "y");
  CHECK(inst.bitmap.reverse.at(3).second == 0);
  CHECK(inst.bitmap.find("nonexistent") == nullptr);
}

TEST_CASE("every bitvector operator matches word-level evaluation") {
  // Exhaustive over all operand values, including division by zero.
  std::vector<Op> ops{Op::BvNot,  Op::BvNeg,  Op::BvAnd,  Op::BvOr,
                      Op::BvXor,  Op::BvAdd,  Op::BvSub,  Op::BvMul,
                      Op::BvUdiv, Op::BvUrem, Op::BvShl,  Op::BvLshr,
                      Op::BvAshr, Op::BvUlt,  Op::BvUle,  Op::BvUgt,
                      Op::BvUge,  Op::BvSlt,  Op::BvSle,  Op::BvSgt,
                      Op::BvSge};
  for (Op op : ops) {
    for (uint32_t w = 1; w <= 3; ++w) {
      std::string why;
      CAPTURE(op_name(op));
      CAPTURE(w);
      CHECK_MESSAGE(op_blast_check(op, w, &why), op_name(op), " width ", w,
                    ": ", why);
    }
  }
}

TEST_CASE("addition, subtraction and comparisons also match at width 4") {
  for (Op op : {Op::BvAdd, Op::BvSub, Op::BvUlt, Op::BvSle}) {
    std::string why;
    CAPTURE(op_name(op));
    CHECK_MESSAGE(op_blast_check(op, 4, &why), op_name(op), " width 4: ", why);
  }
}

TEST_CASE("concat and extract match word-level evaluation") {
  {
    DqfFormula f;
    f.universals = {{"a", bv(2)}, {"b", bv(3)}, {"r", bv(5)}};
    f.body = mk_eq(mk_app(Op::Concat, {mk_var("a", bv(2)), mk_var("b", bv(3))}),
                   mk_var("r", bv(5)));
    std::string why;
    CHECK_MESSAGE(blast_matches_eval(f, &why), "concat: ", why);
  }
  {
    DqfFormula f;
    f.universals = {{"a", bv(4)}, {"r", bv(2)}};
    f.body = mk_eq(mk_extract(2, 1, mk_var("a", bv(4))), mk_var("r", bv(2)));
    std::string why;
    CHECK_MESSAGE(blast_matches_eval(f, &why), "extract: ", why);
  }
}

TEST_CASE("ite and the boolean connectives match word-level evaluation") {
  DqfFormula f;
  f.universals = {{"p", Sort::boolean()}, {"a", bv(2)}, {"b", bv(2)},
                  {"r", bv(2)}};
  f.body = mk_eq(mk_app(Op::Ite, {mk_var("p", Sort::boolean()),
                                  mk_var("a", bv(2)), mk_var("b", bv(2))}),
                 mk_var("r", bv(2)));
  std::string why;
  CHECK_MESSAGE(blast_matches_eval(f, &why), "ite: ", why);

  DqfFormula g;
  g.universals = {{"p", Sort::boolean()}, {"q", Sort::boolean()},
                  {"s", Sort::boolean()}};
  TermPtr p = mk_var("p", Sort::boolean());
  TermPtr q = mk_var("q", Sort::boolean());
  TermPtr s = mk_var("s", Sort::boolean());
  g.body = mk_eq(mk_app(Op::Xor, {mk_app(Op::And, {p, q}),
                                  mk_app(Op::Or, {mk_app(Op::Not, {p}), s})}),
                 mk_app(Op::Implies, {q, s}));
  CHECK_MESSAGE(blast_matches_eval(g, &why), "connectives: ", why);
}

TEST_CASE("random formulas with restricted dependencies stay equivalent") {
  int checked = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    std::mt19937_64 rng(seed);
    DqfGenOptions opts;
    opts.max_universals = 3;
    opts.max_existentials = 2;
    opts.max_width = 3;
    opts.term_depth = 3;
    DqfFormula f = random_dqf(rng, opts);
    uint32_t bits = 0;
    for (const Variable &v : f.universals)
      bits += v.sort.bit_count();
    for (const DqfExistential &e : f.existentials)
      bits += e.var.sort.bit_count();
    if (bits > 12)
      continue;
    ++checked;
    std::string why;
    CAPTURE(seed);
    CHECK_MESSAGE(blast_matches_eval(f, &why), why);
  }
  CHECK(checked >= 60);
}

TEST_CASE("blasting is deterministic") {
  std::mt19937_64 rng(7);
  DqfGenOptions opts;
  DqfFormula f = random_dqf(rng, opts);
  DqbfInstance a = blast(f);
  DqbfInstance b = blast(f);
  CHECK(a.num_vars == b.num_vars);
  CHECK(a.universal_bits == b.universal_bits);
  CHECK(a.aux_bits == b.aux_bits);
  CHECK(a.clauses == b.clauses);
}

TEST_CASE("shared subterms are encoded once") {
  // (a + b) appears twice; the DAG cache must reuse its gates.
  DqfFormula twice;
  twice.universals = {{"a", bv(3)}, {"b", bv(3)}};
  TermPtr sum = mk_app(Op::BvAdd, {mk_var("a", bv(3)), mk_var("b", bv(3))});
  twice.body = mk_app(Op::And, {mk_eq(sum, mk_const(BvValue::from_uint(3, 1))),
                                mk_app(Op::BvUle, {sum, mk_var("b", bv(3))})});

  DqfFormula rebuilt;
  rebuilt.universals = twice.universals;
  TermPtr sum2 = mk_app(Op::BvAdd, {mk_var("a", bv(3)), mk_var("b", bv(3))});
  rebuilt.body =
      mk_app(Op::And, {mk_eq(sum, mk_const(BvValue::from_uint(3, 1))),
                       mk_app(Op::BvUle, {sum2, mk_var("b", bv(3))})});

  CHECK(blast(twice).num_vars < blast(rebuilt).num_vars);
}

TEST_CASE("residual synthesis applications are rejected") {
  DqfFormula f;
  f.universals = {{"a", bv(1)}};
  f.body = mk_eq(mk_synth_app("g", bv(1), {mk_var("a", bv(1))}),
                 mk_var("a", bv(1)));
  CHECK_THROWS_AS((void)blast(f), std::logic_error);
}
