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

#include <random>
#include <set>

#include "dqsynth/ackermann.hpp"
#include "dqsynth/bitblast.hpp"
#include "dqsynth/callsig.hpp"
#include "dqsynth/dqf.hpp"
#include "dqsynth/eval.hpp"
#include "dqsynth/lift.hpp"
#include "dqsynth/parser.hpp"
#include "dqsynth/printer.hpp"
#include "dqsynth/solver.hpp"

using namespace dqsynth;

namespace {

struct PipelineRun {
  SynthProblem original;
  DqbfInstance instance;
  AckermannTrace trace;
  SolveOutcome outcome;
};

PipelineRun run_pipeline(const std::string &text) {
  PipelineRun run;
  run.original = parse_problem(text);
  SynthProblem normalized = normalize_arguments(run.original);
  CallSignIndex index = analyze(normalized);
  auto [single, trace] = to_single_callsign(normalized, index);
  run.trace = std::move(trace);
  run.instance = blast(to_dqf(single));
  run.outcome = solve_auto(run.instance, SolverOptions{});
  return run;
}

std::vector<FunctionDefinition> lift_from(const PipelineRun &run) {
  REQUIRE(run.outcome.verdict == Verdict::True);
  return lift_solution(run.original, run.instance, run.outcome.solution,
                       run.trace);
}

void collect_vars(const TermPtr &t, std::set<std::string> &names) {
  if (t->kind == Term::Kind::Var) {
    names.insert(t->name);
    return;
  }
  for (const TermPtr &a : t->args)
    collect_vars(a, names);
}

} // namespace

TEST_CASE("identity function lifts to the bare parameter") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var x (_ BitVec 1))
(constraint (= (f x) x))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  CHECK(defs[0].name == "f");
  CHECK(structurally_equal(defs[0].body,
                           mk_var("x", Sort::bitvec(1))));
  CHECK(emit_definitions(defs) ==
        "(define-fun f ((x (_ BitVec 1))) (_ BitVec 1) x)\n");
  auto check = verify_lifted(run.original, defs);
  CHECK(check.valid);
}

TEST_CASE("width-3 identity collapses through extract and concat fusion") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 3))) (_ BitVec 3))
(declare-var x (_ BitVec 3))
(constraint (= (f x) x))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  CHECK(structurally_equal(defs[0].body, mk_var("x", Sort::bitvec(3))));
  CHECK(verify_lifted(run.original, defs).valid);
}

TEST_CASE("xor specification lifts to a correct definition") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1)) (y (_ BitVec 1))) (_ BitVec 1))
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (= (f a b) (bvxor a b)))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  for (uint64_t x = 0; x < 2; ++x) {
    for (uint64_t y = 0; y < 2; ++y) {
      BvValue got = eval_definition(
          defs[0], {BvValue::from_uint(1, x), BvValue::from_uint(1, y)});
      CHECK(got.to_uint() == (x ^ y));
    }
  }
  CHECK(verify_lifted(run.original, defs).valid);
}

TEST_CASE("max of two width-2 words lifts and matches on all inputs") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 2)) (y (_ BitVec 2))) (_ BitVec 2))
(declare-var a (_ BitVec 2))
(declare-var b (_ BitVec 2))
(constraint (bvule a (f a b)))
(constraint (bvule b (f a b)))
(constraint (or (= (f a b) a) (= (f a b) b)))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  for (uint64_t x = 0; x < 4; ++x) {
    for (uint64_t y = 0; y < 4; ++y) {
      BvValue got = eval_definition(
          defs[0], {BvValue::from_uint(2, x), BvValue::from_uint(2, y)});
      CHECK(got.to_uint() == std::max(x, y));
    }
  }
  CHECK(verify_lifted(run.original, defs).valid);

  std::set<std::string> used;
  collect_vars(defs[0].body, used);
  for (const std::string &name : used) {
    bool is_param = false;
    for (const Variable &p : defs[0].params)
      is_param = is_param || p.name == name;
    CHECK_MESSAGE(is_param, "body mentions non-parameter ", name);
  }
}

TEST_CASE("boolean parameter is read directly") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((p Bool)) Bool)
(declare-var q Bool)
(constraint (= (f q) (not q)))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  CHECK(eval_definition(defs[0], {BvValue::from_uint(1, 0)}).bit(0) == true);
  CHECK(eval_definition(defs[0], {BvValue::from_uint(1, 1)}).bit(0) == false);
  CHECK(verify_lifted(run.original, defs).valid);
}

TEST_CASE("renamed multiple-signature functions lift back to the original "
          "name") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var u (_ BitVec 1))
(declare-var v (_ BitVec 1))
(constraint (and (= (f u) u) (= (f v) v)))
(check-synth)
)");
  REQUIRE_FALSE(run.trace.empty());
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  CHECK(defs[0].name == "f");
  REQUIRE(defs[0].params.size() == 1);
  CHECK(defs[0].params[0].name == "x");
  for (uint64_t x = 0; x < 2; ++x) {
    CHECK(eval_definition(defs[0], {BvValue::from_uint(1, x)}).to_uint() == x);
  }
  CHECK(verify_lifted(run.original, defs).valid);
}

TEST_CASE("function without any invocation lifts to a constant body") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 2))) (_ BitVec 2))
(declare-var a (_ BitVec 2))
(constraint (= a a))
(check-synth)
)");
  auto defs = lift_from(run);
  REQUIRE(defs.size() == 1);
  BvValue at0 = eval_definition(defs[0], {BvValue::from_uint(2, 0)});
  for (uint64_t x = 1; x < 4; ++x) {
    CHECK(eval_definition(defs[0], {BvValue::from_uint(2, x)}).to_uint() ==
          at0.to_uint());
  }
  CHECK(verify_lifted(run.original, defs).valid);
}

TEST_CASE("verification rejects a wrong definition with a counterexample") {
  SynthProblem problem = parse_problem(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var x (_ BitVec 1))
(constraint (= (f x) x))
(check-synth)
)");
  FunctionDefinition wrong;
  wrong.name = "f";
  wrong.params = problem.functions[0].params;
  wrong.return_sort = problem.functions[0].return_sort;
  wrong.body = mk_const(BvValue::from_uint(1, 0));

  auto check = verify_lifted(problem, {wrong});
  REQUIRE_FALSE(check.valid);
  REQUIRE(check.counterexample.count("x") == 1);
  CHECK(check.counterexample.at("x").bit(0) == true);
}

TEST_CASE("verification demands a definition for every function") {
  SynthProblem problem = parse_problem(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var x (_ BitVec 1))
(constraint (= (f x) x))
(check-synth)
)");
  CHECK_THROWS_AS(verify_lifted(problem, {}), std::logic_error);

  FunctionDefinition def;
  def.name = "f";
  def.params = problem.functions[0].params;
  def.return_sort = problem.functions[0].return_sort;
  def.body = mk_var("x", Sort::bitvec(1));
  CHECK_THROWS_AS(verify_lifted(problem, {def, def}), std::invalid_argument);
}

TEST_CASE("hand-built tables and decision lists lift to equivalent bodies") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun g ((x (_ BitVec 1)) (y (_ BitVec 1)) (z (_ BitVec 1))) (_ BitVec 1))
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(declare-var c (_ BitVec 1))
(constraint (= (g a b c) (g a b c)))
(check-synth)
)");
  REQUIRE(run.instance.existentials.size() == 1);
  const ExistentialGroup &group = run.instance.existentials[0];
  REQUIRE(group.bits.size() == 1);
  REQUIRE(group.deps.size() == 3);

  // The dependency order of the group decides which eval input feeds which
  // table position; recover the parameter index per dependency bit.
  std::vector<size_t> param_of_dep;
  for (int dep : group.deps) {
    const auto &[word, index] = run.instance.bitmap.reverse.at(dep);
    REQUIRE(index == 0);
    if (word == "a")
      param_of_dep.push_back(0);
    else if (word == "b")
      param_of_dep.push_back(1);
    else if (word == "c")
      param_of_dep.push_back(2);
    else
      FAIL("unexpected dependency word ", word);
  }

  std::mt19937_64 rng(20260826);
  for (int seed = 0; seed < 30; ++seed) {
    HenkinFunction hf;
    hf.deps = group.deps;
    if (seed % 2 == 0) {
      for (int i = 0; i < 8; ++i)
        hf.table.push_back(rng() & 1);
    } else {
      hf.default_value = rng() & 1;
      size_t n_cases = rng() % 5;
      for (size_t c = 0; c < n_cases; ++c) {
        HenkinFunction::Case cs;
        for (size_t k = 0; k < 3; ++k)
          cs.pattern.push_back(rng() & 1);
        cs.value = rng() & 1;
        hf.cases.push_back(cs);
      }
    }

    HenkinSolution solution;
    solution.bits.emplace(group.bits[0], hf);
    auto defs = lift_solution(run.original, run.instance, solution, run.trace);
    REQUIRE(defs.size() == 1);
    CHECK(node_count(defs[0].body) <= 200);

    for (uint64_t input = 0; input < 8; ++input) {
      std::vector<BvValue> args;
      for (size_t p = 0; p < 3; ++p)
        args.push_back(BvValue::from_uint(1, (input >> p) & 1));
      std::vector<bool> dep_values;
      for (size_t k = 0; k < 3; ++k)
        dep_values.push_back((input >> param_of_dep[k]) & 1);
      bool expected = hf.eval(dep_values);
      BvValue got = eval_definition(defs[0], args);
      CHECK_MESSAGE(got.bit(0) == expected, "seed ", seed, " input ", input);
    }
  }
}

TEST_CASE("missing per-bit function is reported") {
  PipelineRun run = run_pipeline(R"((set-logic BV)
(synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var x (_ BitVec 1))
(constraint (= (f x) x))
(check-synth)
)");
  HenkinSolution empty;
  CHECK_THROWS_AS(
      lift_solution(run.original, run.instance, empty, run.trace),
      std::logic_error);
}

TEST_CASE("term simplifier applies its structural rewrites") {
  TermPtr x = mk_var("x", Sort::bitvec(3));
  TermPtr y = mk_var("y", Sort::bitvec(1));
  TermPtr p = mk_var("p", Sort::boolean());
  TermPtr one1 = mk_const(BvValue::from_uint(1, 1));
  TermPtr zero1 = mk_const(BvValue::from_uint(1, 0));

  SUBCASE("full-width extract vanishes") {
    CHECK(structurally_equal(simplify_term(mk_extract(2, 0, x)), x));
  }
  SUBCASE("nested extracts compose") {
    TermPtr t = mk_extract(1, 1, mk_extract(2, 1, x));
    CHECK(structurally_equal(simplify_term(t), mk_extract(2, 2, x)));
  }
  SUBCASE("adjacent extracts of one word fuse through concat") {
    TermPtr t = mk_app(Op::Concat, {mk_extract(2, 1, x), mk_extract(0, 0, x)});
    CHECK(structurally_equal(simplify_term(t), x));
  }
  SUBCASE("bit test of a width-1 word is the word") {
    TermPtr t = mk_app(Op::Ite, {mk_eq(y, one1), one1, zero1});
    CHECK(structurally_equal(simplify_term(t), y));
  }
  SUBCASE("reflexive equality folds to true") {
    CHECK(structurally_equal(simplify_term(mk_eq(x, x)), mk_true()));
  }
  SUBCASE("constant arithmetic folds") {
    TermPtr t = mk_app(Op::BvAdd, {mk_const(BvValue::from_uint(2, 1)),
                                   mk_const(BvValue::from_uint(2, 1))});
    CHECK(structurally_equal(simplify_term(t),
                             mk_const(BvValue::from_uint(2, 2))));
  }
  SUBCASE("double negation cancels") {
    CHECK(structurally_equal(simplify_term(mk_not(mk_not(p))), p));
  }
  SUBCASE("boolean units drop out of conjunction and disjunction") {
    CHECK(structurally_equal(simplify_term(mk_and(mk_true(), p)), p));
    CHECK(structurally_equal(
        simplify_term(mk_app(Op::Or, {p, mk_false()})), p));
    CHECK(structurally_equal(
        simplify_term(mk_app(Op::And, {p, mk_false()})), mk_false()));
  }
  SUBCASE("if-then-else with equal branches collapses") {
    TermPtr t = mk_app(Op::Ite, {p, y, y});
    CHECK(structurally_equal(simplify_term(t), y));
  }
  SUBCASE("implication from false is true") {
    TermPtr t = mk_app(Op::Implies, {mk_false(), p});
    CHECK(structurally_equal(simplify_term(t), mk_true()));
  }
  SUBCASE("xor of a term with itself is false") {
    TermPtr t = mk_app(Op::Xor, {p, p});
    CHECK(structurally_equal(simplify_term(t), mk_false()));
  }
}
