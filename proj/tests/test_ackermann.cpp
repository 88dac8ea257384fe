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

#include "dqsynth/ackermann.hpp"
#include "dqsynth/parser.hpp"
#include "dqsynth/printer.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dqsynth;

namespace {

const char *kFourSites = R"((synth-fun f ((x (_ BitVec 1)) (y (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(declare-var c (_ BitVec 1))
(constraint (and (and (f a b) (f b c)) (and (f b a) (f a b))))
(check-synth)
)";

size_t count_sites(const SynthProblem &p, const std::string &fn) {
  size_t n = 0;
  std::vector<const Term *> stack;
  for (const auto &c : p.constraints)
    stack.push_back(c.get());
  while (!stack.empty()) {
    const Term *t = stack.back();
    stack.pop_back();
    if (t->kind == Term::Kind::SynthApp && t->name == fn)
      n++;
    for (const auto &a : t->args)
      stack.push_back(a.get());
  }
  return n;
}

} // namespace

TEST_CASE("three signatures expand to renamed copies plus a canonical") {
  SynthProblem p = parse_problem(kFourSites);
  auto [out, trace] = to_single_callsign(p, analyze(p));

  // f!0..f!2 carry the rewritten sites, f!3 is canonical
  REQUIRE(out.functions.size() == 4);
  CHECK(out.functions[0].name == "f!0");
  CHECK(out.functions[1].name == "f!1");
  CHECK(out.functions[2].name == "f!2");
  CHECK(out.functions[3].name == "f!3");

  // fresh universal block matches the arity
  REQUIRE(out.inputs.size() == 5);
  CHECK(out.inputs[3].name == "z!f!0");
  CHECK(out.inputs[4].name == "z!f!1");

  // site rewriting: <a,b> twice to f!0, <b,c> to f!1, <b,a> to f!2
  CHECK(count_sites(out, "f!0") == 2 + 1); // +1 from its agreement constraint
  CHECK(count_sites(out, "f!1") == 1 + 1);
  CHECK(count_sites(out, "f!2") == 1 + 1);
  CHECK(count_sites(out, "f!3") == 3); // one per agreement constraint
  CHECK(count_sites(out, "f") == 0);

  // one original constraint + three agreement implications
  REQUIRE(out.constraints.size() == 4);
  REQUIRE(trace.functions.size() == 1);
  const FunctionTrace &ft = trace.functions[0];
  REQUIRE(ft.agreements.size() == 3);

  Sort bv1 = Sort::bitvec(1);
  auto v = [&](const char *n) { return mk_var(n, bv1); };
  TermPtr guard0 = mk_and(mk_eq(v("a"), v("z!f!0")), mk_eq(v("b"), v("z!f!1")));
  TermPtr cons0 =
      mk_eq(mk_synth_app("f!0", Sort::boolean(), {v("a"), v("b")}),
            mk_synth_app("f!3", Sort::boolean(), {v("z!f!0"), v("z!f!1")}));
  CHECK(structurally_equal(ft.agreements[0].guard, guard0));
  CHECK(structurally_equal(ft.agreements[0].consequence, cons0));
  CHECK(structurally_equal(out.constraints[1],
                           mk_app(Op::Implies, {guard0, cons0})));

  TermPtr guard1 = mk_and(mk_eq(v("b"), v("z!f!0")), mk_eq(v("c"), v("z!f!1")));
  CHECK(structurally_equal(ft.agreements[1].guard, guard1));
  TermPtr guard2 = mk_and(mk_eq(v("b"), v("z!f!0")), mk_eq(v("a"), v("z!f!1")));
  CHECK(structurally_equal(ft.agreements[2].guard, guard2));

  // the output is single-callsign and the trace names the canonical symbol
  CHECK(analyze(out).single_callsign);
  CHECK(trace.canonical_of.at("f") == "f!3");
}

TEST_CASE("single-callsign input is returned unchanged with an empty trace") {
  std::string doc = R"((synth-fun f ((x (_ BitVec 2))) (_ BitVec 2))
(declare-var a (_ BitVec 2))
(constraint (= (f a) a))
)";
  SynthProblem p = parse_problem(doc);
  auto [out, trace] = to_single_callsign(p, analyze(p));
  CHECK(equal_modulo_grammars(p, out));
  CHECK(trace.empty());
  CHECK(format_trace(trace).find("no transformation") != std::string::npos);
}

TEST_CASE("two-signature width-1 conjunction stays equi-realizable") {
  // f(a) AND f(b): realizable (constant-true table)
  std::string doc = R"((synth-fun f ((x (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (and (f a) (f b)))
)";
  SynthProblem p = parse_problem(doc);
  auto [out, trace] = to_single_callsign(p, analyze(p));
  CHECK(trace.functions.size() == 1);
  CHECK(testing::brute_force_realizable(p) == true);
  CHECK(testing::brute_force_realizable(out) == true);

  // f(a) AND (not f(b)): no single table satisfies both for all a, b
  std::string doc2 = R"((synth-fun f ((x (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (and (f a) (not (f b))))
)";
  SynthProblem p2 = parse_problem(doc2);
  auto [out2, trace2] = to_single_callsign(p2, analyze(p2));
  CHECK_FALSE(trace2.empty());
  CHECK(testing::brute_force_realizable(p2) == false);
  CHECK(testing::brute_force_realizable(out2) == false);
}

TEST_CASE("fresh variable budget is the arity sum over transformed functions") {
  CHECK(fresh_variable_budget(analyze(parse_problem(kFourSites))) == 2);

  std::string single = R"((synth-fun f ((x (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(constraint (f a))
)";
  CHECK(fresh_variable_budget(analyze(parse_problem(single))) == 0);

  // arities 3 and 1, both with two signatures
  std::string two = R"((synth-fun f ((x (_ BitVec 1)) (y (_ BitVec 1)) (z (_ BitVec 1))) Bool)
(synth-fun g ((x (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(declare-var c (_ BitVec 1))
(constraint (and (f a b c) (f b c a)))
(constraint (and (g a) (g b)))
)";
  SynthProblem p = parse_problem(two);
  CallSignIndex index = analyze(p);
  CHECK(fresh_variable_budget(index) == 4);

  // the reported budget is exactly what the transformation adds
  auto [out, trace] = to_single_callsign(p, index);
  CHECK(out.inputs.size() == p.inputs.size() + 4);
}

TEST_CASE("output size stays within a fixed linear factor") {
  std::mt19937_64 rng(77);
  testing::ProblemGenOptions opts;
  opts.compound_args = true;
  opts.max_constraints = 4;
  for (int i = 0; i < 100; ++i) {
    SynthProblem p = normalize_arguments(testing::random_problem(rng, opts));
    auto [out, trace] = to_single_callsign(p, analyze(p));
    CHECK(analyze(out).single_callsign);
    CHECK(problem_node_count(out) <= 10 * problem_node_count(p));
  }
}

TEST_CASE("transformation preserves realizability on random width-1 problems") {
  std::mt19937_64 rng(31337);
  testing::ProblemGenOptions opts;
  opts.max_width = 1;
  opts.max_inputs = 2;
  opts.max_functions = 1;
  opts.max_constraints = 2;
  opts.compound_args = true;
  int checked = 0, multi = 0;
  for (int i = 0; i < 400 && checked < 60; ++i) {
    SynthProblem p = normalize_arguments(testing::random_problem(rng, opts));
    CallSignIndex index = analyze(p);
    auto [out, trace] = to_single_callsign(p, index);
    if (testing::brute_force_cost(p) > (uint64_t{1} << 18) ||
        testing::brute_force_cost(out) > (uint64_t{1} << 22))
      continue;
    checked++;
    multi += trace.empty() ? 0 : 1;
    CHECK(testing::brute_force_realizable(p) ==
          testing::brute_force_realizable(out));
  }
  CHECK(checked >= 60);
  CHECK(multi >= 10); // the sample must actually exercise the transformation
}

TEST_CASE("canonical solution restricted to original tuples satisfies the "
          "original problem") {
  // realizable two-signature instance: f(a) = a forced on both sites
  std::string doc = R"((synth-fun f ((x (_ BitVec 1))) (_ BitVec 1))
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (and (= (f a) a) (= (f b) b)))
)";
  SynthProblem p = parse_problem(doc);
  auto [out, trace] = to_single_callsign(p, analyze(p));
  FuncInterps witness;
  REQUIRE(testing::brute_force_realizable(out, &witness));
  // interpret the original f by the canonical table and re-check
  FuncInterps original;
  original["f"] = witness.at(trace.canonical_of.at("f"));
  for (uint64_t a = 0; a < 2; ++a)
    for (uint64_t b = 0; b < 2; ++b) {
      Env env{{"a", BvValue::from_uint(1, a)}, {"b", BvValue::from_uint(1, b)}};
      for (const auto &c : p.constraints)
        CHECK(eval_term(c, env, original).bit(0));
    }
}

TEST_CASE("trace dump names the copies and the agreements") {
  SynthProblem p = parse_problem(kFourSites);
  auto [out, trace] = to_single_callsign(p, analyze(p));
  std::string dump = format_trace(trace);
  CHECK(dump.find("f -> 3 renamed copies, canonical f!3") !=
        std::string::npos);
  CHECK(dump.find("z!f!0") != std::string::npos);
  CHECK(dump.find("agree: (=> (and (= a z!f!0) (= b z!f!1)) (= (f!0 a b) "
                  "(f!3 z!f!0 z!f!1)))") != std::string::npos);
}
