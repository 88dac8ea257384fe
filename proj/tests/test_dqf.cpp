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
#include "dqsynth/dqf.hpp"
#include "dqsynth/eval.hpp"
#include "dqsynth/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dqsynth;

namespace {

bool body_mentions_synth_apps(const TermPtr &t) {
  if (t->kind == Term::Kind::SynthApp)
    return true;
  for (const auto &a : t->args)
    if (body_mentions_synth_apps(a))
      return true;
  return false;
}

// Semantic check: a candidate table vector satisfies the DQF formula iff
// for every universal assignment, substituting y_i by the table value at
// the signature's arguments makes the body true.
bool tables_satisfy_dqf(const DqfFormula &dqf, const FuncInterps &interps) {
  uint32_t bits = 0;
  for (const auto &u : dqf.universals)
    bits += u.sort.bit_count();
  REQUIRE(bits <= 16);
  for (uint64_t a = 0; a < (uint64_t{1} << bits); ++a) {
    Env env;
    uint32_t off = 0;
    for (const auto &u : dqf.universals) {
      uint32_t w = u.sort.bit_count();
      BvValue v(w);
      for (uint32_t b = 0; b < w; ++b)
        v.set_bit(b, (a >> (off + b)) & 1);
      env[u.name] = v;
      off += w;
    }
    for (const auto &ex : dqf.existentials) {
      std::vector<BvValue> args;
      for (const auto &arg : ex.origin.callsign.args)
        args.push_back(env.at(arg));
      env[ex.var.name] = interps.at(ex.origin.function).apply(args);
    }
    if (!eval_term(dqf.body, env).bit(0))
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("identity specification becomes one dependent existential") {
  std::string doc = R"((synth-fun f ((p (_ BitVec 2))) (_ BitVec 2))
(declare-var x (_ BitVec 2))
(constraint (= (f x) x))
)";
  DqfFormula dqf = to_dqf(parse_problem(doc));
  REQUIRE(dqf.universals.size() == 1);
  CHECK(dqf.universals[0].name == "x");
  REQUIRE(dqf.existentials.size() == 1);
  const DqfExistential &y = dqf.existentials[0];
  CHECK(y.var.name == "f!out");
  CHECK(y.var.sort == Sort::bitvec(2));
  CHECK(y.deps == std::vector<std::string>{"x"});
  CHECK(y.origin.function == "f");
  CHECK(structurally_equal(
      dqf.body, mk_eq(mk_var("f!out", Sort::bitvec(2)),
                      mk_var("x", Sort::bitvec(2)))));
  CHECK(is_2qbf(dqf));
}

TEST_CASE("split dependencies give a genuinely Henkin prefix") {
  std::string doc = R"((synth-fun f ((p (_ BitVec 1))) Bool)
(synth-fun g ((p (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (or (f a) (g b)))
)";
  DqfFormula dqf = to_dqf(parse_problem(doc));
  REQUIRE(dqf.existentials.size() == 2);
  CHECK(dqf.existentials[0].deps == std::vector<std::string>{"a"});
  CHECK(dqf.existentials[1].deps == std::vector<std::string>{"b"});
  CHECK_FALSE(is_2qbf(dqf));
}

TEST_CASE("repeated argument deduplicates the dependency set") {
  std::string doc = R"((synth-fun f ((p (_ BitVec 1)) (q (_ BitVec 1))) (_ BitVec 1))
(declare-var a (_ BitVec 1))
(constraint (= (f a a) (bvnot a)))
)";
  SynthProblem p = parse_problem(doc);
  DqfFormula dqf = to_dqf(p);
  CHECK(dqf.existentials[0].deps == std::vector<std::string>{"a"});
  CHECK(dqf.existentials[0].origin.callsign.args ==
        std::vector<std::string>{"a", "a"});

  // realizable per brute force (table ignoring the duplicated argument),
  // and the DQF semantics agrees for the witness
  FuncInterps witness;
  REQUIRE(testing::brute_force_realizable(p, &witness));
  CHECK(tables_satisfy_dqf(dqf, witness));
}

TEST_CASE("is_2qbf edge cases") {
  // single function applied to every input
  std::string all_inputs = R"((synth-fun f ((p (_ BitVec 1)) (q (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (f a b))
)";
  CHECK(is_2qbf(to_dqf(parse_problem(all_inputs))));

  // no existentials at all
  std::string no_funcs = R"((declare-var a (_ BitVec 1))
(constraint (= a a))
)";
  CHECK(is_2qbf(to_dqf(parse_problem(no_funcs))));

  // proper subset dependency
  std::string subset = R"((synth-fun f ((p (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (or (f a) (= b b)))
)";
  CHECK_FALSE(is_2qbf(to_dqf(parse_problem(subset))));
}

TEST_CASE("multiple-callsign input is an internal pipeline error") {
  std::string doc = R"((synth-fun f ((p (_ BitVec 1))) Bool)
(declare-var a (_ BitVec 1))
(declare-var b (_ BitVec 1))
(constraint (and (f a) (f b)))
)";
  CHECK_THROWS_AS(to_dqf(parse_problem(doc)), std::logic_error);
}

TEST_CASE("body never mentions function applications; dependencies match "
          "the signature exactly") {
  std::mt19937_64 rng(909);
  testing::ProblemGenOptions opts;
  opts.compound_args = true;
  for (int i = 0; i < 80; ++i) {
    SynthProblem p = normalize_arguments(testing::random_problem(rng, opts));
    // reduce to single-callsign first when needed
    SynthProblem sc = to_single_callsign(p, analyze(p)).first;
    DqfFormula dqf = to_dqf(sc);
    CHECK_FALSE(body_mentions_synth_apps(dqf.body));
    for (const auto &ex : dqf.existentials) {
      // every dep var occurs in the signature and vice versa
      for (const auto &d : ex.deps) {
        bool in_cs = false;
        for (const auto &arg : ex.origin.callsign.args)
          in_cs = in_cs || arg == d;
        CHECK(in_cs);
      }
      for (const auto &arg : ex.origin.callsign.args) {
        bool in_deps = false;
        for (const auto &d : ex.deps)
          in_deps = in_deps || d == arg;
        CHECK(in_deps);
      }
    }
  }
}

TEST_CASE("DQF semantics coincides with the original problem pointwise") {
  std::mt19937_64 rng(2718);
  testing::ProblemGenOptions opts;
  opts.max_width = 1;
  opts.max_inputs = 2;
  opts.max_functions = 2;
  opts.max_constraints = 2;
  int checked = 0;
  for (int i = 0; i < 300 && checked < 30; ++i) {
    SynthProblem p = testing::random_problem(rng, opts);
    if (!analyze(normalize_arguments(p)).single_callsign)
      continue;
    SynthProblem n = normalize_arguments(p);
    if (testing::brute_force_cost(n) > (uint64_t{1} << 14))
      continue;
    checked++;
    DqfFormula dqf = to_dqf(n);

    // enumerate every candidate table vector and compare the two readings
    std::vector<uint64_t> combos;
    uint64_t total = 1;
    for (const auto &fn : n.functions) {
      uint32_t arg_bits = 0;
      for (const auto &param : fn.params)
        arg_bits += param.sort.bit_count();
      uint64_t c = uint64_t{1}
                   << ((uint64_t{1} << arg_bits) * fn.return_sort.bit_count());
      combos.push_back(c);
      total *= c;
    }
    REQUIRE(total <= (uint64_t{1} << 16));
    for (uint64_t pick = 0; pick < total; ++pick) {
      uint64_t rest = pick;
      FuncInterps interps;
      for (size_t fi = 0; fi < n.functions.size(); ++fi) {
        const FunctionSymbol &fn = n.functions[fi];
        uint64_t counter = rest % combos[fi];
        rest /= combos[fi];
        FuncInterp interp;
        interp.params = fn.params;
        interp.return_sort = fn.return_sort;
        uint32_t arg_bits = 0;
        for (const auto &param : fn.params)
          arg_bits += param.sort.bit_count();
        uint32_t ret_bits = fn.return_sort.bit_count();
        for (uint64_t e = 0; e < (uint64_t{1} << arg_bits); ++e) {
          BvValue v(ret_bits);
          for (uint32_t b = 0; b < ret_bits; ++b)
            v.set_bit(b, (counter >> (e * ret_bits + b)) & 1);
          interp.table.push_back(v);
        }
        interps[fn.name] = std::move(interp);
      }

      // reading 1: tables satisfy the original constraints everywhere
      bool direct = true;
      uint32_t in_bits = 0;
      for (const auto &v : n.inputs)
        in_bits += v.sort.bit_count();
      for (uint64_t a = 0; a < (uint64_t{1} << in_bits) && direct; ++a) {
        Env env;
        uint32_t off = 0;
        for (const auto &v : n.inputs) {
          uint32_t w = v.sort.bit_count();
          BvValue bv(w);
          for (uint32_t b = 0; b < w; ++b)
            bv.set_bit(b, (a >> (off + b)) & 1);
          env[v.name] = bv;
          off += w;
        }
        for (const auto &c : n.constraints)
          direct = direct && eval_term(c, env, interps).bit(0);
      }

      // reading 2: the induced Henkin assignment satisfies the DQF body
      CHECK(direct == tables_satisfy_dqf(dqf, interps));
    }
  }
  CHECK(checked >= 30);
}
