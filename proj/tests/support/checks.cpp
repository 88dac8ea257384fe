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

#include "support/checks.hpp"

#include <sstream>

#include "dqsynth/bitblast.hpp"
#include "dqsynth/eval.hpp"
#include "dqsynth/sat.hpp"

namespace dqsynth::testing {

namespace {

std::vector<Variable> all_words(const DqfFormula &f) {
  std::vector<Variable> vars = f.universals;
  for (const DqfExistential &e : f.existentials)
    vars.push_back(e.var);
  return vars;
}

} // namespace

bool blast_matches_eval(const DqfFormula &formula, std::string *why) {
  DqbfInstance inst = blast(formula);
  std::vector<Variable> words = all_words(formula);

  uint32_t total_bits = 0;
  for (const Variable &v : words)
    total_bits += v.sort.bit_count();
  if (total_bits > 16) {
    if (why)
      *why = "formula too wide for exhaustive comparison";
    return false;
  }

  for (uint64_t assignment = 0; assignment < (uint64_t(1) << total_bits);
       ++assignment) {
    Env env;
    std::vector<std::vector<int>> clauses = inst.clauses;
    uint32_t cursor = 0;
    for (const Variable &v : words) {
      uint32_t n = v.sort.bit_count();
      BvValue val = BvValue::from_uint(n, 0);
      const BitMapEntry *entry = inst.bitmap.find(v.name);
      for (uint32_t k = 0; k < n; ++k) {
        bool b = (assignment >> (cursor + k)) & 1;
        val.set_bit(k, b);
        clauses.push_back({b ? entry->bits[k] : -entry->bits[k]});
      }
      env[v.name] = val;
      cursor += n;
    }
    bool want = eval_term(formula.body, env).bit(0);
    SatOutcome got = sat_solve(inst.num_vars, clauses);
    bool is_sat = got.result == SatResult::Sat;
    if (is_sat != want) {
      if (why) {
        std::ostringstream ss;
        ss << "mismatch at assignment " << assignment << ": evaluation says "
           << (want ? "true" : "false") << ", CNF is "
           << (is_sat ? "satisfiable" : "unsatisfiable");
        *why = ss.str();
      }
      return false;
    }
  }
  return true;
}

bool op_blast_check(Op op, uint32_t width, std::string *why) {
  Sort bv = Sort::bitvec(width);
  bool is_cmp = false;
  bool is_unary = false;
  switch (op) {
  case Op::BvNot:
  case Op::BvNeg:
    is_unary = true;
    break;
  case Op::BvUlt:
  case Op::BvUle:
  case Op::BvUgt:
  case Op::BvUge:
  case Op::BvSlt:
  case Op::BvSle:
  case Op::BvSgt:
  case Op::BvSge:
    is_cmp = true;
    break;
  default:
    break;
  }

  DqfFormula f;
  f.universals.push_back({"a", bv});
  TermPtr a = mk_var("a", bv);
  TermPtr applied;
  if (is_unary) {
    applied = mk_app(op, {a});
  } else {
    f.universals.push_back({"b", bv});
    applied = mk_app(op, {a, mk_var("b", bv)});
  }
  Sort result_sort = is_cmp ? Sort::boolean() : bv;
  f.universals.push_back({"r", result_sort});
  f.body = mk_eq(applied, mk_var("r", result_sort));
  return blast_matches_eval(f, why);
}

} // namespace dqsynth::testing
