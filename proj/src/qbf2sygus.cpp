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

#include "dqsynth/qbf2sygus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dqsynth {

SynthProblem qbf_to_sygus(const DqbfInstance &instance) {
  SynthProblem out;
  Sort bit = Sort::bitvec(1);

  std::set<int> universal_set(instance.universal_bits.begin(),
                              instance.universal_bits.end());
  std::map<int, TermPtr> input_var;
  for (int u : instance.universal_bits) {
    std::string name = "x" + std::to_string(u);
    out.inputs.push_back({name, bit});
    input_var.emplace(u, mk_var(name, bit));
  }

  // For every existential or auxiliary variable: the fixed application term
  // that every literal over it uses, keeping the signature unique.
  std::map<int, TermPtr> application;
  auto declare = [&](int var, std::vector<int> deps) {
    std::sort(deps.begin(), deps.end());
    FunctionSymbol fn;
    fn.name = "y" + std::to_string(var);
    fn.return_sort = bit;
    std::vector<TermPtr> args;
    for (size_t k = 0; k < deps.size(); ++k) {
      int u = deps[k];
      if (!universal_set.count(u))
        throw std::invalid_argument("dependency " + std::to_string(u) +
                                    " of variable " + std::to_string(var) +
                                    " is not universal");
      fn.params.push_back({"v" + std::to_string(k), bit});
      args.push_back(input_var.at(u));
    }
    out.functions.push_back(fn);
    application.emplace(var,
                        mk_synth_app(fn.name, bit, std::move(args)));
  };

  for (const ExistentialGroup &group : instance.existentials) {
    for (int b : group.bits)
      declare(b, group.deps);
  }
  for (int b : instance.aux_bits)
    declare(b, instance.universal_bits);

  TermPtr one = mk_const(BvValue::from_uint(1, 1));
  TermPtr zero = mk_const(BvValue::from_uint(1, 0));
  std::vector<TermPtr> clause_terms;
  for (const std::vector<int> &clause : instance.clauses) {
    std::vector<TermPtr> lits;
    for (int lit : clause) {
      int var = lit < 0 ? -lit : lit;
      TermPtr read;
      if (auto it = application.find(var); it != application.end())
        read = it->second;
      else if (auto ut = input_var.find(var); ut != input_var.end())
        read = ut->second;
      else
        throw std::invalid_argument("literal over undeclared variable " +
                                    std::to_string(var));
      lits.push_back(mk_eq(std::move(read), lit > 0 ? one : zero));
    }
    if (lits.empty()) {
      clause_terms.push_back(mk_false());
      continue;
    }
    TermPtr disjunction = lits[0];
    for (size_t i = 1; i < lits.size(); ++i)
      disjunction = mk_app(Op::Or, {std::move(disjunction), lits[i]});
    clause_terms.push_back(std::move(disjunction));
  }

  out.constraints.push_back(conjoin(clause_terms));
  return out;
}

} // namespace dqsynth
