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

#ifndef DQSYNTH_PROBLEM_HPP
#define DQSYNTH_PROBLEM_HPP

#include <map>
#include <string>
#include <vector>

#include "dqsynth/term.hpp"

namespace dqsynth {

struct Variable {
  std::string name;
  Sort sort = Sort::boolean();
};

struct FunctionSymbol {
  std::string name;
  std::vector<Variable> params;
  Sort return_sort = Sort::boolean();
};

// A parsed synthesis problem: universally quantified inputs, function symbols
// to synthesize, and Bool constraints that conjoin to the specification.
// Grammars attached to synth-fun forms are retained verbatim for diagnostics
// and never restrict the search.
struct SynthProblem {
  std::vector<Variable> inputs;
  std::vector<FunctionSymbol> functions;
  std::vector<TermPtr> constraints;
  std::map<std::string, std::string> source_grammars;

  const Variable *find_input(const std::string &name) const;
  const FunctionSymbol *find_function(const std::string &name) const;
  bool has_name(const std::string &name) const;
};

struct FunctionDefinition {
  std::string name;
  std::vector<Variable> params;
  Sort return_sort = Sort::boolean();
  TermPtr body;
};

// Sort-checked application of a declared function symbol.
TermPtr mk_call(const FunctionSymbol &fn, std::vector<TermPtr> args);

// Structural equality that ignores source_grammars.
bool equal_modulo_grammars(const SynthProblem &a, const SynthProblem &b);

// AST size metric: declaration entries plus constraint tree nodes.
size_t problem_node_count(const SynthProblem &p);

} // namespace dqsynth

#endif
