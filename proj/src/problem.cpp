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

#include "dqsynth/problem.hpp"

#include <stdexcept>

namespace dqsynth {

const Variable *SynthProblem::find_input(const std::string &name) const {
  for (const auto &v : inputs)
    if (v.name == name)
      return &v;
  return nullptr;
}

const FunctionSymbol *
SynthProblem::find_function(const std::string &name) const {
  for (const auto &f : functions)
    if (f.name == name)
      return &f;
  return nullptr;
}

bool SynthProblem::has_name(const std::string &name) const {
  return find_input(name) != nullptr || find_function(name) != nullptr;
}

TermPtr mk_call(const FunctionSymbol &fn, std::vector<TermPtr> args) {
  if (args.size() != fn.params.size())
    throw std::invalid_argument("function '" + fn.name + "' expects " +
                                std::to_string(fn.params.size()) +
                                " arguments, got " +
                                std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i)
    if (!(args[i]->sort == fn.params[i].sort))
      throw std::invalid_argument(
          "argument " + std::to_string(i + 1) + " of '" + fn.name +
          "' has sort " + args[i]->sort.str() + ", expected " +
          fn.params[i].sort.str());
  return mk_synth_app(fn.name, fn.return_sort, std::move(args));
}

bool equal_modulo_grammars(const SynthProblem &a, const SynthProblem &b) {
  if (a.inputs.size() != b.inputs.size() ||
      a.functions.size() != b.functions.size() ||
      a.constraints.size() != b.constraints.size())
    return false;
  for (size_t i = 0; i < a.inputs.size(); ++i)
    if (a.inputs[i].name != b.inputs[i].name ||
        !(a.inputs[i].sort == b.inputs[i].sort))
      return false;
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const auto &fa = a.functions[i], &fb = b.functions[i];
    if (fa.name != fb.name || !(fa.return_sort == fb.return_sort) ||
        fa.params.size() != fb.params.size())
      return false;
    for (size_t j = 0; j < fa.params.size(); ++j)
      if (fa.params[j].name != fb.params[j].name ||
          !(fa.params[j].sort == fb.params[j].sort))
        return false;
  }
  for (size_t i = 0; i < a.constraints.size(); ++i)
    if (!structurally_equal(a.constraints[i], b.constraints[i]))
      return false;
  return true;
}

size_t problem_node_count(const SynthProblem &p) {
  size_t n = p.inputs.size();
  for (const auto &f : p.functions)
    n += 1 + f.params.size();
  for (const auto &c : p.constraints)
    n += node_count(c);
  return n;
}

} // namespace dqsynth
