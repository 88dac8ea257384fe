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

#ifndef DQSYNTH_EVAL_HPP
#define DQSYNTH_EVAL_HPP

#include "dqsynth/problem.hpp"

#include <map>
#include <string>

namespace dqsynth {

// Concrete variable assignment. Bool values are width-1 bitvectors.
using Env = std::map<std::string, BvValue>;

// Explicit function interpretation: a full lookup table keyed by the
// concatenation (MSB-first: arg0 high) of the argument bit patterns.
struct FuncInterp {
  std::vector<Variable> params;
  Sort return_sort = Sort::boolean();
  std::vector<BvValue> table; // size 2^(total argument bits)

  BvValue apply(const std::vector<BvValue> &args) const;
};

using FuncInterps = std::map<std::string, FuncInterp>;

// Evaluates a ground term under `env`. Applications of unknown synthesis
// functions are looked up in `funcs`; if absent, throws std::logic_error.
BvValue eval_term(const TermPtr &term, const Env &env,
                  const FuncInterps &funcs = {});

// Evaluates a definition body at the given argument values.
BvValue eval_definition(const FunctionDefinition &def,
                        const std::vector<BvValue> &args);

} // namespace dqsynth

#endif // DQSYNTH_EVAL_HPP
