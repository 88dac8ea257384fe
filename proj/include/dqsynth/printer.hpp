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

#ifndef DQSYNTH_PRINTER_HPP
#define DQSYNTH_PRINTER_HPP

#include "dqsynth/problem.hpp"

#include <string>

namespace dqsynth {

// Renders a term as a single-line S-expression. Bitvector constants are
// printed in #b form so that parse(print(t)) reproduces t exactly.
std::string print_term(const TermPtr &term);

std::string print_sort(const Sort &sort);

// Re-emits a whole problem as parseable text: declare-var, synth-fun
// (with the captured grammar block, verbatim, if one was present),
// constraint commands, and a trailing check-synth.
std::string print_problem(const SynthProblem &problem);

// Renders solutions as one define-fun command per line.
std::string emit_definitions(const std::vector<FunctionDefinition> &defs);

} // namespace dqsynth

#endif // DQSYNTH_PRINTER_HPP
