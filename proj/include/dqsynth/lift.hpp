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

#ifndef DQSYNTH_LIFT_HPP
#define DQSYNTH_LIFT_HPP

#include <vector>

#include "dqsynth/ackermann.hpp"
#include "dqsynth/bitblast.hpp"
#include "dqsynth/eval.hpp"
#include "dqsynth/solver.hpp"

namespace dqsynth {

// Turns the per-bit Henkin functions of a solved instance back into
// word-level definitions of the problem's function symbols. `instance` is
// the bit-blasted form whose origin records tie existential words to
// function symbols; for problems that went through the signature rewrite,
// `trace` redirects each original name to its canonical symbol and the
// dependency atoms are renamed from the fresh universal block back to the
// declared parameters. Bodies are built from dependency atoms (a parameter
// bit extracted and compared against #b1) with if-then-else and concat, then
// simplified. Bodies mention nothing but the function's own parameters.
std::vector<FunctionDefinition> lift_solution(const SynthProblem &original,
                                              const DqbfInstance &instance,
                                              const HenkinSolution &solution,
                                              const AckermannTrace &trace);

// Bottom-up simplification: constant folding, neutral/absorbing elements,
// if-then-else collapsing, extract/concat fusion, double negation. Keeps
// semantics; meant to make lifted definitions readable (an identity function
// lifts to its parameter, not to a decision tree).
TermPtr simplify_term(const TermPtr &term);

struct LiftedVerify {
  bool valid = false;
  Env counterexample; // input assignment violating a constraint when invalid
};

// Independent end-to-end check of lifted definitions against the original
// problem: substitutes the definitions into the constraints, negates the
// conjunction, bit-blasts, and runs the SAT core. Returns the word-level
// counterexample decoded through the bit map when the check fails.
LiftedVerify verify_lifted(const SynthProblem &original,
                           const std::vector<FunctionDefinition> &definitions);

} // namespace dqsynth

#endif // DQSYNTH_LIFT_HPP
