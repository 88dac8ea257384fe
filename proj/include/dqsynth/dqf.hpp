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

#ifndef DQSYNTH_DQF_HPP
#define DQSYNTH_DQF_HPP

#include "dqsynth/callsig.hpp"

namespace dqsynth {

// Where an existential came from; consumed by lifting to rebuild a
// function definition over the original parameter list.
struct DqfOrigin {
  std::string function;
  std::vector<Variable> params;
  CallSign callsign; // unique signature (empty for never-invoked functions)
  Sort return_sort = Sort::boolean();
};

struct DqfExistential {
  Variable var; // y_i, sort = return sort of the origin function
  // H_i: dependency set, deduplicated, in first-occurrence order of the
  // signature; names refer to universals
  std::vector<std::string> deps;
  DqfOrigin origin;
};

// forall X exists^{H_1} y_1 ... exists^{H_m} y_m . body
struct DqfFormula {
  std::vector<Variable> universals; // X = all declared inputs
  std::vector<DqfExistential> existentials;
  TermPtr body; // quantifier-free, no synth-function applications
};

// Replaces each function's (syntactically unique) invocation by a fresh
// existential y_i with H_i read off the signature. Throws std::logic_error
// on a multiple-callsign input: that is an internal pipeline error, the
// caller must Ackermannize first.
DqfFormula to_dqf(const SynthProblem &problem);

// True iff every H_i equals X: the formula needs no Henkin dependencies
// and a plain forall-exists (2QBF) solver applies.
bool is_2qbf(const DqfFormula &formula);

// Human-readable dump used by the --dump-dqf flag.
std::string format_dqf(const DqfFormula &formula);

} // namespace dqsynth

#endif // DQSYNTH_DQF_HPP
