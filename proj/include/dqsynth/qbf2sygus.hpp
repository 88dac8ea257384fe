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

#ifndef DQSYNTH_QBF2SYGUS_HPP
#define DQSYNTH_QBF2SYGUS_HPP

#include "dqsynth/bitblast.hpp"
#include "dqsynth/problem.hpp"

namespace dqsynth {

// Re-expresses a clausal DQBF instance as a width-1 synthesis problem that
// is realizable exactly when the instance is true.
//
// Universal variable u becomes a declared input `x<u>` of sort (_ BitVec 1).
// Each existential variable y becomes a synthesis function `y<id>` applied
// to the inputs for its dependency set, in ascending variable order, so the
// resulting problem has a single signature per function. Auxiliary
// variables are treated as existentials that may depend on every universal.
// The matrix becomes one conjunction constraint whose literals read
// `(= x<u> #b1)` / `(= x<u> #b0)` or compare a function application against
// the same constants. An empty clause yields a `false` constraint; an empty
// matrix yields `true`.
SynthProblem qbf_to_sygus(const DqbfInstance &instance);

} // namespace dqsynth

#endif // DQSYNTH_QBF2SYGUS_HPP
