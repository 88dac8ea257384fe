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

#ifndef DQSYNTH_CALLSIG_HPP
#define DQSYNTH_CALLSIG_HPP

#include "dqsynth/problem.hpp"

namespace dqsynth {

// Ordered argument list of one invocation site after normalization, so
// every entry is an input-variable name. <a,b> and <b,a> are distinct.
struct CallSign {
  std::string function;
  std::vector<std::string> args;

  bool operator==(const CallSign &o) const = default;
};

struct FunctionCallSigns {
  std::string function;
  // distinct signatures in first-occurrence order over a left-to-right,
  // depth-first traversal of the constraints
  std::vector<CallSign> callsigns;
  size_t invocations = 0; // total sites; >= callsigns.size()
};

struct CallSignIndex {
  std::vector<FunctionCallSigns> functions; // declaration order
  // true iff no function has two or more distinct signatures (functions
  // that are never invoked do not force the multiple-callsign pipeline)
  bool single_callsign = true;

  const FunctionCallSigns *find(const std::string &name) const;
};

// Rewrites every non-variable argument t of a synthesis-function invocation
// into a fresh universally quantified input x with a defining equality
// `x = t`; the equalities form a guard implying each constraint, which is
// the realizability-preserving placement under the enlarged universal
// prefix. Structurally identical argument terms share one fresh variable.
SynthProblem normalize_arguments(const SynthProblem &problem);

// Computes the exact signature index of a normalized problem. Throws
// std::logic_error when an invocation still has a non-variable argument.
CallSignIndex analyze(const SynthProblem &problem);

// Human-readable dump used by the --dump-callsigns flag.
std::string format_callsign_index(const CallSignIndex &index);

} // namespace dqsynth

#endif // DQSYNTH_CALLSIG_HPP
