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

#ifndef DQSYNTH_ACKERMANN_HPP
#define DQSYNTH_ACKERMANN_HPP

#include "dqsynth/callsig.hpp"

#include <map>
#include <utility>

namespace dqsynth {

// (args = Z) -> f^j(args) = canonical(Z), with the vector equality expanded
// component-wise at each component's sort.
struct AgreementConstraint {
  TermPtr guard;
  TermPtr consequence;

  TermPtr implication() const {
    return mk_app(Op::Implies, {guard, consequence});
  }
};

// Everything the transformation did to one multiple-callsign function.
struct FunctionTrace {
  std::string original;
  std::vector<Variable> fresh_block;       // Z, |Z| = arity
  std::vector<FunctionSymbol> renamed;     // one per distinct signature
  FunctionSymbol canonical;                // carries the synthesized artifact
  std::vector<AgreementConstraint> agreements;
};

struct AckermannTrace {
  std::vector<FunctionTrace> functions; // multiple-callsign functions only
  // original name -> canonical symbol name, for every transformed function
  std::map<std::string, std::string> canonical_of;

  bool empty() const { return functions.empty(); }
};

// Rewrites a multiple-callsign problem into an equi-realizable
// single-callsign problem: per transformed function, invocations with the
// j-th signature move to a renamed copy, a fresh universal block Z is added,
// and agreement constraints tie every copy to a canonical function applied
// to Z. Single-callsign input comes back structurally unchanged with an
// empty trace.
std::pair<SynthProblem, AckermannTrace>
to_single_callsign(const SynthProblem &problem, const CallSignIndex &index);

// Number of fresh universal variables to_single_callsign will introduce:
// the sum of arities over the multiple-callsign functions.
size_t fresh_variable_budget(const CallSignIndex &index);

// Human-readable dump used by the --dump-ackermann flag.
std::string format_trace(const AckermannTrace &trace);

} // namespace dqsynth

#endif // DQSYNTH_ACKERMANN_HPP
