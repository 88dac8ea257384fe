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

#ifndef DQSYNTH_DQDIMACS_HPP
#define DQSYNTH_DQDIMACS_HPP

#include <stdexcept>
#include <string>

#include "dqsynth/bitblast.hpp"

namespace dqsynth {

class DimacsError : public std::runtime_error {
public:
  DimacsError(int line, const std::string &message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Serializes an instance in DQDIMACS form:
//
//   c bvmap <name> bool|bv<w> <id...>     (word-level map, LSB first; only
//                                          present when the instance has one)
//   p cnf <num_vars> <num_clauses>
//   a <ids> 0                             (universal bits, ascending; omitted
//                                          when there are none)
//   e <ids> 0                             (ascending: auxiliary bits plus the
//                                          existential bits depending on all
//                                          universals; omitted when empty)
//   d <bit> <deps> 0                      (one per remaining existential bit,
//                                          ascending bit id, deps ascending)
//   <clauses, one per line, stored order>
//
// The layout is canonical: writing, parsing and writing again reproduces the
// same bytes. Instances whose dependency sets all equal the universal set
// come out as plain QDIMACS (no d lines).
std::string write_dqdimacs(const DqbfInstance &instance);

// Parses QDIMACS or DQDIMACS text. Every variable must be declared in the
// prefix (free variables are rejected), and the quantifier structure must be
// forall-exists: an `a` line after any `e` or `d` line is an error. Plain
// QDIMACS existentials depend on all universals. Throws DimacsError on
// malformed input.
DqbfInstance parse_qdimacs(const std::string &text);

} // namespace dqsynth

#endif // DQSYNTH_DQDIMACS_HPP
