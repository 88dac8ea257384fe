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

#ifndef DQSYNTH_EXTERNAL_HPP
#define DQSYNTH_EXTERNAL_HPP

#include <string>

#include "dqsynth/bitblast.hpp"
#include "dqsynth/solver.hpp"

namespace dqsynth {

struct ExternalResult {
  Verdict verdict = Verdict::ResourceLimit;
  bool has_solution = false;
  HenkinSolution solution; // from `f ...` certificate lines, when present
};

// Writes the instance to a temporary DQDIMACS file and runs
// `command <file>`, capturing stdout. The verdict is read from the output:
// an `r TRUE` / `r FALSE` line, an `s cnf 1` / `s cnf 0` line, a line
// containing UNSAT (checked before SAT), or a bare SAT line; exit status 10
// (true) / 20 (false) serves as a fallback. Certificate lines in the
// explicit truth-table format are collected into `solution`; they are not
// trusted and must be re-checked with verify_solution. Throws
// std::runtime_error when no verdict can be extracted.
ExternalResult run_external_solver(const std::string &command,
                                   const DqbfInstance &instance);

} // namespace dqsynth

#endif // DQSYNTH_EXTERNAL_HPP
