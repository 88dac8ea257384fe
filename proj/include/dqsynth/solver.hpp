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

#ifndef DQSYNTH_SOLVER_HPP
#define DQSYNTH_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dqsynth/bitblast.hpp"
#include "dqsynth/sat.hpp"

namespace dqsynth {

enum class Verdict {
  True,          // realizable; a model (Henkin functions) is available
  False,         // unrealizable
  ResourceLimit, // bound, budget, or deadline hit; NOT a verdict on truth
};

// One propositional Henkin function: the value of one existential bit as a
// function of its dependency bits. Functions over at most 10 dependencies
// are stored as full truth tables; larger ones as ordered decision lists
// (first matching case wins, otherwise the default applies).
struct HenkinFunction {
  std::vector<int> deps; // propositional ids; deps[0] indexes the table LSB

  std::vector<bool> table; // size 2^|deps| when in table form, else empty

  struct Case {
    std::vector<bool> pattern; // one value per dep, same order as deps
    bool value = false;
  };
  std::vector<Case> cases;
  bool default_value = false;

  bool uses_table() const { return !table.empty() || deps.empty(); }
  bool eval(const std::vector<bool> &dep_values) const;

  static HenkinFunction constant(bool value);
};

// Functions for every existential bit of an instance, auxiliary encoding
// bits included, keyed by propositional id.
struct HenkinSolution {
  std::map<int, HenkinFunction> bits;
};

struct SolverOptions {
  // solve_expansion refuses instances with more universal bits than this.
  int expansion_bound = 16;
  int64_t conflict_budget = -1; // per SAT call; < 0 means unlimited
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;

  SatLimits sat_limits() const {
    return {conflict_budget, deadline, has_deadline};
  }
  bool deadline_passed() const {
    return has_deadline && std::chrono::steady_clock::now() >= deadline;
  }
};

struct SolveOutcome {
  Verdict verdict = Verdict::ResourceLimit;
  HenkinSolution solution;  // populated when verdict == True
  std::string limit_reason; // populated when verdict == ResourceLimit
};

// Decides the instance by expanding the universal bits: one copy of every
// existential bit per assignment of its dependency set, shared across all
// universal assignments that agree on that set.
SolveOutcome solve_expansion(const DqbfInstance &instance,
                             const SolverOptions &options = {});

// Counterexample-guided synthesis for instances whose dependency sets all
// equal the universal set. Throws std::logic_error on other instances.
SolveOutcome solve_2qbf(const DqbfInstance &instance,
                        const SolverOptions &options = {});

// Picks solve_2qbf when every dependency set equals the universal set,
// solve_expansion otherwise.
SolveOutcome solve_auto(const DqbfInstance &instance,
                        const SolverOptions &options = {});

struct VerifyOutcome {
  bool valid = false;
  // Universal assignment falsifying the matrix when invalid.
  std::vector<std::pair<int, bool>> counterexample;
};

// Checks a solution against the instance with an independent SAT call:
// substituting the functions for the existential bits must make the matrix
// a tautology over the universal bits. Requires a function for every
// existential bit (std::logic_error otherwise) reading only declared
// dependencies (std::invalid_argument otherwise).
VerifyOutcome verify_solution(const DqbfInstance &instance,
                              const HenkinSolution &solution);

// Text form of a solution, one line per bit:
//   f <bit> deps <id...> table <bitstring>      (bitstring index 0 first,
//                                                deps[0] = least significant
//                                                index bit)
//   f <bit> deps <id...> default <0|1> [case <pattern> <0|1>]...
std::string write_certificate(const HenkinSolution &solution);

// Parses the format above. Throws std::invalid_argument on malformed text.
HenkinSolution parse_certificate(const std::string &text);

} // namespace dqsynth

#endif // DQSYNTH_SOLVER_HPP
