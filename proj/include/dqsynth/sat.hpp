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

#ifndef DQSYNTH_SAT_HPP
#define DQSYNTH_SAT_HPP

#include <chrono>
#include <cstdint>
#include <vector>

namespace dqsynth {

enum class SatResult {
  Sat,
  Unsat,
  Unknown, // resource limit hit; distinct from Unsat by contract
};

struct SatLimits {
  int64_t max_conflicts = -1; // < 0: unlimited
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;

  static SatLimits none() { return {}; }
};

// Conflict-driven clause learning over watched literals, with first-UIP
// learning, VSIDS-style decision activity, phase saving, and Luby restarts.
// Single-shot use: add clauses, then call solve() once.
class SatSolver {
public:
  // Variables are 1-based DIMACS ids; literals are +v / -v.
  int new_var();
  void ensure_vars(int n);
  int num_vars() const { return static_cast<int>(assign_.size()); }

  void add_clause(std::vector<int> lits);

  SatResult solve(const SatLimits &limits = {});

  // Valid after solve() returned Sat.
  bool model_value(int var) const;

private:
  // internal literal: 2*(var-1) for +var, 2*(var-1)+1 for -var
  static int internal(int dimacs_lit);
  static int negate(int ilit) { return ilit ^ 1; }
  int var_of(int ilit) const { return (ilit >> 1) + 1; }

  bool value_is_true(int ilit) const;
  bool value_is_false(int ilit) const;
  bool is_unassigned(int ilit) const;

  void enqueue(int ilit, int reason);
  int propagate(); // returns conflicting clause index or -1
  void analyze(int confl, std::vector<int> &learned, int &backtrack_level);
  void backtrack(int level);
  int pick_branch(); // internal literal to decide, or -1 when all assigned
  void bump(int var_index0);
  void decay();

  // indexed max-heap over activity, keyed by 0-based variable index
  struct Heap {
    std::vector<int> heap;
    std::vector<int> pos; // -1 when absent
    const std::vector<double> *act = nullptr;

    bool less(int a, int b) const { return (*act)[a] > (*act)[b]; }
    void up(int i);
    void down(int i);
    void insert(int v);
    bool contains(int v) const {
      return v < static_cast<int>(pos.size()) && pos[v] >= 0;
    }
    int pop();
    bool empty() const { return heap.empty(); }
    void grow(int n);
    void reheap(int v); // activity of v increased
  };

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_; // per internal literal
  std::vector<signed char> assign_;       // per var index0: -1 / 0 / 1
  std::vector<signed char> phase_;        // saved polarity
  std::vector<int> level_;
  std::vector<int> reason_; // clause index or -1
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  Heap order_;

  std::vector<signed char> seen_;
  std::vector<bool> model_;

  bool ok_ = true;
  bool solved_sat_ = false;
};

struct SatOutcome {
  SatResult result = SatResult::Unknown;
  std::vector<bool> model; // indexed 1..num_vars; entry 0 unused
};

// One-call interface over the class above.
SatOutcome sat_solve(int num_vars, const std::vector<std::vector<int>> &clauses,
                     const SatLimits &limits = {});

} // namespace dqsynth

#endif // DQSYNTH_SAT_HPP
