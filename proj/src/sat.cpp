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

#include "dqsynth/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dqsynth {

namespace {

// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
int64_t luby(int64_t i) {
  int64_t k = 1;
  while ((int64_t(1) << k) - 1 < i + 1)
    ++k;
  while ((int64_t(1) << k) - 1 != i + 1) {
    --k;
    i -= (int64_t(1) << k) - 1;
  }
  return int64_t(1) << (k - 1);
}

constexpr int64_t kRestartBase = 128;
constexpr double kActivityDecay = 0.95;
constexpr double kActivityLimit = 1e100;

} // namespace

// ---------------------------------------------------------------------------
// Heap
// ---------------------------------------------------------------------------

void SatSolver::Heap::up(int i) {
  int v = heap[i];
  while (i > 0) {
    int parent = (i - 1) >> 1;
    if (!less(v, heap[parent]))
      break;
    heap[i] = heap[parent];
    pos[heap[i]] = i;
    i = parent;
  }
  heap[i] = v;
  pos[v] = i;
}

void SatSolver::Heap::down(int i) {
  int v = heap[i];
  int n = static_cast<int>(heap.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= n)
      break;
    if (child + 1 < n && less(heap[child + 1], heap[child]))
      ++child;
    if (!less(heap[child], v))
      break;
    heap[i] = heap[child];
    pos[heap[i]] = i;
    i = child;
  }
  heap[i] = v;
  pos[v] = i;
}

void SatSolver::Heap::insert(int v) {
  if (contains(v))
    return;
  pos[v] = static_cast<int>(heap.size());
  heap.push_back(v);
  up(pos[v]);
}

int SatSolver::Heap::pop() {
  int v = heap[0];
  pos[v] = -1;
  int last = heap.back();
  heap.pop_back();
  if (!heap.empty()) {
    heap[0] = last;
    pos[last] = 0;
    down(0);
  }
  return v;
}

void SatSolver::Heap::grow(int n) {
  int old = static_cast<int>(pos.size());
  pos.resize(n, -1);
  for (int v = old; v < n; ++v)
    insert(v);
}

void SatSolver::Heap::reheap(int v) {
  if (contains(v))
    up(pos[v]);
}

// ---------------------------------------------------------------------------
// SatSolver
// ---------------------------------------------------------------------------

int SatSolver::internal(int dimacs_lit) {
  int v = std::abs(dimacs_lit) - 1;
  return 2 * v + (dimacs_lit < 0 ? 1 : 0);
}

bool SatSolver::value_is_true(int ilit) const {
  signed char a = assign_[ilit >> 1];
  return a >= 0 && (a == 1) == ((ilit & 1) == 0);
}

bool SatSolver::value_is_false(int ilit) const {
  signed char a = assign_[ilit >> 1];
  return a >= 0 && (a == 1) == ((ilit & 1) == 1);
}

bool SatSolver::is_unassigned(int ilit) const {
  return assign_[ilit >> 1] < 0;
}

int SatSolver::new_var() {
  ensure_vars(num_vars() + 1);
  return num_vars();
}

void SatSolver::ensure_vars(int n) {
  if (n <= num_vars())
    return;
  assign_.resize(n, -1);
  phase_.resize(n, 0);
  level_.resize(n, 0);
  reason_.resize(n, -1);
  activity_.resize(n, 0.0);
  seen_.resize(n, 0);
  watches_.resize(2 * static_cast<size_t>(n));
  order_.act = &activity_;
  order_.grow(n);
}

void SatSolver::add_clause(std::vector<int> lits) {
  if (!ok_)
    return;
  for (int l : lits) {
    if (l == 0)
      throw std::invalid_argument("add_clause: literal 0 is not allowed");
    ensure_vars(std::abs(l));
  }
  std::vector<int> c;
  c.reserve(lits.size());
  for (int l : lits)
    c.push_back(internal(l));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    if ((c[i] >> 1) == (c[i + 1] >> 1))
      return; // tautology: contains both polarities of one variable
  }
  if (c.empty()) {
    ok_ = false;
    return;
  }
  size_t ci = clauses_.size();
  clauses_.push_back(std::move(c));
  const std::vector<int> &stored = clauses_[ci];
  if (stored.size() >= 2) {
    watches_[stored[0]].push_back(static_cast<int>(ci));
    watches_[stored[1]].push_back(static_cast<int>(ci));
  }
  // Unit clauses carry no watches; solve() enqueues them up front.
}

void SatSolver::enqueue(int ilit, int reason) {
  int v = ilit >> 1;
  assign_[v] = (ilit & 1) ? 0 : 1;
  phase_[v] = assign_[v];
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(ilit);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    int fp = negate(p); // fp just became false
    std::vector<int> &ws = watches_[fp];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      std::vector<int> &c = clauses_[ci];
      if (c[0] == fp)
        std::swap(c[0], c[1]);
      // invariant: c[1] == fp
      if (value_is_true(c[0])) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (!value_is_false(c[k])) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[j++] = ci;
      if (value_is_false(c[0])) {
        while (i < ws.size())
          ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::bump(int var_index0) {
  activity_[var_index0] += var_inc_;
  if (activity_[var_index0] > kActivityLimit) {
    for (double &a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  order_.reheap(var_index0);
}

void SatSolver::decay() { var_inc_ /= kActivityDecay; }

void SatSolver::analyze(int confl, std::vector<int> &learned,
                        int &backtrack_level) {
  learned.clear();
  learned.push_back(0); // slot for the asserting literal
  int counter = 0;
  int p = -1;
  size_t index = trail_.size();
  const int cur_level = static_cast<int>(trail_lim_.size());

  do {
    const std::vector<int> &c = clauses_[confl];
    for (size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      int q = c[k];
      int v = q >> 1;
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump(v);
        if (level_[v] >= cur_level)
          ++counter;
        else
          learned.push_back(q);
      }
    }
    do {
      --index;
    } while (!seen_[trail_[index] >> 1]);
    p = trail_[index];
    confl = reason_[p >> 1];
    seen_[p >> 1] = 0;
    --counter;
  } while (counter > 0);
  learned[0] = negate(p);

  if (learned.size() == 1) {
    backtrack_level = 0;
  } else {
    size_t max_i = 1;
    for (size_t k = 2; k < learned.size(); ++k) {
      if (level_[learned[k] >> 1] > level_[learned[max_i] >> 1])
        max_i = k;
    }
    std::swap(learned[1], learned[max_i]);
    backtrack_level = level_[learned[1] >> 1];
  }
  for (size_t k = 1; k < learned.size(); ++k)
    seen_[learned[k] >> 1] = 0;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level)
    return;
  size_t bound = trail_lim_[level];
  for (size_t i = trail_.size(); i > bound; --i) {
    int v = trail_[i - 1] >> 1;
    assign_[v] = -1;
    reason_[v] = -1;
    order_.insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(level);
  qhead_ = bound;
}

int SatSolver::pick_branch() {
  while (!order_.empty()) {
    int v = order_.pop();
    if (assign_[v] < 0)
      return 2 * v + (phase_[v] ? 0 : 1);
  }
  return -1;
}

SatResult SatSolver::solve(const SatLimits &limits) {
  solved_sat_ = false;
  if (!ok_)
    return SatResult::Unsat;

  // Enqueue all unit clauses at level 0.
  for (size_t ci = 0; ci < clauses_.size(); ++ci) {
    const std::vector<int> &c = clauses_[ci];
    if (c.size() != 1)
      continue;
    if (value_is_false(c[0]))
      return SatResult::Unsat;
    if (is_unassigned(c[0]))
      enqueue(c[0], static_cast<int>(ci));
  }

  int64_t conflicts = 0;
  int64_t decisions = 0;
  int64_t restart_count = 0;
  int64_t conflicts_until_restart = kRestartBase * luby(restart_count);
  std::vector<int> learned;

  while (true) {
    int confl = propagate();
    if (confl >= 0) {
      ++conflicts;
      if (trail_lim_.empty())
        return SatResult::Unsat;
      if (limits.max_conflicts >= 0 && conflicts > limits.max_conflicts) {
        backtrack(0);
        return SatResult::Unknown;
      }
      if (limits.has_deadline && (conflicts & 15) == 0 &&
          std::chrono::steady_clock::now() >= limits.deadline) {
        backtrack(0);
        return SatResult::Unknown;
      }
      int bt = 0;
      analyze(confl, learned, bt);
      backtrack(bt);
      if (learned.size() == 1) {
        enqueue(learned[0], -1);
      } else {
        int ci = static_cast<int>(clauses_.size());
        clauses_.push_back(learned);
        watches_[learned[0]].push_back(ci);
        watches_[learned[1]].push_back(ci);
        enqueue(learned[0], ci);
      }
      decay();
      if (--conflicts_until_restart <= 0) {
        ++restart_count;
        conflicts_until_restart = kRestartBase * luby(restart_count);
        backtrack(0);
      }
    } else {
      int p = pick_branch();
      if (p < 0) {
        model_.assign(assign_.size() + 1, false);
        for (size_t v = 0; v < assign_.size(); ++v)
          model_[v + 1] = assign_[v] == 1;
        solved_sat_ = true;
        backtrack(0);
        return SatResult::Sat;
      }
      ++decisions;
      if (limits.has_deadline && (decisions & 255) == 0 &&
          std::chrono::steady_clock::now() >= limits.deadline) {
        backtrack(0);
        return SatResult::Unknown;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(p, -1);
    }
  }
}

bool SatSolver::model_value(int var) const {
  if (!solved_sat_ || var <= 0 || var >= static_cast<int>(model_.size()))
    throw std::logic_error("model_value: no model available for variable");
  return model_[var];
}

SatOutcome sat_solve(int num_vars, const std::vector<std::vector<int>> &clauses,
                     const SatLimits &limits) {
  SatSolver solver;
  solver.ensure_vars(num_vars);
  for (const auto &c : clauses)
    solver.add_clause(c);
  SatOutcome out;
  out.result = solver.solve(limits);
  if (out.result == SatResult::Sat) {
    out.model.assign(static_cast<size_t>(solver.num_vars()) + 1, false);
    for (int v = 1; v <= solver.num_vars(); ++v)
      out.model[v] = solver.model_value(v);
  }
  return out;
}

} // namespace dqsynth
