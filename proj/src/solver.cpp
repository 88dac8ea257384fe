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

#include "dqsynth/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dqsynth {

namespace {

// Representation switch: tables up to this many dependencies, decision
// lists beyond.
constexpr size_t kTableDeps = 10;

// Hard cap on expanded universal bits regardless of the configured bound;
// past this the copy table alone would be unreasonable.
constexpr int kExpansionHardCap = 24;

bool same_set(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Declared dependency ids per existential bit (auxiliaries depend on all
// universal bits), in a deterministic order.
std::map<int, std::vector<int>>
declared_dependencies(const DqbfInstance &inst) {
  std::map<int, std::vector<int>> out;
  for (const ExistentialGroup &g : inst.existentials) {
    for (int bit : g.bits) {
      if (!out.emplace(bit, g.deps).second)
        throw std::logic_error("existential bit " + std::to_string(bit) +
                               " declared twice");
    }
  }
  for (int bit : inst.aux_bits) {
    if (!out.emplace(bit, inst.universal_bits).second)
      throw std::logic_error("auxiliary bit " + std::to_string(bit) +
                             " collides with an existential bit");
  }
  return out;
}

// Emits formulas into a SatSolver. Constants are literals over one pinned
// variable, introduced on first use.
class CnfBuilder {
public:
  explicit CnfBuilder(SatSolver &s) : s_(s) {}

  int true_lit() {
    if (true_lit_ == 0) {
      true_lit_ = s_.new_var();
      s_.add_clause({true_lit_});
    }
    return true_lit_;
  }
  int false_lit() { return -true_lit(); }
  int const_lit(bool v) { return v ? true_lit() : false_lit(); }

  int mk_ite(int c, int t, int e) {
    if (t == e)
      return t;
    int g = s_.new_var();
    s_.add_clause({-g, -c, t});
    s_.add_clause({-g, c, e});
    s_.add_clause({g, -c, -t});
    s_.add_clause({g, c, -e});
    return g;
  }

  int mk_and(const std::vector<int> &lits) {
    if (lits.empty())
      return true_lit();
    if (lits.size() == 1)
      return lits[0];
    int g = s_.new_var();
    std::vector<int> reverse{g};
    for (int l : lits) {
      s_.add_clause({-g, l});
      reverse.push_back(-l);
    }
    s_.add_clause(reverse);
    return g;
  }

  // Literal equal to f applied to its dependency variables.
  int encode_function(const HenkinFunction &f) {
    if (f.uses_table()) {
      size_t want = size_t(1) << f.deps.size();
      size_t have = f.table.empty() ? 1 : f.table.size();
      if (f.deps.size() > 20 || have != want)
        throw std::invalid_argument(
            "function table size does not match its dependency count");
      if (f.table.empty())
        return const_lit(f.default_value);
      return encode_table(f, f.deps.size(), 0);
    }
    int acc = const_lit(f.default_value);
    for (size_t i = f.cases.size(); i-- > 0;) {
      const HenkinFunction::Case &c = f.cases[i];
      if (c.pattern.size() != f.deps.size())
        throw std::invalid_argument(
            "decision-list pattern length does not match dependency count");
      std::vector<int> match;
      for (size_t k = 0; k < f.deps.size(); ++k)
        match.push_back(c.pattern[k] ? f.deps[k] : -f.deps[k]);
      acc = mk_ite(mk_and(match), const_lit(c.value), acc);
    }
    return acc;
  }

  // Pins the existential bit variable to the encoded function value.
  void bind(int bit, const HenkinFunction &f) {
    int out = encode_function(f);
    s_.add_clause({-bit, out});
    s_.add_clause({bit, -out});
  }

  // Selector literal that is true only when `clause` is falsified.
  int negated_clause(const std::vector<int> &clause) {
    if (clause.empty())
      return true_lit();
    int sel = s_.new_var();
    for (int lit : clause)
      s_.add_clause({-sel, -lit});
    return sel;
  }

private:
  int encode_table(const HenkinFunction &f, size_t m, size_t lo) {
    size_t len = size_t(1) << m;
    bool first = f.table[lo];
    bool homogeneous = true;
    for (size_t i = 1; i < len; ++i) {
      if (f.table[lo + i] != first) {
        homogeneous = false;
        break;
      }
    }
    if (homogeneous)
      return const_lit(first);
    int on_false = encode_table(f, m - 1, lo);
    int on_true = encode_table(f, m - 1, lo + len / 2);
    return mk_ite(f.deps[m - 1], on_true, on_false);
  }

  SatSolver &s_;
  int true_lit_ = 0;
};

HenkinFunction flatten_if_small(HenkinFunction f) {
  if (f.uses_table() || f.deps.size() > kTableDeps)
    return f;
  HenkinFunction t;
  t.deps = f.deps;
  size_t n = size_t(1) << f.deps.size();
  t.table.resize(n);
  std::vector<bool> vals(f.deps.size());
  for (size_t idx = 0; idx < n; ++idx) {
    for (size_t k = 0; k < f.deps.size(); ++k)
      vals[k] = (idx >> k) & 1;
    t.table[idx] = f.eval(vals);
  }
  return t;
}

SolveOutcome resource_limit(std::string reason) {
  SolveOutcome out;
  out.verdict = Verdict::ResourceLimit;
  out.limit_reason = std::move(reason);
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// HenkinFunction
// ---------------------------------------------------------------------------

bool HenkinFunction::eval(const std::vector<bool> &dep_values) const {
  if (dep_values.size() != deps.size())
    throw std::invalid_argument("eval: wrong number of dependency values");
  if (uses_table()) {
    if (table.empty())
      return default_value; // constant function with no dependencies
    size_t idx = 0;
    for (size_t k = 0; k < dep_values.size(); ++k)
      idx |= size_t(dep_values[k]) << k;
    return table[idx];
  }
  for (const Case &c : cases) {
    bool match = true;
    for (size_t k = 0; k < deps.size(); ++k) {
      if (c.pattern[k] != dep_values[k]) {
        match = false;
        break;
      }
    }
    if (match)
      return c.value;
  }
  return default_value;
}

HenkinFunction HenkinFunction::constant(bool value) {
  HenkinFunction f;
  f.table = {value};
  f.default_value = value;
  return f;
}

// ---------------------------------------------------------------------------
// Expansion solver
// ---------------------------------------------------------------------------

SolveOutcome solve_expansion(const DqbfInstance &inst,
                             const SolverOptions &options) {
  const std::vector<int> &U = inst.universal_bits;
  int n = static_cast<int>(U.size());
  int bound = std::min(options.expansion_bound, kExpansionHardCap);
  if (n > bound)
    return resource_limit("expansion bound exceeded: " + std::to_string(n) +
                          " universal bits, bound " + std::to_string(bound));

  std::map<int, int> upos;
  for (int i = 0; i < n; ++i)
    upos[U[i]] = i;

  struct BitInfo {
    std::vector<int> dep_ids;
    std::vector<int> dep_pos;
  };
  std::map<int, BitInfo> ebits;
  for (const auto &[bit, deps] : declared_dependencies(inst)) {
    BitInfo info;
    info.dep_ids = deps;
    for (int d : deps) {
      auto it = upos.find(d);
      if (it == upos.end())
        throw std::logic_error("dependency of bit " + std::to_string(bit) +
                               " on non-universal " + std::to_string(d));
      info.dep_pos.push_back(it->second);
    }
    ebits.emplace(bit, std::move(info));
  }

  SatSolver sat;
  std::map<int, std::map<uint64_t, int>> copies;
  auto copy_var = [&](int bit, uint64_t key) {
    auto &slot = copies[bit];
    auto it = slot.find(key);
    if (it != slot.end())
      return it->second;
    int v = sat.new_var();
    slot.emplace(key, v);
    return v;
  };

  const uint64_t total = uint64_t(1) << n;
  std::vector<int> mapped;
  for (uint64_t sigma = 0; sigma < total; ++sigma) {
    if ((sigma & 255) == 0 && options.deadline_passed())
      return resource_limit("deadline reached during expansion");
    for (const auto &clause : inst.clauses) {
      mapped.clear();
      bool satisfied = false;
      for (int lit : clause) {
        int v = lit < 0 ? -lit : lit;
        auto u = upos.find(v);
        if (u != upos.end()) {
          bool val = (sigma >> u->second) & 1;
          if ((lit > 0) == val) {
            satisfied = true;
            break;
          }
          continue; // literal false under sigma: drop it
        }
        auto b = ebits.find(v);
        if (b == ebits.end())
          throw std::logic_error("clause variable " + std::to_string(v) +
                                 " is neither universal nor existential");
        uint64_t key = 0;
        for (size_t i = 0; i < b->second.dep_pos.size(); ++i)
          key |= ((sigma >> b->second.dep_pos[i]) & 1) << i;
        int cv = copy_var(v, key);
        mapped.push_back(lit > 0 ? cv : -cv);
      }
      if (!satisfied)
        sat.add_clause(mapped);
    }
  }

  SatResult r = sat.solve(options.sat_limits());
  if (r == SatResult::Unknown)
    return resource_limit("SAT budget exhausted during expansion");
  SolveOutcome out;
  if (r == SatResult::Unsat) {
    out.verdict = Verdict::False;
    return out;
  }

  out.verdict = Verdict::True;
  for (const auto &[bit, info] : ebits) {
    HenkinFunction f;
    f.deps = info.dep_ids;
    size_t k = f.deps.size();
    const auto &slot = copies[bit];
    if (k <= kTableDeps) {
      f.table.assign(size_t(1) << k, false);
      for (const auto &[key, var] : slot)
        f.table[key] = sat.model_value(var);
    } else {
      for (const auto &[key, var] : slot) {
        if (!sat.model_value(var))
          continue;
        HenkinFunction::Case c;
        c.value = true;
        for (size_t i = 0; i < k; ++i)
          c.pattern.push_back((key >> i) & 1);
        f.cases.push_back(std::move(c));
      }
      f.default_value = false;
    }
    out.solution.bits.emplace(bit, std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2QBF CEGIS
// ---------------------------------------------------------------------------

SolveOutcome solve_2qbf(const DqbfInstance &inst, const SolverOptions &options) {
  const std::vector<int> &U = inst.universal_bits;
  for (const ExistentialGroup &g : inst.existentials) {
    if (!same_set(g.deps, U))
      throw std::logic_error(
          "solve_2qbf: dependency set of '" + g.source +
          "' does not equal the universal set; use the expansion engine");
  }

  std::map<int, HenkinFunction> cand;
  for (const auto &[bit, deps] : declared_dependencies(inst)) {
    HenkinFunction f;
    f.deps = deps;
    cand.emplace(bit, std::move(f));
  }

  auto finish_true = [&]() {
    SolveOutcome out;
    out.verdict = Verdict::True;
    for (auto &[bit, f] : cand)
      out.solution.bits.emplace(bit, flatten_if_small(f));
    return out;
  };

  for (int64_t iteration = 0;; ++iteration) {
    if (options.deadline_passed())
      return resource_limit("deadline reached after " +
                            std::to_string(iteration) + " refinements");
    if (iteration > (int64_t(1) << 22))
      return resource_limit("refinement iteration cap reached");

    // Find a universal assignment the candidate fails on. Every candidate
    // carries the same case patterns in the same order (one exact sigma per
    // refinement, appended to all of them), and distinct sigmas make the
    // patterns mutually exclusive. That allows a flat encoding with one
    // shared match literal per case instead of a per-bit ite chain.
    SatSolver ver;
    ver.ensure_vars(inst.num_vars);
    CnfBuilder builder(ver);
    bool shared_patterns = true;
    const std::vector<int> *proto_deps = nullptr;
    for (const auto &[bit, f] : cand) {
      if (proto_deps == nullptr)
        proto_deps = &f.deps;
      else
        shared_patterns = shared_patterns && f.deps == *proto_deps;
      shared_patterns = shared_patterns && !f.uses_table();
    }
    if (shared_patterns && !cand.empty()) {
      const HenkinFunction &proto = cand.begin()->second;
      std::vector<int> match_lits;
      std::vector<int> conj;
      for (const HenkinFunction::Case &c : proto.cases) {
        conj.clear();
        for (size_t t = 0; t < proto.deps.size(); ++t)
          conj.push_back(c.pattern[t] ? proto.deps[t] : -proto.deps[t]);
        match_lits.push_back(builder.mk_and(conj));
      }
      for (const auto &[bit, f] : cand) {
        std::vector<int> uncovered{f.default_value ? bit : -bit};
        for (size_t j = 0; j < match_lits.size(); ++j) {
          ver.add_clause({-match_lits[j], f.cases[j].value ? bit : -bit});
          uncovered.push_back(match_lits[j]);
        }
        ver.add_clause(uncovered);
      }
    } else {
      for (const auto &[bit, f] : cand)
        builder.bind(bit, f);
    }
    std::vector<int> selectors;
    for (const auto &clause : inst.clauses)
      selectors.push_back(builder.negated_clause(clause));
    if (selectors.empty())
      return finish_true(); // no clauses: the matrix is trivially true
    ver.add_clause(selectors);

    SatResult vr = ver.solve(options.sat_limits());
    if (vr == SatResult::Unknown)
      return resource_limit("SAT budget exhausted in the verification step");
    if (vr == SatResult::Unsat)
      return finish_true();

    std::map<int, bool> sigma;
    for (int u : U)
      sigma[u] = ver.model_value(u);

    // Ask for existential values that satisfy the matrix under sigma.
    SatSolver ref;
    ref.ensure_vars(inst.num_vars);
    std::vector<int> mapped;
    for (const auto &clause : inst.clauses) {
      mapped.clear();
      bool satisfied = false;
      for (int lit : clause) {
        int v = lit < 0 ? -lit : lit;
        auto it = sigma.find(v);
        if (it != sigma.end()) {
          if ((lit > 0) == it->second) {
            satisfied = true;
            break;
          }
          continue;
        }
        mapped.push_back(lit);
      }
      if (!satisfied)
        ref.add_clause(mapped);
    }
    SatResult rr = ref.solve(options.sat_limits());
    if (rr == SatResult::Unknown)
      return resource_limit("SAT budget exhausted in the refinement step");
    if (rr == SatResult::Unsat) {
      SolveOutcome out;
      out.verdict = Verdict::False;
      return out;
    }
    for (auto &[bit, f] : cand) {
      HenkinFunction::Case c;
      for (int d : f.deps)
        c.pattern.push_back(sigma.at(d));
      c.value = ref.model_value(bit);
      f.cases.insert(f.cases.begin(), std::move(c));
    }
  }
}

SolveOutcome solve_auto(const DqbfInstance &inst, const SolverOptions &options) {
  bool all_full = true;
  for (const ExistentialGroup &g : inst.existentials) {
    if (!same_set(g.deps, inst.universal_bits)) {
      all_full = false;
      break;
    }
  }
  return all_full ? solve_2qbf(inst, options) : solve_expansion(inst, options);
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerifyOutcome verify_solution(const DqbfInstance &inst,
                              const HenkinSolution &solution) {
  std::map<int, std::vector<int>> declared = declared_dependencies(inst);
  for (const auto &[bit, deps] : declared) {
    auto it = solution.bits.find(bit);
    if (it == solution.bits.end())
      throw std::logic_error("solution has no function for existential bit " +
                             std::to_string(bit));
    std::set<int> allowed(deps.begin(), deps.end());
    for (int d : it->second.deps) {
      if (!allowed.count(d))
        throw std::invalid_argument(
            "function for bit " + std::to_string(bit) + " reads bit " +
            std::to_string(d) + " outside its dependency set");
    }
  }
  for (const auto &[bit, f] : solution.bits) {
    (void)f;
    if (!declared.count(bit))
      throw std::invalid_argument("solution assigns a function to bit " +
                                  std::to_string(bit) +
                                  ", which is not existential");
  }

  SatSolver sat;
  sat.ensure_vars(inst.num_vars);
  CnfBuilder builder(sat);
  for (const auto &[bit, deps] : declared) {
    (void)deps;
    builder.bind(bit, solution.bits.at(bit));
  }
  std::vector<int> selectors;
  for (const auto &clause : inst.clauses)
    selectors.push_back(builder.negated_clause(clause));

  VerifyOutcome out;
  if (selectors.empty()) {
    out.valid = true;
    return out;
  }
  sat.add_clause(selectors);
  SatResult r = sat.solve();
  if (r == SatResult::Unsat) {
    out.valid = true;
    return out;
  }
  out.valid = false;
  for (int u : inst.universal_bits)
    out.counterexample.emplace_back(u, sat.model_value(u));
  return out;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

std::string write_certificate(const HenkinSolution &solution) {
  std::ostringstream out;
  for (const auto &[bit, f] : solution.bits) {
    out << "f " << bit << " deps";
    for (int d : f.deps)
      out << ' ' << d;
    if (f.uses_table()) {
      out << " table ";
      size_t n = f.table.empty() ? 1 : f.table.size();
      for (size_t i = 0; i < n; ++i)
        out << (f.table.empty() ? (f.default_value ? '1' : '0')
                                : (f.table[i] ? '1' : '0'));
    } else {
      out << " default " << (f.default_value ? 1 : 0);
      for (const auto &c : f.cases) {
        out << " case ";
        for (bool b : c.pattern)
          out << (b ? '1' : '0');
        out << ' ' << (c.value ? 1 : 0);
      }
    }
    out << '\n';
  }
  return out.str();
}

HenkinSolution parse_certificate(const std::string &text) {
  HenkinSolution sol;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) -> void {
    throw std::invalid_argument("certificate line " + std::to_string(lineno) +
                                ": " + msg);
  };
  auto parse_bits = [&](const std::string &s) {
    std::vector<bool> bits;
    for (char c : s) {
      if (c != '0' && c != '1')
        fail("expected a 0/1 string, got '" + s + "'");
      bits.push_back(c == '1');
    }
    return bits;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '#')
      continue;
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head != "f")
      fail("expected 'f <bit> deps ...'");
    int bit = 0;
    if (!(ss >> bit) || bit <= 0)
      fail("missing existential bit id");
    std::string kw;
    if (!(ss >> kw) || kw != "deps")
      fail("expected 'deps'");
    HenkinFunction f;
    std::string tok;
    bool have_shape = false;
    while (ss >> tok) {
      if (tok == "table" || tok == "default") {
        have_shape = true;
        break;
      }
      try {
        size_t used = 0;
        int dep = std::stoi(tok, &used);
        if (used != tok.size() || dep <= 0)
          fail("bad dependency id '" + tok + "'");
        f.deps.push_back(dep);
      } catch (const std::invalid_argument &) {
        fail("bad dependency id '" + tok + "'");
      }
    }
    if (!have_shape)
      fail("missing 'table' or 'default' section");
    if (tok == "table") {
      std::string bits;
      if (!(ss >> bits))
        fail("missing table bits");
      f.table = parse_bits(bits);
      if (f.table.size() != (size_t(1) << f.deps.size()))
        fail("table has " + std::to_string(f.table.size()) +
             " entries, expected 2^" + std::to_string(f.deps.size()));
      if (ss >> tok)
        fail("trailing tokens after table");
    } else {
      int def = 0;
      if (!(ss >> def) || (def != 0 && def != 1))
        fail("bad default value");
      f.default_value = def == 1;
      while (ss >> tok) {
        if (tok != "case")
          fail("expected 'case'");
        std::string pat;
        int val = 0;
        if (!(ss >> pat >> val) || (val != 0 && val != 1))
          fail("malformed case");
        HenkinFunction::Case c;
        c.pattern = parse_bits(pat);
        if (c.pattern.size() != f.deps.size())
          fail("case pattern length does not match dependency count");
        c.value = val == 1;
        f.cases.push_back(std::move(c));
      }
      if (f.deps.empty() && f.cases.empty())
        f.table = {f.default_value}; // constant: keep the table form
    }
    if (!sol.bits.emplace(bit, std::move(f)).second)
      fail("bit " + std::to_string(bit) + " defined twice");
  }
  return sol;
}

} // namespace dqsynth
