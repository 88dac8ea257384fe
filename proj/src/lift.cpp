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

#include "dqsynth/lift.hpp"

#include <functional>
#include <stdexcept>

#include "dqsynth/sat.hpp"

namespace dqsynth {

namespace {

bool is_bool_const(const TermPtr &t, bool v) {
  return t->kind == Term::Kind::Const && t->sort.is_bool() &&
         t->value.bit(0) == v;
}

bool is_bv_const(const TermPtr &t, uint32_t width, uint64_t v) {
  return t->kind == Term::Kind::Const && t->sort.is_bitvec() &&
         t->sort.width() == width && t->value.to_uint() == v;
}

TermPtr rebuild(const TermPtr &t, std::vector<TermPtr> args) {
  if (t->op == Op::Extract)
    return mk_extract(t->hi, t->lo, std::move(args[0]));
  return mk_app(t->op, std::move(args));
}

// One round of local rewrites at the root. Children are already simple.
TermPtr rewrite_root(const TermPtr &t) {
  if (t->kind != Term::Kind::App)
    return t;
  const auto &args = t->args;

  bool all_const = true;
  for (const TermPtr &a : args) {
    if (a->kind != Term::Kind::Const) {
      all_const = false;
      break;
    }
  }
  if (all_const) {
    BvValue v = eval_term(t, {});
    return t->sort.is_bool() ? mk_bool_const(v.bit(0)) : mk_const(v);
  }

  switch (t->op) {
  case Op::Not:
    if (args[0]->kind == Term::Kind::App && args[0]->op == Op::Not)
      return args[0]->args[0];
    break;
  case Op::And: {
    std::vector<TermPtr> kept;
    for (const TermPtr &a : args) {
      if (is_bool_const(a, false))
        return mk_false();
      if (!is_bool_const(a, true))
        kept.push_back(a);
    }
    if (kept.empty())
      return mk_true();
    if (kept.size() == 1)
      return kept[0];
    if (kept.size() != args.size())
      return mk_app(Op::And, std::move(kept));
    break;
  }
  case Op::Or: {
    std::vector<TermPtr> kept;
    for (const TermPtr &a : args) {
      if (is_bool_const(a, true))
        return mk_true();
      if (!is_bool_const(a, false))
        kept.push_back(a);
    }
    if (kept.empty())
      return mk_false();
    if (kept.size() == 1)
      return kept[0];
    if (kept.size() != args.size())
      return mk_app(Op::Or, std::move(kept));
    break;
  }
  case Op::Xor:
    if (args.size() == 2) {
      if (is_bool_const(args[0], false))
        return args[1];
      if (is_bool_const(args[1], false))
        return args[0];
      if (is_bool_const(args[0], true))
        return mk_not(args[1]);
      if (is_bool_const(args[1], true))
        return mk_not(args[0]);
      if (structurally_equal(args[0], args[1]))
        return mk_false();
    }
    break;
  case Op::Implies:
    if (is_bool_const(args[0], true))
      return args[1];
    if (is_bool_const(args[0], false))
      return mk_true();
    if (is_bool_const(args[1], true))
      return mk_true();
    if (is_bool_const(args[1], false))
      return mk_not(args[0]);
    break;
  case Op::Eq:
    if (structurally_equal(args[0], args[1]))
      return mk_true();
    if (args[0]->sort.is_bool()) {
      if (is_bool_const(args[1], true))
        return args[0];
      if (is_bool_const(args[1], false))
        return mk_not(args[0]);
      if (is_bool_const(args[0], true))
        return args[1];
      if (is_bool_const(args[0], false))
        return mk_not(args[1]);
    }
    break;
  case Op::Ite: {
    if (is_bool_const(args[0], true))
      return args[1];
    if (is_bool_const(args[0], false))
      return args[2];
    if (structurally_equal(args[1], args[2]))
      return args[1];
    if (t->sort.is_bool()) {
      if (is_bool_const(args[1], true) && is_bool_const(args[2], false))
        return args[0];
      if (is_bool_const(args[1], false) && is_bool_const(args[2], true))
        return mk_not(args[0]);
    }
    // (ite (= e #b1) #b1 #b0) is e itself for width-1 e.
    if (t->sort.is_bitvec() && t->sort.width() == 1 &&
        is_bv_const(args[1], 1, 1) && is_bv_const(args[2], 1, 0) &&
        args[0]->kind == Term::Kind::App && args[0]->op == Op::Eq) {
      const TermPtr &l = args[0]->args[0];
      const TermPtr &r = args[0]->args[1];
      if (is_bv_const(r, 1, 1))
        return l;
      if (is_bv_const(l, 1, 1))
        return r;
    }
    break;
  }
  case Op::Extract: {
    const TermPtr &a = args[0];
    if (t->lo == 0 && t->hi + 1 == a->sort.width())
      return a;
    if (a->kind == Term::Kind::App && a->op == Op::Extract)
      return mk_extract(a->lo + t->hi, a->lo + t->lo, a->args[0]);
    break;
  }
  case Op::Concat: {
    const TermPtr &hi = args[0];
    const TermPtr &lo = args[1];
    if (hi->kind == Term::Kind::App && hi->op == Op::Extract &&
        lo->kind == Term::Kind::App && lo->op == Op::Extract &&
        structurally_equal(hi->args[0], lo->args[0]) &&
        hi->lo == lo->hi + 1)
      return mk_extract(hi->hi, lo->lo, hi->args[0]);
    break;
  }
  case Op::BvNot:
    if (args[0]->kind == Term::Kind::App && args[0]->op == Op::BvNot)
      return args[0]->args[0];
    break;
  default:
    break;
  }
  return t;
}

} // namespace

TermPtr simplify_term(const TermPtr &term) {
  TermPtr cur = term;
  if (cur->kind == Term::Kind::App) {
    std::vector<TermPtr> args;
    bool changed = false;
    for (const TermPtr &a : cur->args) {
      TermPtr s = simplify_term(a);
      changed = changed || s.get() != a.get();
      args.push_back(std::move(s));
    }
    if (changed)
      cur = rebuild(cur, std::move(args));
  }
  for (int round = 0; round < 16; ++round) {
    TermPtr next = rewrite_root(cur);
    if (next.get() == cur.get())
      break;
    cur = next;
  }
  return cur;
}

namespace {

// Boolean term for one Henkin function, with `atoms[k]` the Bool term that
// reads dependency k.
class FunctionLifter {
public:
  FunctionLifter(const HenkinFunction &f, std::vector<TermPtr> atoms)
      : f_(f), atoms_(std::move(atoms)) {}

  TermPtr build() const {
    if (f_.uses_table()) {
      if (f_.table.empty())
        return mk_bool_const(f_.default_value);
      return shannon(f_.deps.size(), 0);
    }
    TermPtr acc = mk_bool_const(f_.default_value);
    for (size_t i = f_.cases.size(); i-- > 0;) {
      const HenkinFunction::Case &c = f_.cases[i];
      TermPtr cond = mk_true();
      for (size_t k = 0; k < atoms_.size(); ++k) {
        TermPtr lit = c.pattern[k] ? atoms_[k] : mk_not(atoms_[k]);
        cond = is_bool_const(cond, true) ? lit : mk_and(cond, lit);
      }
      acc = mk_app(Op::Ite, {cond, mk_bool_const(c.value), acc});
    }
    return acc;
  }

private:
  TermPtr shannon(size_t m, size_t lo) const {
    size_t len = size_t(1) << m;
    bool first = f_.table[lo];
    bool homogeneous = true;
    for (size_t i = 1; i < len; ++i) {
      if (f_.table[lo + i] != first) {
        homogeneous = false;
        break;
      }
    }
    if (homogeneous)
      return mk_bool_const(first);
    return mk_app(Op::Ite, {atoms_[m - 1], shannon(m - 1, lo + len / 2),
                            shannon(m - 1, lo)});
  }

  const HenkinFunction &f_;
  std::vector<TermPtr> atoms_;
};

} // namespace

std::vector<FunctionDefinition> lift_solution(const SynthProblem &original,
                                              const DqbfInstance &instance,
                                              const HenkinSolution &solution,
                                              const AckermannTrace &trace) {
  if (instance.origin.size() != instance.existentials.size())
    throw std::logic_error("lift: instance carries no word-level origin");

  std::map<std::string, size_t> by_symbol;
  for (size_t i = 0; i < instance.origin.size(); ++i)
    by_symbol[instance.origin[i].origin.function] = i;

  std::vector<FunctionDefinition> out;
  for (const FunctionSymbol &fn : original.functions) {
    std::string symbol = fn.name;
    auto renamed = trace.canonical_of.find(fn.name);
    if (renamed != trace.canonical_of.end())
      symbol = renamed->second;

    auto found = by_symbol.find(symbol);
    if (found == by_symbol.end())
      throw std::logic_error("lift: no existential word for function '" +
                             fn.name + "'");
    const DqfExistential &origin = instance.origin[found->second];
    const ExistentialGroup &group = instance.existentials[found->second];

    // First occurrence of each signature argument names the parameter
    // position that reads it (duplicated arguments collapse to the first).
    std::map<std::string, size_t> first_pos;
    const std::vector<std::string> &sig = origin.origin.callsign.args;
    for (size_t k = 0; k < sig.size(); ++k)
      first_pos.emplace(sig[k], k);

    auto atom_for = [&](int dep_bit) -> TermPtr {
      auto rev = instance.bitmap.reverse.find(dep_bit);
      if (rev == instance.bitmap.reverse.end())
        throw std::logic_error("lift: dependency bit " +
                               std::to_string(dep_bit) + " has no word");
      const auto &[word, index] = rev->second;
      auto pos = first_pos.find(word);
      if (pos == first_pos.end())
        throw std::logic_error("lift: dependency '" + word +
                               "' is not an argument of '" + fn.name + "'");
      const Variable &param = fn.params.at(pos->second);
      if (param.sort.is_bool())
        return mk_var(param.name, param.sort);
      TermPtr bit = mk_extract(index, index, mk_var(param.name, param.sort));
      return mk_eq(std::move(bit), mk_const(BvValue::from_uint(1, 1)));
    };

    std::vector<TermPtr> bool_bits;
    for (int bit : group.bits) {
      auto fit = solution.bits.find(bit);
      if (fit == solution.bits.end())
        throw std::logic_error("lift: no function for existential bit " +
                               std::to_string(bit));
      const HenkinFunction &hf = fit->second;
      std::vector<TermPtr> atoms;
      for (int dep : hf.deps)
        atoms.push_back(atom_for(dep));
      bool_bits.push_back(FunctionLifter(hf, std::move(atoms)).build());
    }

    TermPtr body;
    if (fn.return_sort.is_bool()) {
      body = bool_bits.at(0);
    } else {
      TermPtr one = mk_const(BvValue::from_uint(1, 1));
      TermPtr zero = mk_const(BvValue::from_uint(1, 0));
      std::vector<TermPtr> bv_bits;
      for (const TermPtr &b : bool_bits)
        bv_bits.push_back(mk_app(Op::Ite, {b, one, zero}));
      body = bv_bits.back();
      for (size_t j = bv_bits.size() - 1; j-- > 0;)
        body = mk_app(Op::Concat, {body, bv_bits[j]});
    }

    FunctionDefinition def;
    def.name = fn.name;
    def.params = fn.params;
    def.return_sort = fn.return_sort;
    def.body = simplify_term(body);
    out.push_back(std::move(def));
  }
  return out;
}

namespace {

TermPtr inline_definitions(
    const TermPtr &t,
    const std::map<std::string, const FunctionDefinition *> &defs) {
  switch (t->kind) {
  case Term::Kind::Const:
  case Term::Kind::Var:
    return t;
  case Term::Kind::App: {
    std::vector<TermPtr> args;
    for (const TermPtr &a : t->args)
      args.push_back(inline_definitions(a, defs));
    return rebuild(t, std::move(args));
  }
  case Term::Kind::SynthApp:
    break;
  }
  auto it = defs.find(t->name);
  if (it == defs.end())
    throw std::logic_error("no definition given for function '" + t->name +
                           "'");
  const FunctionDefinition &def = *it->second;
  if (def.params.size() != t->args.size())
    throw std::logic_error("definition of '" + t->name +
                           "' has the wrong arity");
  std::map<std::string, TermPtr> binding;
  for (size_t i = 0; i < def.params.size(); ++i)
    binding[def.params[i].name] = inline_definitions(t->args[i], defs);
  return inline_definitions(substitute(def.body, binding), defs);
}

} // namespace

LiftedVerify verify_lifted(const SynthProblem &original,
                           const std::vector<FunctionDefinition> &definitions) {
  std::map<std::string, const FunctionDefinition *> index;
  for (const FunctionDefinition &d : definitions) {
    if (!index.emplace(d.name, &d).second)
      throw std::invalid_argument("duplicate definition for '" + d.name + "'");
  }
  for (const FunctionSymbol &fn : original.functions) {
    if (!index.count(fn.name))
      throw std::logic_error("no definition given for function '" + fn.name +
                             "'");
  }

  TermPtr spec = inline_definitions(conjoin(original.constraints), index);

  DqfFormula negated;
  negated.universals = original.inputs;
  negated.body = mk_not(spec);
  DqbfInstance inst = blast(negated);
  SatOutcome out = sat_solve(inst.num_vars, inst.clauses);

  LiftedVerify result;
  if (out.result == SatResult::Unsat) {
    result.valid = true;
    return result;
  }
  result.valid = false;
  for (const Variable &v : original.inputs) {
    const BitMapEntry *entry = inst.bitmap.find(v.name);
    BvValue val = BvValue::from_uint(v.sort.bit_count(), 0);
    if (entry != nullptr) {
      for (uint32_t k = 0; k < entry->bits.size(); ++k)
        val.set_bit(k, out.model[static_cast<size_t>(entry->bits[k])]);
    }
    result.counterexample.emplace(v.name, val);
  }
  return result;
}

} // namespace dqsynth
