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

#include "dqsynth/bitblast.hpp"

#include <cassert>
#include <stdexcept>

#include "dqsynth/term.hpp"

namespace dqsynth {

const BitMapEntry *BitMap::find(const std::string &name) const {
  for (const auto &e : entries) {
    if (e.name == name)
      return &e;
  }
  return nullptr;
}

void BitMap::add(const std::string &name, Sort sort,
                 const std::vector<int> &bits) {
  entries.push_back({name, sort, bits});
  for (uint32_t k = 0; k < bits.size(); ++k)
    reverse.emplace(bits[k], std::make_pair(name, k));
}

namespace {

// A propositional wire: a constant or a literal over an allocated variable.
class Bit {
public:
  static Bit constant(bool v) { return Bit(v ? 1 : 0, true); }
  static Bit literal(int lit) { return Bit(lit, false); }

  bool is_const() const { return is_const_; }
  bool const_value() const { return code_ != 0; }
  int lit() const { return code_; }

  Bit operator~() const {
    return is_const_ ? Bit(code_ ^ 1, true) : Bit(-code_, false);
  }
  bool same(const Bit &o) const {
    return is_const_ == o.is_const_ && code_ == o.code_;
  }

private:
  Bit(int code, bool is_const) : code_(code), is_const_(is_const) {}
  int code_;
  bool is_const_;
};

using Word = std::vector<Bit>; // LSB first

class Blaster {
public:
  explicit Blaster(const DqfFormula &formula) : formula_(formula) {}

  DqbfInstance run() {
    for (const Variable &v : formula_.universals) {
      std::vector<int> ids = alloc_word(v.sort.bit_count());
      inst_.bitmap.add(v.name, v.sort, ids);
      var_bits_[v.name] = ids;
      inst_.universal_bits.insert(inst_.universal_bits.end(), ids.begin(),
                                  ids.end());
    }
    for (const DqfExistential &e : formula_.existentials) {
      std::vector<int> ids = alloc_word(e.var.sort.bit_count());
      inst_.bitmap.add(e.var.name, e.var.sort, ids);
      var_bits_[e.var.name] = ids;
      ExistentialGroup group;
      group.source = e.var.name;
      group.bits = ids;
      for (const std::string &dep : e.deps) {
        const std::vector<int> &db = var_bits_.at(dep);
        group.deps.insert(group.deps.end(), db.begin(), db.end());
      }
      inst_.existentials.push_back(std::move(group));
    }
    inst_.origin = formula_.existentials;

    Word root = encode(formula_.body);
    assert(root.size() == 1);
    emit_root(root[0]);
    return std::move(inst_);
  }

private:
  // --- variable allocation ----------------------------------------------

  int alloc_var() { return ++inst_.num_vars; }

  std::vector<int> alloc_word(uint32_t n) {
    std::vector<int> ids(n);
    for (uint32_t i = 0; i < n; ++i)
      ids[i] = alloc_var();
    return ids;
  }

  int alloc_aux() {
    int id = alloc_var();
    inst_.aux_bits.push_back(id);
    return id;
  }

  void clause(std::vector<int> lits) { inst_.clauses.push_back(std::move(lits)); }

  // --- gate library (constant-folding, fully bi-implicational) -----------

  Bit gate_and(Bit a, Bit b) {
    if (a.is_const())
      return a.const_value() ? b : Bit::constant(false);
    if (b.is_const())
      return b.const_value() ? a : Bit::constant(false);
    if (a.same(b))
      return a;
    if (a.same(~b))
      return Bit::constant(false);
    int g = alloc_aux();
    clause({-g, a.lit()});
    clause({-g, b.lit()});
    clause({g, -a.lit(), -b.lit()});
    return Bit::literal(g);
  }

  Bit gate_or(Bit a, Bit b) { return ~gate_and(~a, ~b); }

  Bit gate_xor(Bit a, Bit b) {
    if (a.is_const())
      return a.const_value() ? ~b : b;
    if (b.is_const())
      return b.const_value() ? ~a : a;
    if (a.same(b))
      return Bit::constant(false);
    if (a.same(~b))
      return Bit::constant(true);
    int g = alloc_aux();
    clause({-g, -a.lit(), -b.lit()});
    clause({-g, a.lit(), b.lit()});
    clause({g, -a.lit(), b.lit()});
    clause({g, a.lit(), -b.lit()});
    return Bit::literal(g);
  }

  Bit gate_iff(Bit a, Bit b) { return ~gate_xor(a, b); }

  Bit gate_ite(Bit c, Bit t, Bit e) {
    if (c.is_const())
      return c.const_value() ? t : e;
    if (t.same(e))
      return t;
    if (t.is_const() && e.is_const()) // t != e here
      return t.const_value() ? c : ~c;
    if (t.is_const())
      return t.const_value() ? gate_or(c, e) : gate_and(~c, e);
    if (e.is_const())
      return e.const_value() ? gate_or(~c, t) : gate_and(c, t);
    if (t.same(~e))
      return gate_iff(c, t);
    if (c.same(t))
      return gate_or(c, e); // ite(c, c, e)
    if (c.same(~t))
      return gate_and(~c, e); // ite(c, !c, e)
    if (c.same(e))
      return gate_and(c, t); // ite(c, t, c)
    if (c.same(~e))
      return gate_or(~c, t); // ite(c, t, !c)
    int g = alloc_aux();
    clause({-g, -c.lit(), t.lit()});
    clause({-g, c.lit(), e.lit()});
    clause({g, -c.lit(), -t.lit()});
    clause({g, c.lit(), -e.lit()});
    return Bit::literal(g);
  }

  // --- word operations ----------------------------------------------------

  Word word_const(const BvValue &v) {
    Word w;
    for (uint32_t i = 0; i < v.width(); ++i)
      w.push_back(Bit::constant(v.bit(i)));
    return w;
  }

  Word word_not(Word a) {
    for (Bit &b : a)
      b = ~b;
    return a;
  }

  Word word_binary_map(const Word &a, const Word &b, Bit (Blaster::*g)(Bit, Bit)) {
    Word r;
    for (size_t i = 0; i < a.size(); ++i)
      r.push_back((this->*g)(a[i], b[i]));
    return r;
  }

  // Ripple-carry sum of a + b + carry_in, truncated to |a| bits.
  Word word_add(const Word &a, const Word &b, Bit carry) {
    Word r;
    for (size_t i = 0; i < a.size(); ++i) {
      Bit axb = gate_xor(a[i], b[i]);
      r.push_back(gate_xor(axb, carry));
      if (i + 1 < a.size()) {
        Bit c1 = gate_and(a[i], b[i]);
        Bit c2 = gate_and(axb, carry);
        carry = gate_or(c1, c2);
      }
    }
    return r;
  }

  Word word_sub(const Word &a, const Word &b) {
    return word_add(a, word_not(b), Bit::constant(true));
  }

  Word word_neg(const Word &a) {
    Word zero(a.size(), Bit::constant(false));
    return word_sub(zero, a);
  }

  // Shift-and-add multiplication, truncated to |a| bits.
  Word word_mul(const Word &a, const Word &b) {
    size_t w = a.size();
    Word acc(w, Bit::constant(false));
    for (size_t i = 0; i < w; ++i) {
      Word addend(w, Bit::constant(false));
      for (size_t j = i; j < w; ++j)
        addend[j] = gate_and(b[i], a[j - i]);
      acc = word_add(acc, addend, Bit::constant(false));
    }
    return acc;
  }

  Word word_ite(Bit c, const Word &t, const Word &e) {
    Word r;
    for (size_t i = 0; i < t.size(); ++i)
      r.push_back(gate_ite(c, t[i], e[i]));
    return r;
  }

  // Shift left by a fixed amount, filling with `fill`.
  static Word fixed_shl(const Word &a, size_t k, Bit fill) {
    Word r(a.size(), fill);
    for (size_t i = k; i < a.size(); ++i)
      r[i] = a[i - k];
    return r;
  }

  // Shift right by a fixed amount, filling with `fill`.
  static Word fixed_shr(const Word &a, size_t k, Bit fill) {
    Word r(a.size(), fill);
    for (size_t i = 0; i + k < a.size(); ++i)
      r[i] = a[i + k];
    return r;
  }

  // Barrel shifter. dir_left selects the direction; fill supplies the bit
  // shifted in (sign bit for arithmetic right shift). Amounts >= width
  // produce a word of fill bits, matching the word-level semantics.
  Word word_shift(const Word &a, const Word &amount, bool dir_left, Bit fill) {
    size_t w = a.size();
    size_t stages = 0;
    while ((size_t(1) << stages) < w)
      ++stages;
    Word r = a;
    for (size_t k = 0; k < stages; ++k) {
      size_t step = size_t(1) << k;
      Word shifted =
          dir_left ? fixed_shl(r, step, fill) : fixed_shr(r, step, fill);
      r = word_ite(amount[k], shifted, r);
    }
    // Any set amount bit at position >= stages overshoots the width.
    Bit over = Bit::constant(false);
    for (size_t k = stages; k < amount.size(); ++k)
      over = gate_or(over, amount[k]);
    if (!over.is_const() || over.const_value()) {
      Word full(w, fill);
      r = word_ite(over, full, r);
    }
    return r;
  }

  // Unsigned comparison a < b via an MSB-first ripple.
  Bit word_ult(const Word &a, const Word &b) {
    Bit lt = Bit::constant(false);
    Bit eq = Bit::constant(true);
    for (size_t i = a.size(); i-- > 0;) {
      Bit ai_lt_bi = gate_and(~a[i], b[i]);
      lt = gate_or(lt, gate_and(eq, ai_lt_bi));
      eq = gate_and(eq, gate_iff(a[i], b[i]));
    }
    return lt;
  }

  Bit word_ule(const Word &a, const Word &b) { return ~word_ult(b, a); }

  // Signed comparison = unsigned comparison with the sign bits flipped.
  static Word flip_msb(Word a) {
    a.back() = ~a.back();
    return a;
  }
  Bit word_slt(const Word &a, const Word &b) {
    return word_ult(flip_msb(a), flip_msb(b));
  }
  Bit word_sle(const Word &a, const Word &b) {
    return word_ule(flip_msb(a), flip_msb(b));
  }

  Bit word_eq(const Word &a, const Word &b) {
    Bit r = Bit::constant(true);
    for (size_t i = 0; i < a.size(); ++i)
      r = gate_and(r, gate_iff(a[i], b[i]));
    return r;
  }

  static Word zero_extend(Word a, size_t n) {
    while (a.size() < n)
      a.push_back(Bit::constant(false));
    return a;
  }

  // Restoring long division. Quotient and remainder of width w; the
  // divide-by-zero results follow the word-level totalization: quotient all
  // ones, remainder equal to the dividend.
  void word_divmod(const Word &a, const Word &b, Word &quot, Word &rem) {
    size_t w = a.size();
    Word bx = zero_extend(b, w + 1);
    Word r(w + 1, Bit::constant(false));
    quot.assign(w, Bit::constant(false));
    for (size_t i = w; i-- > 0;) {
      // r = (r << 1) | a[i]; the invariant r < b keeps r within w bits, so
      // the shifted value fits the w+1 bit register.
      for (size_t j = w; j > 0; --j)
        r[j] = r[j - 1];
      r[0] = a[i];
      Bit ge = word_ule(bx, r);
      Word diff = word_sub(r, bx);
      r = word_ite(ge, diff, r);
      quot[i] = ge;
    }
    Bit bzero = word_eq(b, Word(b.size(), Bit::constant(false)));
    Word ones(w, Bit::constant(true));
    quot = word_ite(bzero, ones, quot);
    Word rw(r.begin(), r.begin() + static_cast<long>(w));
    rem = word_ite(bzero, a, rw);
  }

  // --- term encoding -------------------------------------------------------

  Word encode(const TermPtr &t) {
    auto it = cache_.find(t.get());
    if (it != cache_.end())
      return it->second;
    Word w = encode_uncached(t);
    cache_.emplace(t.get(), w);
    return w;
  }

  Word encode_uncached(const TermPtr &t) {
    switch (t->kind) {
    case Term::Kind::Const:
      if (t->sort.is_bool())
        return {Bit::constant(t->value.width() > 0 && t->value.bit(0))};
      return word_const(t->value);
    case Term::Kind::Var: {
      auto it = var_bits_.find(t->name);
      if (it == var_bits_.end())
        throw std::logic_error("bit-blast: unbound variable '" + t->name + "'");
      Word w;
      for (int id : it->second)
        w.push_back(Bit::literal(id));
      return w;
    }
    case Term::Kind::SynthApp:
      throw std::logic_error(
          "bit-blast: residual synthesis application '" + t->name + "'");
    case Term::Kind::App:
      break;
    }

    const auto &args = t->args;
    switch (t->op) {
    case Op::Not:
      return {~encode(args[0])[0]};
    case Op::And: {
      Bit r = Bit::constant(true);
      for (const TermPtr &a : args)
        r = gate_and(r, encode(a)[0]);
      return {r};
    }
    case Op::Or: {
      Bit r = Bit::constant(false);
      for (const TermPtr &a : args)
        r = gate_or(r, encode(a)[0]);
      return {r};
    }
    case Op::Xor: {
      Bit r = Bit::constant(false);
      for (const TermPtr &a : args)
        r = gate_xor(r, encode(a)[0]);
      return {r};
    }
    case Op::Implies:
      return {gate_or(~encode(args[0])[0], encode(args[1])[0])};
    case Op::Eq:
      return {word_eq(encode(args[0]), encode(args[1]))};
    case Op::Ite: {
      Bit c = encode(args[0])[0];
      return word_ite(c, encode(args[1]), encode(args[2]));
    }
    case Op::BvNot:
      return word_not(encode(args[0]));
    case Op::BvNeg:
      return word_neg(encode(args[0]));
    case Op::BvAnd:
      return word_binary_map(encode(args[0]), encode(args[1]),
                             &Blaster::gate_and);
    case Op::BvOr:
      return word_binary_map(encode(args[0]), encode(args[1]),
                             &Blaster::gate_or);
    case Op::BvXor:
      return word_binary_map(encode(args[0]), encode(args[1]),
                             &Blaster::gate_xor);
    case Op::BvAdd:
      return word_add(encode(args[0]), encode(args[1]), Bit::constant(false));
    case Op::BvSub:
      return word_sub(encode(args[0]), encode(args[1]));
    case Op::BvMul:
      return word_mul(encode(args[0]), encode(args[1]));
    case Op::BvUdiv: {
      Word q, r;
      word_divmod(encode(args[0]), encode(args[1]), q, r);
      return q;
    }
    case Op::BvUrem: {
      Word q, r;
      word_divmod(encode(args[0]), encode(args[1]), q, r);
      return r;
    }
    case Op::BvShl:
      return word_shift(encode(args[0]), encode(args[1]), /*dir_left=*/true,
                        Bit::constant(false));
    case Op::BvLshr:
      return word_shift(encode(args[0]), encode(args[1]), /*dir_left=*/false,
                        Bit::constant(false));
    case Op::BvAshr: {
      Word a = encode(args[0]);
      return word_shift(a, encode(args[1]), /*dir_left=*/false, a.back());
    }
    case Op::Concat: {
      Word hi = encode(args[0]);
      Word lo = encode(args[1]);
      lo.insert(lo.end(), hi.begin(), hi.end());
      return lo;
    }
    case Op::Extract: {
      Word a = encode(args[0]);
      return Word(a.begin() + t->lo, a.begin() + t->hi + 1);
    }
    case Op::BvUlt:
      return {word_ult(encode(args[0]), encode(args[1]))};
    case Op::BvUle:
      return {word_ule(encode(args[0]), encode(args[1]))};
    case Op::BvUgt:
      return {word_ult(encode(args[1]), encode(args[0]))};
    case Op::BvUge:
      return {word_ule(encode(args[1]), encode(args[0]))};
    case Op::BvSlt:
      return {word_slt(encode(args[0]), encode(args[1]))};
    case Op::BvSle:
      return {word_sle(encode(args[0]), encode(args[1]))};
    case Op::BvSgt:
      return {word_slt(encode(args[1]), encode(args[0]))};
    case Op::BvSge:
      return {word_sle(encode(args[1]), encode(args[0]))};
    }
    throw std::logic_error("bit-blast: unhandled operator");
  }

  void emit_root(Bit root) {
    if (root.is_const()) {
      int a = alloc_aux();
      clause({a});
      if (!root.const_value())
        clause({-a});
      return;
    }
    clause({root.lit()});
  }

  const DqfFormula &formula_;
  DqbfInstance inst_;
  std::map<const Term *, Word> cache_;
  std::map<std::string, std::vector<int>> var_bits_;
};

} // namespace

DqbfInstance blast(const DqfFormula &formula) {
  return Blaster(formula).run();
}

ClauseStats clause_stats(const DqbfInstance &instance) {
  ClauseStats s;
  s.vars = instance.num_vars;
  s.clauses = static_cast<int>(instance.clauses.size());
  s.aux = static_cast<int>(instance.aux_bits.size());
  return s;
}

} // namespace dqsynth
