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

#include "dqsynth/term.hpp"

#include <stdexcept>

namespace dqsynth {

const char *op_name(Op op) {
  switch (op) {
  case Op::Not: return "not";
  case Op::And: return "and";
  case Op::Or: return "or";
  case Op::Xor: return "xor";
  case Op::Implies: return "=>";
  case Op::Eq: return "=";
  case Op::Ite: return "ite";
  case Op::BvNot: return "bvnot";
  case Op::BvNeg: return "bvneg";
  case Op::BvAnd: return "bvand";
  case Op::BvOr: return "bvor";
  case Op::BvXor: return "bvxor";
  case Op::BvAdd: return "bvadd";
  case Op::BvSub: return "bvsub";
  case Op::BvMul: return "bvmul";
  case Op::BvUdiv: return "bvudiv";
  case Op::BvUrem: return "bvurem";
  case Op::BvShl: return "bvshl";
  case Op::BvLshr: return "bvlshr";
  case Op::BvAshr: return "bvashr";
  case Op::Concat: return "concat";
  case Op::Extract: return "extract";
  case Op::BvUlt: return "bvult";
  case Op::BvUle: return "bvule";
  case Op::BvUgt: return "bvugt";
  case Op::BvUge: return "bvuge";
  case Op::BvSlt: return "bvslt";
  case Op::BvSle: return "bvsle";
  case Op::BvSgt: return "bvsgt";
  case Op::BvSge: return "bvsge";
  }
  return "?";
}

bool Term::bool_value() const {
  if (kind != Kind::Const || !sort.is_bool())
    throw std::logic_error("bool_value on a non-Bool term");
  return value.bit(0);
}

TermPtr mk_var(std::string name, Sort sort) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->sort = sort;
  t->name = std::move(name);
  return t;
}

TermPtr mk_const(BvValue value) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->sort = Sort::bitvec(value.width());
  t->value = std::move(value);
  return t;
}

TermPtr mk_bool_const(bool value) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->sort = Sort::boolean();
  t->value = BvValue::from_uint(1, value ? 1 : 0);
  return t;
}

TermPtr mk_true() { return mk_bool_const(true); }
TermPtr mk_false() { return mk_bool_const(false); }

namespace {

[[noreturn]] void signature_error(Op op, const std::string &detail) {
  throw std::invalid_argument(std::string("operator '") + op_name(op) +
                              "': " + detail);
}

void expect_arity(Op op, const std::vector<TermPtr> &args, size_t n) {
  if (args.size() != n)
    signature_error(op, "expects " + std::to_string(n) + " operands, got " +
                            std::to_string(args.size()));
}

void expect_bool(Op op, const TermPtr &a) {
  if (!a->sort.is_bool())
    signature_error(op, "operand must be Bool, got " + a->sort.str());
}

void expect_bitvec(Op op, const TermPtr &a) {
  if (!a->sort.is_bitvec())
    signature_error(op, "operand must be a bitvector, got " + a->sort.str());
}

void expect_same_sort(Op op, const TermPtr &a, const TermPtr &b) {
  if (!(a->sort == b->sort))
    signature_error(op, "operand sorts differ: " + a->sort.str() + " vs " +
                            b->sort.str());
}

} // namespace

TermPtr mk_app(Op op, std::vector<TermPtr> args) {
  Sort sort = Sort::boolean();
  switch (op) {
  case Op::Not:
    expect_arity(op, args, 1);
    expect_bool(op, args[0]);
    break;
  case Op::And:
  case Op::Or:
  case Op::Xor:
  case Op::Implies:
    expect_arity(op, args, 2);
    expect_bool(op, args[0]);
    expect_bool(op, args[1]);
    break;
  case Op::Eq:
    expect_arity(op, args, 2);
    expect_same_sort(op, args[0], args[1]);
    break;
  case Op::Ite:
    expect_arity(op, args, 3);
    expect_bool(op, args[0]);
    expect_same_sort(op, args[1], args[2]);
    sort = args[1]->sort;
    break;
  case Op::BvNot:
  case Op::BvNeg:
    expect_arity(op, args, 1);
    expect_bitvec(op, args[0]);
    sort = args[0]->sort;
    break;
  case Op::BvAnd:
  case Op::BvOr:
  case Op::BvXor:
  case Op::BvAdd:
  case Op::BvSub:
  case Op::BvMul:
  case Op::BvUdiv:
  case Op::BvUrem:
  case Op::BvShl:
  case Op::BvLshr:
  case Op::BvAshr:
    expect_arity(op, args, 2);
    expect_bitvec(op, args[0]);
    expect_same_sort(op, args[0], args[1]);
    sort = args[0]->sort;
    break;
  case Op::Concat:
    expect_arity(op, args, 2);
    expect_bitvec(op, args[0]);
    expect_bitvec(op, args[1]);
    sort = Sort::bitvec(args[0]->sort.width() + args[1]->sort.width());
    break;
  case Op::Extract:
    signature_error(op, "use mk_extract");
  case Op::BvUlt:
  case Op::BvUle:
  case Op::BvUgt:
  case Op::BvUge:
  case Op::BvSlt:
  case Op::BvSle:
  case Op::BvSgt:
  case Op::BvSge:
    expect_arity(op, args, 2);
    expect_bitvec(op, args[0]);
    expect_same_sort(op, args[0], args[1]);
    break;
  }
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->sort = sort;
  t->op = op;
  t->args = std::move(args);
  return t;
}

TermPtr mk_extract(uint32_t hi, uint32_t lo, TermPtr arg) {
  expect_bitvec(Op::Extract, arg);
  uint32_t w = arg->sort.width();
  if (hi >= w || lo > hi)
    signature_error(Op::Extract,
                    "indices [" + std::to_string(hi) + ":" +
                        std::to_string(lo) + "] out of range for width " +
                        std::to_string(w));
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->sort = Sort::bitvec(hi - lo + 1);
  t->op = Op::Extract;
  t->hi = hi;
  t->lo = lo;
  t->args = {std::move(arg)};
  return t;
}

TermPtr mk_synth_app(std::string name, Sort return_sort,
                     std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::SynthApp;
  t->sort = return_sort;
  t->name = std::move(name);
  t->args = std::move(args);
  return t;
}

bool structurally_equal(const TermPtr &a, const TermPtr &b) {
  if (a.get() == b.get())
    return true;
  if (a->kind != b->kind || !(a->sort == b->sort))
    return false;
  switch (a->kind) {
  case Term::Kind::Const:
    return a->value == b->value;
  case Term::Kind::Var:
    return a->name == b->name;
  case Term::Kind::SynthApp:
    if (a->name != b->name)
      return false;
    break;
  case Term::Kind::App:
    if (a->op != b->op || a->hi != b->hi || a->lo != b->lo)
      return false;
    break;
  }
  if (a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i]))
      return false;
  return true;
}

size_t node_count(const TermPtr &t) {
  size_t n = 1;
  for (const auto &a : t->args)
    n += node_count(a);
  return n;
}

TermPtr substitute(const TermPtr &t, const std::map<std::string, TermPtr> &m) {
  switch (t->kind) {
  case Term::Kind::Const:
    return t;
  case Term::Kind::Var: {
    auto it = m.find(t->name);
    return it == m.end() ? t : it->second;
  }
  case Term::Kind::App:
  case Term::Kind::SynthApp: {
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto &a : t->args) {
      args.push_back(substitute(a, m));
      changed = changed || args.back().get() != a.get();
    }
    if (!changed)
      return t;
    if (t->kind == Term::Kind::SynthApp)
      return mk_synth_app(t->name, t->sort, std::move(args));
    if (t->op == Op::Extract)
      return mk_extract(t->hi, t->lo, std::move(args[0]));
    return mk_app(t->op, std::move(args));
  }
  }
  throw std::logic_error("unreachable");
}

TermPtr conjoin(const std::vector<TermPtr> &conjuncts) {
  if (conjuncts.empty())
    return mk_true();
  TermPtr acc = conjuncts[0];
  for (size_t i = 1; i < conjuncts.size(); ++i)
    acc = mk_and(acc, conjuncts[i]);
  return acc;
}

} // namespace dqsynth
