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

#ifndef DQSYNTH_TERM_HPP
#define DQSYNTH_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dqsynth/bv.hpp"
#include "dqsynth/sorts.hpp"

namespace dqsynth {

enum class Op : uint8_t {
  // core
  Not,
  And,
  Or,
  Xor,
  Implies,
  Eq,
  Ite,
  // bitvector
  BvNot,
  BvNeg,
  BvAnd,
  BvOr,
  BvXor,
  BvAdd,
  BvSub,
  BvMul,
  BvUdiv,
  BvUrem,
  BvShl,
  BvLshr,
  BvAshr,
  Concat,
  Extract,
  BvUlt,
  BvUle,
  BvUgt,
  BvUge,
  BvSlt,
  BvSle,
  BvSgt,
  BvSge,
};

const char *op_name(Op op);

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable, sort-correct term node. Built through the mk_* factories which
// enforce the theory signature; shareable across threads after construction.
class Term {
public:
  enum class Kind : uint8_t { Const, Var, App, SynthApp };

  Kind kind = Kind::Const;
  Sort sort = Sort::boolean();
  Op op = Op::Not;          // App only
  uint32_t hi = 0, lo = 0;  // Extract only
  std::string name;         // Var / SynthApp
  BvValue value;            // Const (Bool constants stored as width 1)
  std::vector<TermPtr> args;

  bool is_var() const { return kind == Kind::Var; }
  bool is_const() const { return kind == Kind::Const; }
  bool is_app(Op o) const { return kind == Kind::App && op == o; }
  bool bool_value() const; // Const of sort Bool
};

TermPtr mk_var(std::string name, Sort sort);
TermPtr mk_const(BvValue value);
TermPtr mk_bool_const(bool value);
TermPtr mk_true();
TermPtr mk_false();
// Sort-checked application; throws std::invalid_argument on a signature
// violation. Extract must go through mk_extract.
TermPtr mk_app(Op op, std::vector<TermPtr> args);
TermPtr mk_extract(uint32_t hi, uint32_t lo, TermPtr arg);
// Unchecked against a declaration; callers match args to the declared
// parameter sorts (the parser and passes know them).
TermPtr mk_synth_app(std::string name, Sort return_sort,
                     std::vector<TermPtr> args);

inline TermPtr mk_and(TermPtr a, TermPtr b) {
  return mk_app(Op::And, {std::move(a), std::move(b)});
}
inline TermPtr mk_not(TermPtr a) { return mk_app(Op::Not, {std::move(a)}); }
inline TermPtr mk_eq(TermPtr a, TermPtr b) {
  return mk_app(Op::Eq, {std::move(a), std::move(b)});
}

bool structurally_equal(const TermPtr &a, const TermPtr &b);
// Tree node count (shared subterms counted per occurrence).
size_t node_count(const TermPtr &t);
// Capture-free substitution of variables by terms (the AST is binder-free).
TermPtr substitute(const TermPtr &t, const std::map<std::string, TermPtr> &m);
// Left-assoc conjunction of terms; empty list yields `true`.
TermPtr conjoin(const std::vector<TermPtr> &conjuncts);

} // namespace dqsynth

#endif
