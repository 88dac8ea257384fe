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

#include "dqsynth/eval.hpp"

#include <stdexcept>

namespace dqsynth {

namespace {

BvValue bool_bv(bool b) { return BvValue::from_uint(1, b ? 1 : 0); }

} // namespace

BvValue FuncInterp::apply(const std::vector<BvValue> &args) const {
  if (args.size() != params.size())
    throw std::logic_error("interpretation applied to wrong arity");
  uint64_t index = 0;
  uint32_t total = 0;
  for (size_t i = 0; i < args.size(); ++i) {
    uint32_t w = args[i].width();
    if (w != params[i].sort.bit_count())
      throw std::logic_error("interpretation applied to wrong widths");
    index = (index << w) | args[i].to_uint();
    total += w;
  }
  if (table.size() != (uint64_t{1} << total) || index >= table.size())
    throw std::logic_error("interpretation table has wrong size");
  return table[index];
}

BvValue eval_term(const TermPtr &term, const Env &env,
                  const FuncInterps &funcs) {
  switch (term->kind) {
  case Term::Kind::Const:
    return term->value;
  case Term::Kind::Var: {
    auto it = env.find(term->name);
    if (it == env.end())
      throw std::logic_error("unbound variable '" + term->name + "'");
    if (it->second.width() != term->sort.bit_count())
      throw std::logic_error("environment width mismatch for '" + term->name +
                             "'");
    return it->second;
  }
  case Term::Kind::SynthApp: {
    auto it = funcs.find(term->name);
    if (it == funcs.end())
      throw std::logic_error("no interpretation for '" + term->name + "'");
    std::vector<BvValue> args;
    args.reserve(term->args.size());
    for (const auto &a : term->args)
      args.push_back(eval_term(a, env, funcs));
    return it->second.apply(args);
  }
  case Term::Kind::App:
    break;
  }

  // short-circuit ite so both branches need not be evaluated on huge terms
  if (term->op == Op::Ite) {
    BvValue c = eval_term(term->args[0], env, funcs);
    return eval_term(term->args[c.bit(0) ? 1 : 2], env, funcs);
  }

  std::vector<BvValue> a;
  a.reserve(term->args.size());
  for (const auto &arg : term->args)
    a.push_back(eval_term(arg, env, funcs));

  switch (term->op) {
  case Op::Not:
    return bool_bv(!a[0].bit(0));
  case Op::And:
    return bool_bv(a[0].bit(0) && a[1].bit(0));
  case Op::Or:
    return bool_bv(a[0].bit(0) || a[1].bit(0));
  case Op::Xor:
    return bool_bv(a[0].bit(0) != a[1].bit(0));
  case Op::Implies:
    return bool_bv(!a[0].bit(0) || a[1].bit(0));
  case Op::Eq:
    return bool_bv(a[0] == a[1]);
  case Op::BvNot:
    return bv_not(a[0]);
  case Op::BvNeg:
    return bv_neg(a[0]);
  case Op::BvAnd:
    return bv_and(a[0], a[1]);
  case Op::BvOr:
    return bv_or(a[0], a[1]);
  case Op::BvXor:
    return bv_xor(a[0], a[1]);
  case Op::BvAdd:
    return bv_add(a[0], a[1]);
  case Op::BvSub:
    return bv_sub(a[0], a[1]);
  case Op::BvMul:
    return bv_mul(a[0], a[1]);
  case Op::BvUdiv:
    return bv_udiv(a[0], a[1]);
  case Op::BvUrem:
    return bv_urem(a[0], a[1]);
  case Op::BvShl:
    return bv_shl(a[0], a[1]);
  case Op::BvLshr:
    return bv_lshr(a[0], a[1]);
  case Op::BvAshr:
    return bv_ashr(a[0], a[1]);
  case Op::Concat:
    return bv_concat(a[0], a[1]);
  case Op::Extract:
    return bv_extract(a[0], term->hi, term->lo);
  case Op::BvUlt:
    return bool_bv(bv_ult(a[0], a[1]));
  case Op::BvUle:
    return bool_bv(bv_ule(a[0], a[1]));
  case Op::BvUgt:
    return bool_bv(bv_ult(a[1], a[0]));
  case Op::BvUge:
    return bool_bv(bv_ule(a[1], a[0]));
  case Op::BvSlt:
    return bool_bv(bv_slt(a[0], a[1]));
  case Op::BvSle:
    return bool_bv(bv_sle(a[0], a[1]));
  case Op::BvSgt:
    return bool_bv(bv_slt(a[1], a[0]));
  case Op::BvSge:
    return bool_bv(bv_sle(a[1], a[0]));
  case Op::Ite:
    break; // handled above
  }
  throw std::logic_error("eval_term: unhandled operator");
}

BvValue eval_definition(const FunctionDefinition &def,
                        const std::vector<BvValue> &args) {
  if (args.size() != def.params.size())
    throw std::logic_error("definition applied to wrong arity");
  Env env;
  for (size_t i = 0; i < args.size(); ++i)
    env[def.params[i].name] = args[i];
  return eval_term(def.body, env);
}

} // namespace dqsynth
