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

#include "dqsynth/printer.hpp"

#include <sstream>

namespace dqsynth {

namespace {

void print_term_rec(std::ostream &os, const TermPtr &term) {
  switch (term->kind) {
  case Term::Kind::Const:
    if (term->sort.is_bool())
      os << (term->value.bit(0) ? "true" : "false");
    else
      os << "#b" << term->value.to_binary();
    return;
  case Term::Kind::Var:
    os << term->name;
    return;
  case Term::Kind::SynthApp:
    if (term->args.empty()) {
      os << term->name;
      return;
    }
    os << '(' << term->name;
    for (const auto &a : term->args) {
      os << ' ';
      print_term_rec(os, a);
    }
    os << ')';
    return;
  case Term::Kind::App:
    if (term->op == Op::Extract) {
      os << "((_ extract " << term->hi << ' ' << term->lo << ") ";
      print_term_rec(os, term->args[0]);
      os << ')';
      return;
    }
    os << '(' << op_name(term->op);
    for (const auto &a : term->args) {
      os << ' ';
      print_term_rec(os, a);
    }
    os << ')';
    return;
  }
}

void print_params(std::ostream &os, const std::vector<Variable> &params) {
  os << '(';
  for (size_t i = 0; i < params.size(); ++i) {
    if (i)
      os << ' ';
    os << '(' << params[i].name << ' ' << print_sort(params[i].sort) << ')';
  }
  os << ')';
}

} // namespace

std::string print_term(const TermPtr &term) {
  std::ostringstream os;
  print_term_rec(os, term);
  return os.str();
}

std::string print_sort(const Sort &sort) { return sort.str(); }

std::string print_problem(const SynthProblem &problem) {
  std::ostringstream os;
  for (const auto &fn : problem.functions) {
    os << "(synth-fun " << fn.name << ' ';
    print_params(os, fn.params);
    os << ' ' << print_sort(fn.return_sort);
    auto g = problem.source_grammars.find(fn.name);
    if (g != problem.source_grammars.end())
      os << ' ' << g->second;
    os << ")\n";
  }
  for (const auto &v : problem.inputs)
    os << "(declare-var " << v.name << ' ' << print_sort(v.sort) << ")\n";
  for (const auto &c : problem.constraints)
    os << "(constraint " << print_term(c) << ")\n";
  os << "(check-synth)\n";
  return os.str();
}

std::string emit_definitions(const std::vector<FunctionDefinition> &defs) {
  std::ostringstream os;
  for (const auto &def : defs) {
    os << "(define-fun " << def.name << ' ';
    print_params(os, def.params);
    os << ' ' << print_sort(def.return_sort) << ' ' << print_term(def.body)
       << ")\n";
  }
  return os.str();
}

} // namespace dqsynth
