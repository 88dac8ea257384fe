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

#include "dqsynth/dqf.hpp"

#include "dqsynth/printer.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dqsynth {

namespace {

TermPtr replace_invocations(const TermPtr &t,
                            const std::map<std::string, TermPtr> &ys) {
  if (t->kind == Term::Kind::SynthApp) {
    auto it = ys.find(t->name);
    if (it == ys.end())
      throw std::logic_error("to_dqf: invocation of an undeclared function");
    return it->second;
  }
  if (t->args.empty())
    return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto &a : t->args) {
    TermPtr r = replace_invocations(a, ys);
    changed = changed || r.get() != a.get();
    args.push_back(std::move(r));
  }
  if (!changed)
    return t;
  if (t->op == Op::Extract)
    return mk_extract(t->hi, t->lo, std::move(args[0]));
  return mk_app(t->op, std::move(args));
}

} // namespace

DqfFormula to_dqf(const SynthProblem &problem) {
  CallSignIndex index = analyze(problem);
  for (const auto &f : index.functions)
    if (f.callsigns.size() > 1)
      throw std::logic_error(
          "to_dqf: multiple-callsign input (internal pipeline error; the "
          "problem must be reduced to single-callsign first)");

  DqfFormula out;
  out.universals = problem.inputs;

  std::set<std::string> used;
  for (const auto &v : problem.inputs)
    used.insert(v.name);
  for (const auto &f : problem.functions)
    used.insert(f.name);

  std::map<std::string, TermPtr> ys;
  for (const auto &fn : problem.functions) {
    const FunctionCallSigns &fc = *index.find(fn.name);
    DqfExistential ex;
    std::string base = fn.name + "!out";
    std::string name = base;
    int k = 0;
    while (used.count(name))
      name = base + "_" + std::to_string(++k);
    used.insert(name);
    ex.var = {name, fn.return_sort};
    if (!fc.callsigns.empty()) {
      ex.origin.callsign = fc.callsigns[0];
      for (const auto &arg : fc.callsigns[0].args)
        if (std::find(ex.deps.begin(), ex.deps.end(), arg) == ex.deps.end())
          ex.deps.push_back(arg);
    }
    ex.origin.function = fn.name;
    ex.origin.params = fn.params;
    ex.origin.return_sort = fn.return_sort;
    ys[fn.name] = mk_var(ex.var.name, ex.var.sort);
    out.existentials.push_back(std::move(ex));
  }

  std::vector<TermPtr> rewritten;
  for (const auto &c : problem.constraints)
    rewritten.push_back(replace_invocations(c, ys));
  out.body = conjoin(rewritten);
  return out;
}

bool is_2qbf(const DqfFormula &formula) {
  std::set<std::string> all;
  for (const auto &u : formula.universals)
    all.insert(u.name);
  for (const auto &ex : formula.existentials) {
    std::set<std::string> deps(ex.deps.begin(), ex.deps.end());
    if (deps != all)
      return false;
  }
  return true;
}

std::string format_dqf(const DqfFormula &formula) {
  std::ostringstream os;
  os << "forall";
  for (const auto &u : formula.universals)
    os << ' ' << u.name << ':' << u.sort.str();
  os << '\n';
  for (const auto &ex : formula.existentials) {
    os << "exists " << ex.var.name << ':' << ex.var.sort.str()
       << " depending on (";
    for (size_t i = 0; i < ex.deps.size(); ++i)
      os << (i ? " " : "") << ex.deps[i];
    os << ")  [from " << ex.origin.function << "]\n";
  }
  os << "body: " << print_term(formula.body) << '\n';
  return os.str();
}

} // namespace dqsynth
