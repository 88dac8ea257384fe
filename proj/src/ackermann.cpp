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

#include "dqsynth/ackermann.hpp"

#include "dqsynth/printer.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace dqsynth {

namespace {

class NameSupply {
public:
  explicit NameSupply(const SynthProblem &p) {
    for (const auto &v : p.inputs)
      used_.insert(v.name);
    for (const auto &f : p.functions)
      used_.insert(f.name);
  }

  std::string fresh(std::string base) {
    std::string name = base;
    int k = 0;
    while (used_.count(name))
      name = base + "_" + std::to_string(++k);
    used_.insert(name);
    return name;
  }

private:
  std::set<std::string> used_;
};

// Renames invocation sites of transformed functions: the site whose
// argument list matches the j-th signature moves to the j-th renamed copy.
TermPtr rename_sites(const TermPtr &t,
                     const std::map<std::string, const FunctionTrace *> &traces,
                     const CallSignIndex &index) {
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto &a : t->args) {
    TermPtr r = rename_sites(a, traces, index);
    changed = changed || r.get() != a.get();
    args.push_back(std::move(r));
  }

  if (t->kind == Term::Kind::SynthApp) {
    auto it = traces.find(t->name);
    if (it != traces.end()) {
      const FunctionCallSigns &fc = *index.find(t->name);
      CallSign site;
      site.function = t->name;
      for (const auto &a : t->args)
        site.args.push_back(a->name);
      for (size_t j = 0; j < fc.callsigns.size(); ++j)
        if (fc.callsigns[j] == site)
          return mk_synth_app(it->second->renamed[j].name, t->sort,
                              std::move(args));
      throw std::logic_error("to_single_callsign: invocation site missing "
                             "from the signature index");
    }
  }
  if (!changed)
    return t;
  switch (t->kind) {
  case Term::Kind::SynthApp:
    return mk_synth_app(t->name, t->sort, std::move(args));
  case Term::Kind::App:
    if (t->op == Op::Extract)
      return mk_extract(t->hi, t->lo, std::move(args[0]));
    return mk_app(t->op, std::move(args));
  default:
    return t;
  }
}

} // namespace

std::pair<SynthProblem, AckermannTrace>
to_single_callsign(const SynthProblem &problem, const CallSignIndex &index) {
  bool any_multi = false;
  for (const auto &f : index.functions)
    any_multi = any_multi || f.callsigns.size() > 1;
  if (!any_multi)
    return {problem, AckermannTrace{}};

  NameSupply names(problem);
  SynthProblem out;
  out.inputs = problem.inputs;
  out.source_grammars = problem.source_grammars;
  AckermannTrace trace;

  for (const auto &fn : problem.functions) {
    const FunctionCallSigns &fc = *index.find(fn.name);
    if (fc.callsigns.size() <= 1) {
      out.functions.push_back(fn);
      continue;
    }
    size_t l = fc.callsigns.size();
    FunctionTrace ft;
    ft.original = fn.name;

    for (size_t j = 0; j < l; ++j) {
      FunctionSymbol renamed = fn;
      renamed.name = names.fresh(fn.name + "!" + std::to_string(j));
      out.functions.push_back(renamed);
      ft.renamed.push_back(std::move(renamed));
    }
    ft.canonical = fn;
    ft.canonical.name = names.fresh(fn.name + "!" + std::to_string(l));
    out.functions.push_back(ft.canonical);

    if (fc.callsigns[0].args.size() != fn.params.size())
      throw std::logic_error("to_single_callsign: signature arity differs "
                             "from the declared arity");
    for (size_t k = 0; k < fn.params.size(); ++k) {
      Variable z{names.fresh("z!" + fn.name + "!" + std::to_string(k)),
                 fn.params[k].sort};
      out.inputs.push_back(z);
      ft.fresh_block.push_back(std::move(z));
    }

    std::vector<TermPtr> z_args;
    for (const auto &z : ft.fresh_block)
      z_args.push_back(mk_var(z.name, z.sort));
    TermPtr canonical_app = mk_call(ft.canonical, z_args);

    for (size_t j = 0; j < l; ++j) {
      const CallSign &cs = fc.callsigns[j];
      std::vector<TermPtr> site_args;
      std::vector<TermPtr> component_eqs;
      for (size_t k = 0; k < cs.args.size(); ++k) {
        TermPtr arg = mk_var(cs.args[k], fn.params[k].sort);
        component_eqs.push_back(mk_eq(arg, z_args[k]));
        site_args.push_back(std::move(arg));
      }
      AgreementConstraint ac;
      ac.guard = conjoin(component_eqs);
      ac.consequence =
          mk_eq(mk_call(ft.renamed[j], std::move(site_args)), canonical_app);
      ft.agreements.push_back(std::move(ac));
    }

    trace.canonical_of[fn.name] = ft.canonical.name;
    trace.functions.push_back(std::move(ft));
  }

  std::map<std::string, const FunctionTrace *> by_name;
  for (const auto &ft : trace.functions)
    by_name[ft.original] = &ft;
  for (const auto &c : problem.constraints)
    out.constraints.push_back(rename_sites(c, by_name, index));
  for (const auto &ft : trace.functions)
    for (const auto &ac : ft.agreements)
      out.constraints.push_back(ac.implication());

  return {std::move(out), std::move(trace)};
}

size_t fresh_variable_budget(const CallSignIndex &index) {
  size_t n = 0;
  for (const auto &f : index.functions)
    if (f.callsigns.size() > 1)
      n += f.callsigns[0].args.size();
  return n;
}

std::string format_trace(const AckermannTrace &trace) {
  std::ostringstream os;
  if (trace.empty()) {
    os << "already single-callsign; no transformation applied\n";
    return os.str();
  }
  for (const auto &ft : trace.functions) {
    os << ft.original << " -> " << ft.renamed.size()
       << " renamed copies, canonical " << ft.canonical.name << '\n';
    os << "  fresh universals:";
    for (const auto &z : ft.fresh_block)
      os << ' ' << z.name << ':' << z.sort.str();
    os << '\n';
    for (const auto &ac : ft.agreements)
      os << "  agree: " << print_term(ac.implication()) << '\n';
  }
  return os.str();
}

} // namespace dqsynth
