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

#include "dqsynth/callsig.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace dqsynth {

const FunctionCallSigns *CallSignIndex::find(const std::string &name) const {
  for (const auto &f : functions)
    if (f.function == name)
      return &f;
  return nullptr;
}

namespace {

// Extracts compound invocation arguments into fresh inputs.
class Normalizer {
public:
  explicit Normalizer(const SynthProblem &problem) : problem_(problem) {
    for (const auto &v : problem.inputs)
      used_.insert(v.name);
    for (const auto &f : problem.functions)
      used_.insert(f.name);
  }

  SynthProblem run() {
    SynthProblem out;
    out.inputs = problem_.inputs;
    out.functions = problem_.functions;
    out.source_grammars = problem_.source_grammars;
    std::vector<TermPtr> rewritten;
    for (const auto &c : problem_.constraints)
      rewritten.push_back(rewrite(c));
    if (definitions_.empty()) {
      out.constraints = std::move(rewritten);
      return out;
    }
    // The defining equalities guard the constraints instead of standing
    // alone: under the enlarged universal prefix a bare conjunct `x = t`
    // would be falsified by assignments where x differs from t, making the
    // whole problem spuriously unrealizable. For any input assignment the
    // guard is satisfiable exactly one way (x := value of t), so guarding
    // preserves realizability.
    TermPtr premise = conjoin(definitions_);
    for (auto &c : rewritten)
      out.constraints.push_back(mk_app(Op::Implies, {premise, std::move(c)}));
    out.inputs.insert(out.inputs.end(), new_inputs_.begin(),
                      new_inputs_.end());
    return out;
  }

private:
  TermPtr rewrite(const TermPtr &t) {
    if (t->args.empty())
      return t;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto &a : t->args) {
      TermPtr r = rewrite(a);
      if (t->kind == Term::Kind::SynthApp && !r->is_var()) {
        r = variable_for(r);
        changed = true;
      }
      changed = changed || r.get() != a.get();
      args.push_back(std::move(r));
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
      return t; // leaves have no args
    }
  }

  // Fresh input standing for the (already rewritten) argument term;
  // structurally identical terms share one variable.
  TermPtr variable_for(const TermPtr &t) {
    for (const auto &[seen, var] : extracted_)
      if (structurally_equal(seen, t))
        return var;
    std::string name;
    do {
      name = "t!" + std::to_string(counter_++);
    } while (used_.count(name));
    used_.insert(name);
    TermPtr var = mk_var(name, t->sort);
    new_inputs_.push_back({name, t->sort});
    definitions_.push_back(mk_eq(var, t));
    extracted_.emplace_back(t, var);
    return var;
  }

  const SynthProblem &problem_;
  std::set<std::string> used_;
  std::vector<std::pair<TermPtr, TermPtr>> extracted_;
  std::vector<Variable> new_inputs_;
  std::vector<TermPtr> definitions_;
  int counter_ = 0;
};

void collect(const TermPtr &t, CallSignIndex &index) {
  if (t->kind == Term::Kind::SynthApp) {
    CallSign cs;
    cs.function = t->name;
    for (const auto &a : t->args) {
      if (!a->is_var())
        throw std::logic_error(
            "analyze: invocation argument is not a variable (problem was "
            "not argument-normalized)");
      cs.args.push_back(a->name);
    }
    for (auto &f : index.functions) {
      if (f.function != t->name)
        continue;
      f.invocations++;
      bool known = false;
      for (const auto &existing : f.callsigns)
        if (existing == cs) {
          known = true;
          break;
        }
      if (!known)
        f.callsigns.push_back(std::move(cs));
      break;
    }
  }
  for (const auto &a : t->args)
    collect(a, index);
}

} // namespace

SynthProblem normalize_arguments(const SynthProblem &problem) {
  return Normalizer(problem).run();
}

CallSignIndex analyze(const SynthProblem &problem) {
  CallSignIndex index;
  for (const auto &f : problem.functions)
    index.functions.push_back({f.name, {}, 0});
  for (const auto &c : problem.constraints)
    collect(c, index);
  for (const auto &f : index.functions)
    if (f.callsigns.size() > 1)
      index.single_callsign = false;
  return index;
}

std::string format_callsign_index(const CallSignIndex &index) {
  std::ostringstream os;
  for (const auto &f : index.functions) {
    os << f.function << ": " << f.invocations << " invocation"
       << (f.invocations == 1 ? "" : "s") << ", " << f.callsigns.size()
       << " callsign" << (f.callsigns.size() == 1 ? "" : "s") << '\n';
    for (const auto &cs : f.callsigns) {
      os << "  <";
      for (size_t i = 0; i < cs.args.size(); ++i)
        os << (i ? ", " : "") << cs.args[i];
      os << ">\n";
    }
  }
  os << "classification: "
     << (index.single_callsign ? "single-callsign" : "multiple-callsign")
     << '\n';
  return os.str();
}

} // namespace dqsynth
