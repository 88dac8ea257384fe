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

#include "dqsynth/dqdimacs.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace dqsynth {

namespace {

bool deps_equal_universals(const std::vector<int> &deps,
                           const std::vector<int> &universals) {
  if (deps.size() != universals.size())
    return false;
  std::vector<int> a = deps, b = universals;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

} // namespace

std::string write_dqdimacs(const DqbfInstance &instance) {
  std::ostringstream out;

  for (const BitMapEntry &e : instance.bitmap.entries) {
    out << "c bvmap " << e.name << ' '
        << (e.sort.is_bool() ? std::string("bool")
                             : "bv" + std::to_string(e.sort.width()));
    for (int id : e.bits)
      out << ' ' << id;
    out << '\n';
  }

  out << "p cnf " << instance.num_vars << ' ' << instance.clauses.size()
      << '\n';

  if (!instance.universal_bits.empty()) {
    std::vector<int> a = instance.universal_bits;
    std::sort(a.begin(), a.end());
    out << 'a';
    for (int id : a)
      out << ' ' << id;
    out << " 0\n";
  }

  std::vector<int> e_block = instance.aux_bits;
  std::vector<std::pair<int, std::vector<int>>> d_lines;
  for (const ExistentialGroup &g : instance.existentials) {
    bool full = deps_equal_universals(g.deps, instance.universal_bits);
    for (int bit : g.bits) {
      if (full) {
        e_block.push_back(bit);
      } else {
        std::vector<int> deps = g.deps;
        std::sort(deps.begin(), deps.end());
        d_lines.emplace_back(bit, std::move(deps));
      }
    }
  }
  if (!e_block.empty()) {
    std::sort(e_block.begin(), e_block.end());
    out << 'e';
    for (int id : e_block)
      out << ' ' << id;
    out << " 0\n";
  }
  std::sort(d_lines.begin(), d_lines.end());
  for (const auto &[bit, deps] : d_lines) {
    out << "d " << bit;
    for (int id : deps)
      out << ' ' << id;
    out << " 0\n";
  }

  for (const auto &clause : instance.clauses) {
    for (int lit : clause)
      out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

class QdimacsParser {
public:
  explicit QdimacsParser(const std::string &text) : in_(text) {}

  DqbfInstance run() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                               line.back() == '\t'))
        line.pop_back();
      if (line.empty() || line.find_first_not_of(" \t") == std::string::npos)
        continue;
      if (line[0] == 'c') {
        handle_comment(line);
        continue;
      }
      if (line[0] == 'p') {
        handle_header(line);
        continue;
      }
      if (line[0] == 'a' && is_prefix_line(line)) {
        handle_quant(line, 'a');
        continue;
      }
      if (line[0] == 'e' && is_prefix_line(line)) {
        handle_quant(line, 'e');
        continue;
      }
      if (line[0] == 'd' && is_prefix_line(line)) {
        handle_quant(line, 'd');
        continue;
      }
      handle_clause_tokens(line);
    }
    finish();
    return std::move(inst_);
  }

private:
  static bool is_prefix_line(const std::string &line) {
    return line.size() > 1 && (line[1] == ' ' || line[1] == '\t');
  }

  [[noreturn]] void fail(const std::string &message) const {
    throw DimacsError(lineno_, message);
  }

  void handle_comment(const std::string &line) {
    std::istringstream ss(line);
    std::string c, tag, name, sort;
    if (!(ss >> c >> tag) || tag != "bvmap")
      return;
    if (!(ss >> name >> sort))
      fail("malformed bvmap comment");
    Sort s = Sort::boolean();
    if (sort != "bool") {
      if (sort.size() < 3 || sort.compare(0, 2, "bv") != 0)
        fail("malformed bvmap sort '" + sort + "'");
      s = Sort::bitvec(static_cast<uint32_t>(std::stoul(sort.substr(2))));
    }
    std::vector<int> bits;
    int id = 0;
    while (ss >> id)
      bits.push_back(id);
    if (bits.size() != s.bit_count())
      fail("bvmap for '" + name + "' lists " + std::to_string(bits.size()) +
           " bits, expected " + std::to_string(s.bit_count()));
    inst_.bitmap.add(name, s, bits);
  }

  void handle_header(const std::string &line) {
    if (seen_header_)
      fail("duplicate header");
    std::istringstream ss(line);
    std::string p, cnf;
    long nv = -1, nc = -1;
    if (!(ss >> p >> cnf >> nv >> nc) || p != "p" || cnf != "cnf" || nv < 0 ||
        nc < 0)
      fail("malformed header (expected 'p cnf <vars> <clauses>')");
    std::string rest;
    if (ss >> rest)
      fail("malformed header (trailing tokens)");
    inst_.num_vars = static_cast<int>(nv);
    declared_clauses_ = nc;
    quantifier_of_.assign(static_cast<size_t>(nv) + 1, 0);
    seen_header_ = true;
  }

  int read_declared_var(std::istringstream &ss, const char *what) {
    int id = 0;
    if (!(ss >> id))
      fail(std::string("unterminated ") + what + " line (missing 0)");
    if (id == 0)
      return 0;
    if (id < 0 || id > inst_.num_vars)
      fail("variable " + std::to_string(id) + " out of range");
    return id;
  }

  void declare(int id, char kind) {
    if (quantifier_of_[static_cast<size_t>(id)] != 0)
      fail("variable " + std::to_string(id) + " declared twice");
    quantifier_of_[static_cast<size_t>(id)] = kind;
  }

  void handle_quant(const std::string &line, char kind) {
    if (!seen_header_)
      fail("quantifier line before header");
    if (saw_clause_)
      fail("quantifier line after the first clause");
    if (kind == 'a' && saw_existential_)
      fail("quantifier alternation deeper than forall-exists");
    if (kind != 'a')
      saw_existential_ = true;

    std::istringstream ss(line);
    char c;
    ss >> c;
    if (kind == 'a') {
      while (int id = read_declared_var(ss, "quantifier")) {
        declare(id, 'a');
        inst_.universal_bits.push_back(id);
      }
    } else if (kind == 'e') {
      while (int id = read_declared_var(ss, "quantifier")) {
        declare(id, 'e');
        e_bits_.push_back(id);
      }
    } else {
      int bit = read_declared_var(ss, "dependency");
      if (bit == 0)
        fail("empty dependency line");
      declare(bit, 'd');
      std::vector<int> deps;
      while (int id = read_declared_var(ss, "dependency")) {
        if (quantifier_of_[static_cast<size_t>(id)] != 'a')
          fail("dependency of " + std::to_string(bit) + " on " +
               std::to_string(id) + ", which is not universal");
        deps.push_back(id);
      }
      ExistentialGroup g;
      g.source = "y" + std::to_string(bit);
      g.bits = {bit};
      g.deps = std::move(deps);
      inst_.existentials.push_back(std::move(g));
    }
  }

  void handle_clause_tokens(const std::string &line) {
    if (!seen_header_)
      fail("clause before header");
    saw_clause_ = true;
    std::istringstream ss(line);
    int lit = 0;
    while (ss >> lit) {
      if (lit == 0) {
        inst_.clauses.push_back(std::move(pending_));
        pending_.clear();
        continue;
      }
      int v = lit < 0 ? -lit : lit;
      if (v > inst_.num_vars)
        fail("variable " + std::to_string(v) + " out of range");
      if (quantifier_of_[static_cast<size_t>(v)] == 0)
        fail("undeclared variable " + std::to_string(v) +
             " in clause (free variables are not supported)");
      pending_.push_back(lit);
    }
    if (ss.bad() || (!ss.eof() && ss.fail()))
      fail("malformed clause token");
  }

  void finish() {
    if (!seen_header_)
      fail("missing header");
    if (!pending_.empty())
      fail("non-terminated clause (missing 0)");
    if (declared_clauses_ != static_cast<long>(inst_.clauses.size()))
      fail("header declares " + std::to_string(declared_clauses_) +
           " clauses, found " + std::to_string(inst_.clauses.size()));
    // Plain QDIMACS existentials depend on every universal.
    for (int bit : e_bits_) {
      ExistentialGroup g;
      g.source = "y" + std::to_string(bit);
      g.bits = {bit};
      g.deps = inst_.universal_bits;
      inst_.existentials.push_back(std::move(g));
    }
  }

  std::istringstream in_;
  DqbfInstance inst_;
  std::vector<char> quantifier_of_;
  std::vector<int> e_bits_;
  std::vector<int> pending_;
  long declared_clauses_ = 0;
  int lineno_ = 0;
  bool seen_header_ = false;
  bool saw_existential_ = false;
  bool saw_clause_ = false;
};

} // namespace

DqbfInstance parse_qdimacs(const std::string &text) {
  return QdimacsParser(text).run();
}

} // namespace dqsynth
