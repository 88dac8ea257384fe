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

#include "dqsynth/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace dqsynth {

namespace {

enum class TokenKind {
  Open,
  Close,
  Symbol,
  Numeral,
  Binary, // #b...
  Hex,    // #x...
  String,
  Eof,
};

struct Token {
  TokenKind kind;
  std::string text; // payload without markers for Binary/Hex/String
  SourcePos pos;
  size_t begin = 0; // byte offsets into the source, for raw capture
  size_t end = 0;
};

bool is_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c)))
    return true;
  return std::string_view("~!@$%^&*_-+=<>.?/").find(c) != std::string_view::npos;
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.pos = pos();
    t.begin = i_;
    if (i_ >= text_.size()) {
      t.kind = TokenKind::Eof;
      t.end = i_;
      return t;
    }
    char c = text_[i_];
    if (c == '(') {
      advance();
      t.kind = TokenKind::Open;
    } else if (c == ')') {
      advance();
      t.kind = TokenKind::Close;
    } else if (c == '#') {
      advance();
      if (i_ >= text_.size() || (text_[i_] != 'b' && text_[i_] != 'x'))
        throw ParseError(t.pos, "lexical error: expected #b or #x literal");
      bool bin = text_[i_] == 'b';
      advance();
      std::string digits;
      while (i_ < text_.size() &&
             (bin ? (text_[i_] == '0' || text_[i_] == '1')
                  : std::isxdigit(static_cast<unsigned char>(text_[i_])))) {
        digits += text_[i_];
        advance();
      }
      if (digits.empty())
        throw ParseError(t.pos, "lexical error: empty bitvector literal");
      t.kind = bin ? TokenKind::Binary : TokenKind::Hex;
      t.text = digits;
    } else if (c == '|') {
      advance();
      std::string name;
      while (i_ < text_.size() && text_[i_] != '|') {
        name += text_[i_];
        advance();
      }
      if (i_ >= text_.size())
        throw ParseError(t.pos, "lexical error: unterminated quoted symbol");
      advance(); // closing '|'
      t.kind = TokenKind::Symbol;
      t.text = name;
    } else if (c == '"') {
      advance();
      std::string s;
      while (i_ < text_.size() && text_[i_] != '"') {
        s += text_[i_];
        advance();
      }
      if (i_ >= text_.size())
        throw ParseError(t.pos, "lexical error: unterminated string");
      advance();
      t.kind = TokenKind::String;
      t.text = s;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        digits += text_[i_];
        advance();
      }
      // "3.14" or "12abc" are not valid tokens here
      if (i_ < text_.size() && is_symbol_char(text_[i_]))
        throw ParseError(t.pos, "lexical error: malformed numeral");
      t.kind = TokenKind::Numeral;
      t.text = digits;
    } else if (c == ':' || is_symbol_char(c)) {
      // keywords (:foo) are lexed as symbols; they only occur inside
      // commands we skip wholesale
      std::string name(1, c);
      advance();
      while (i_ < text_.size() && is_symbol_char(text_[i_])) {
        name += text_[i_];
        advance();
      }
      t.kind = TokenKind::Symbol;
      t.text = name;
    } else {
      throw ParseError(t.pos, std::string("lexical error: unexpected '") + c +
                                  "'");
    }
    t.end = i_;
    return t;
  }

  size_t offset() const { return i_; }
  std::string_view source() const { return text_; }

private:
  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[i_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    i_++;
  }

  SourcePos pos() const { return {line_, col_}; }

  std::string_view text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct OpEntry {
  Op op;
  enum class Assoc { Unary, Binary, LeftAssoc, RightAssoc, Chain, Ternary };
  Assoc assoc;
};

const std::map<std::string, OpEntry, std::less<>> &op_table() {
  using A = OpEntry::Assoc;
  static const std::map<std::string, OpEntry, std::less<>> table = {
      {"not", {Op::Not, A::Unary}},
      {"and", {Op::And, A::LeftAssoc}},
      {"or", {Op::Or, A::LeftAssoc}},
      {"xor", {Op::Xor, A::LeftAssoc}},
      {"=>", {Op::Implies, A::RightAssoc}},
      {"=", {Op::Eq, A::Chain}},
      {"ite", {Op::Ite, A::Ternary}},
      {"bvnot", {Op::BvNot, A::Unary}},
      {"bvneg", {Op::BvNeg, A::Unary}},
      {"bvand", {Op::BvAnd, A::LeftAssoc}},
      {"bvor", {Op::BvOr, A::LeftAssoc}},
      {"bvxor", {Op::BvXor, A::LeftAssoc}},
      {"bvadd", {Op::BvAdd, A::LeftAssoc}},
      {"bvsub", {Op::BvSub, A::LeftAssoc}},
      {"bvmul", {Op::BvMul, A::LeftAssoc}},
      {"bvudiv", {Op::BvUdiv, A::Binary}},
      {"bvurem", {Op::BvUrem, A::Binary}},
      {"bvshl", {Op::BvShl, A::Binary}},
      {"bvlshr", {Op::BvLshr, A::Binary}},
      {"bvashr", {Op::BvAshr, A::Binary}},
      {"concat", {Op::Concat, A::LeftAssoc}},
      {"bvult", {Op::BvUlt, A::Binary}},
      {"bvule", {Op::BvUle, A::Binary}},
      {"bvugt", {Op::BvUgt, A::Binary}},
      {"bvuge", {Op::BvUge, A::Binary}},
      {"bvslt", {Op::BvSlt, A::Binary}},
      {"bvsle", {Op::BvSle, A::Binary}},
      {"bvsgt", {Op::BvSgt, A::Binary}},
      {"bvsge", {Op::BvSge, A::Binary}},
  };
  return table;
}

class Parser {
public:
  Parser(std::string_view text, std::ostream *diagnostics)
      : lexer_(text), diagnostics_(diagnostics) {
    shift();
  }

  SynthProblem parse_problem() {
    while (cur_.kind != TokenKind::Eof) {
      expect(TokenKind::Open, "expected '(' starting a command");
      Token cmd = expect(TokenKind::Symbol, "expected a command name");
      if (cmd.text == "set-logic") {
        expect(TokenKind::Symbol, "expected a logic name");
        expect(TokenKind::Close, "expected ')'");
      } else if (cmd.text == "set-info" || cmd.text == "set-option" ||
                 cmd.text == "set-feature") {
        skip_to_close();
      } else if (cmd.text == "declare-var") {
        parse_declare_var();
      } else if (cmd.text == "synth-fun") {
        parse_synth_fun();
      } else if (cmd.text == "constraint") {
        TermPtr t = parse_term(Scope{});
        if (!t->sort.is_bool())
          throw ParseError(cmd.pos, "constraint must be Bool, got " +
                                        t->sort.str());
        problem_.constraints.push_back(t);
        expect(TokenKind::Close, "expected ')' after constraint");
      } else if (cmd.text == "check-synth") {
        expect(TokenKind::Close, "expected ')' after check-synth");
      } else {
        throw ParseError(cmd.pos,
                         "unsupported feature: command '" + cmd.text + "'");
      }
    }
    return std::move(problem_);
  }

  std::vector<FunctionDefinition> parse_definitions() {
    std::vector<FunctionDefinition> defs;
    while (cur_.kind != TokenKind::Eof) {
      expect(TokenKind::Open, "expected '(' starting a command");
      Token cmd = expect(TokenKind::Symbol, "expected a command name");
      if (cmd.text != "define-fun")
        throw ParseError(cmd.pos, "expected define-fun, got '" + cmd.text +
                                      "'");
      FunctionDefinition def;
      Token name = expect(TokenKind::Symbol, "expected a function name");
      def.name = name.text;
      for (const auto &d : defs)
        if (d.name == def.name)
          throw ParseError(name.pos, "duplicate declaration of '" + def.name +
                                         "'");
      def.params = parse_param_list();
      def.return_sort = parse_sort();
      Scope scope;
      for (const auto &p : def.params)
        scope.params.push_back(p);
      body_only_ = true;
      def.body = parse_term(scope);
      body_only_ = false;
      if (!(def.body->sort == def.return_sort))
        throw ParseError(name.pos, "body sort " + def.body->sort.str() +
                                       " does not match declared " +
                                       def.return_sort.str());
      expect(TokenKind::Close, "expected ')' after define-fun");
      defs.push_back(std::move(def));
    }
    return defs;
  }

private:
  struct Scope {
    std::vector<Variable> params; // define-fun parameters
    std::map<std::string, TermPtr> lets;
  };

  void shift() { cur_ = lexer_.next(); }

  Token expect(TokenKind kind, const std::string &message) {
    if (cur_.kind != kind)
      throw ParseError(cur_.pos, message);
    Token t = cur_;
    shift();
    return t;
  }

  void skip_to_close() {
    int depth = 0;
    while (true) {
      if (cur_.kind == TokenKind::Eof)
        throw ParseError(cur_.pos, "unexpected end of file inside a command");
      if (cur_.kind == TokenKind::Open)
        depth++;
      else if (cur_.kind == TokenKind::Close) {
        if (depth == 0) {
          shift();
          return;
        }
        depth--;
      }
      shift();
    }
  }

  Sort parse_sort() {
    if (cur_.kind == TokenKind::Symbol) {
      if (cur_.text == "Bool") {
        shift();
        return Sort::boolean();
      }
      throw ParseError(cur_.pos, "unsupported feature: sort '" + cur_.text +
                                     "' (only Bool and (_ BitVec w))");
    }
    Token open = expect(TokenKind::Open, "expected a sort");
    Token u = expect(TokenKind::Symbol, "expected '_' in sort");
    if (u.text != "_")
      throw ParseError(u.pos, "unsupported feature: sort '(" + u.text + " ...)'");
    Token bv = expect(TokenKind::Symbol, "expected 'BitVec'");
    if (bv.text != "BitVec")
      throw ParseError(bv.pos, "unsupported feature: sort '(_ " + bv.text +
                                   " ...)'");
    Token w = expect(TokenKind::Numeral, "expected a bitvector width");
    unsigned long width = std::stoul(w.text);
    if (width == 0)
      throw ParseError(w.pos, "bitvector width must be >= 1");
    expect(TokenKind::Close, "expected ')' closing the sort");
    (void)open;
    return Sort::bitvec(static_cast<uint32_t>(width));
  }

  std::vector<Variable> parse_param_list() {
    std::vector<Variable> params;
    expect(TokenKind::Open, "expected '(' starting the parameter list");
    while (cur_.kind != TokenKind::Close) {
      expect(TokenKind::Open, "expected '(' starting a parameter");
      Token name = expect(TokenKind::Symbol, "expected a parameter name");
      Sort sort = parse_sort();
      for (const auto &p : params)
        if (p.name == name.text)
          throw ParseError(name.pos,
                           "duplicate declaration of parameter '" + name.text +
                               "'");
      params.push_back({name.text, sort});
      expect(TokenKind::Close, "expected ')' closing the parameter");
    }
    shift(); // ')'
    return params;
  }

  void parse_declare_var() {
    Token name = expect(TokenKind::Symbol, "expected a variable name");
    Sort sort = parse_sort();
    if (problem_.has_name(name.text))
      throw ParseError(name.pos,
                       "duplicate declaration of '" + name.text + "'");
    problem_.inputs.push_back({name.text, sort});
    expect(TokenKind::Close, "expected ')' after declare-var");
  }

  void parse_synth_fun() {
    Token name = expect(TokenKind::Symbol, "expected a function name");
    if (problem_.has_name(name.text))
      throw ParseError(name.pos,
                       "duplicate declaration of '" + name.text + "'");
    FunctionSymbol fn;
    fn.name = name.text;
    fn.params = parse_param_list();
    fn.return_sort = parse_sort();
    if (cur_.kind != TokenKind::Close) {
      // grammar block: capture the raw text up to the closing paren and
      // keep it for diagnostics only
      size_t begin = cur_.begin;
      size_t end = begin;
      int depth = 0;
      while (true) {
        if (cur_.kind == TokenKind::Eof)
          throw ParseError(cur_.pos, "unexpected end of file in synth-fun");
        if (cur_.kind == TokenKind::Close && depth == 0)
          break;
        if (cur_.kind == TokenKind::Open)
          depth++;
        else if (cur_.kind == TokenKind::Close)
          depth--;
        end = cur_.end;
        shift();
      }
      problem_.source_grammars[fn.name] =
          std::string(lexer_.source().substr(begin, end - begin));
      if (diagnostics_)
        *diagnostics_ << "note: grammar attached to '" << fn.name
                      << "' is retained but ignored (theory-constrained "
                         "synthesis)\n";
    }
    expect(TokenKind::Close, "expected ')' after synth-fun");
    problem_.functions.push_back(std::move(fn));
  }

  TermPtr parse_term(const Scope &scope) {
    Token t = cur_;
    switch (t.kind) {
    case TokenKind::Symbol:
      shift();
      return atom(t, scope);
    case TokenKind::Binary:
      shift();
      return mk_const(BvValue::from_binary(t.text));
    case TokenKind::Hex: {
      shift();
      std::string bits;
      for (char c : t.text) {
        int v = std::isdigit(static_cast<unsigned char>(c))
                    ? c - '0'
                    : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        for (int i = 3; i >= 0; --i)
          bits += ((v >> i) & 1) ? '1' : '0';
      }
      return mk_const(BvValue::from_binary(bits));
    }
    case TokenKind::Numeral:
      throw ParseError(t.pos, "unsupported feature: integer literal (use "
                              "#b/#x or (_ bvN w))");
    case TokenKind::Open:
      shift();
      return compound(scope);
    default:
      throw ParseError(t.pos, "expected a term");
    }
  }

  TermPtr atom(const Token &t, const Scope &scope) {
    if (t.text == "true")
      return mk_true();
    if (t.text == "false")
      return mk_false();
    auto let = scope.lets.find(t.text);
    if (let != scope.lets.end())
      return let->second;
    for (const auto &p : scope.params)
      if (p.name == t.text)
        return mk_var(p.name, p.sort);
    if (!body_only_) {
      if (const Variable *v = problem_.find_input(t.text))
        return mk_var(v->name, v->sort);
      if (const FunctionSymbol *f = problem_.find_function(t.text)) {
        if (!f->params.empty())
          throw ParseError(t.pos, "function '" + t.text +
                                      "' expects arguments");
        return mk_call(*f, {});
      }
    }
    throw ParseError(t.pos, "unknown symbol '" + t.text + "'");
  }

  // Called after the opening '(' of a compound term has been consumed.
  TermPtr compound(const Scope &scope) {
    if (cur_.kind == TokenKind::Open) {
      // indexed operator: ((_ extract i j) t) or (_ bvN w) style heads
      shift();
      Token u = expect(TokenKind::Symbol, "expected '_'");
      if (u.text != "_")
        throw ParseError(u.pos, "expected an indexed operator");
      Token op = expect(TokenKind::Symbol, "expected an operator name");
      if (op.text != "extract")
        throw ParseError(op.pos, "unsupported feature: indexed operator '" +
                                     op.text + "'");
      Token hi = expect(TokenKind::Numeral, "expected extract high index");
      Token lo = expect(TokenKind::Numeral, "expected extract low index");
      expect(TokenKind::Close, "expected ')' closing the operator");
      TermPtr arg = parse_term(scope);
      expect(TokenKind::Close, "expected ')' closing extract");
      try {
        return mk_extract(static_cast<uint32_t>(std::stoul(hi.text)),
                          static_cast<uint32_t>(std::stoul(lo.text)), arg);
      } catch (const std::invalid_argument &e) {
        throw ParseError(op.pos, std::string("sort mismatch: ") + e.what());
      }
    }

    Token head = expect(TokenKind::Symbol, "expected an operator or function");
    if (head.text == "_") {
      // (_ bvN w) bitvector literal
      Token lit = expect(TokenKind::Symbol, "expected bvN literal");
      if (lit.text.size() < 3 || lit.text.compare(0, 2, "bv") != 0)
        throw ParseError(lit.pos, "unknown operator '(_ " + lit.text + ")'");
      uint64_t value = 0;
      for (size_t i = 2; i < lit.text.size(); ++i) {
        char c = lit.text[i];
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError(lit.pos, "malformed literal '" + lit.text + "'");
        value = value * 10 + static_cast<uint64_t>(c - '0');
      }
      Token w = expect(TokenKind::Numeral, "expected a literal width");
      expect(TokenKind::Close, "expected ')' closing the literal");
      unsigned long width = std::stoul(w.text);
      if (width == 0 || width > 64)
        throw ParseError(w.pos, "unsupported feature: (_ bvN w) literal "
                                "width outside 1..64 (use #b)");
      return mk_const(BvValue::from_uint(static_cast<uint32_t>(width), value));
    }
    if (head.text == "let")
      return parse_let(scope);

    std::vector<TermPtr> args;
    while (cur_.kind != TokenKind::Close)
      args.push_back(parse_term(scope));
    shift(); // ')'

    auto entry = op_table().find(head.text);
    if (entry != op_table().end())
      return apply_op(head, entry->second, std::move(args));

    if (!body_only_) {
      if (const FunctionSymbol *f = problem_.find_function(head.text)) {
        try {
          return mk_call(*f, std::move(args));
        } catch (const std::invalid_argument &e) {
          throw ParseError(head.pos, std::string("sort mismatch: ") + e.what());
        }
      }
    }
    throw ParseError(head.pos, "unknown operator '" + head.text + "'");
  }

  TermPtr apply_op(const Token &head, const OpEntry &entry,
                   std::vector<TermPtr> args) {
    using A = OpEntry::Assoc;
    try {
      switch (entry.assoc) {
      case A::Unary:
        require_args(head, args, 1, 1);
        return mk_app(entry.op, std::move(args));
      case A::Binary:
        require_args(head, args, 2, 2);
        return mk_app(entry.op, std::move(args));
      case A::Ternary:
        require_args(head, args, 3, 3);
        return mk_app(entry.op, std::move(args));
      case A::LeftAssoc: {
        require_args(head, args, 2, SIZE_MAX);
        TermPtr acc = args[0];
        for (size_t i = 1; i < args.size(); ++i)
          acc = mk_app(entry.op, {acc, args[i]});
        return acc;
      }
      case A::RightAssoc: {
        require_args(head, args, 2, SIZE_MAX);
        TermPtr acc = args.back();
        for (size_t i = args.size() - 1; i-- > 0;)
          acc = mk_app(entry.op, {args[i], acc});
        return acc;
      }
      case A::Chain: {
        require_args(head, args, 2, SIZE_MAX);
        TermPtr acc;
        for (size_t i = 0; i + 1 < args.size(); ++i) {
          TermPtr eq = mk_app(entry.op, {args[i], args[i + 1]});
          acc = acc ? mk_and(acc, eq) : eq;
        }
        return acc;
      }
      }
    } catch (const std::invalid_argument &e) {
      throw ParseError(head.pos, std::string("sort mismatch: ") + e.what());
    }
    throw ParseError(head.pos, "unreachable");
  }

  void require_args(const Token &head, const std::vector<TermPtr> &args,
                    size_t min, size_t max) {
    if (args.size() < min || args.size() > max)
      throw ParseError(head.pos, "sort mismatch: operator '" + head.text +
                                     "' applied to " +
                                     std::to_string(args.size()) +
                                     " operands");
  }

  TermPtr parse_let(const Scope &scope) {
    expect(TokenKind::Open, "expected '(' starting let bindings");
    Scope inner = scope;
    while (cur_.kind != TokenKind::Close) {
      expect(TokenKind::Open, "expected '(' starting a binding");
      Token name = expect(TokenKind::Symbol, "expected a bound name");
      // bindings are evaluated in the outer scope (parallel let)
      TermPtr value = parse_term(scope);
      expect(TokenKind::Close, "expected ')' closing the binding");
      inner.lets[name.text] = value;
    }
    shift(); // ')'
    TermPtr body = parse_term(inner);
    expect(TokenKind::Close, "expected ')' closing let");
    return body;
  }

  Lexer lexer_;
  Token cur_;
  std::ostream *diagnostics_;
  SynthProblem problem_;
  bool body_only_ = false; // true while parsing define-fun bodies
};

} // namespace

SynthProblem parse_problem(std::string_view text, std::ostream *diagnostics) {
  Parser p(text, diagnostics);
  return p.parse_problem();
}

std::vector<FunctionDefinition> parse_definitions(std::string_view text) {
  Parser p(text, nullptr);
  return p.parse_definitions();
}

} // namespace dqsynth
