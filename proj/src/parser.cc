// Copyright 2026 The Bull Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bull/parser.h"

#include <fmt/core.h>

#include <cctype>
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bull/errors.h"

namespace bull {

std::shared_ptr<const Source> make_source(std::string name, std::string text) {
  return std::make_shared<const Source>(Source{std::move(name), std::move(text)});
}

namespace {

enum class Tok {
  kIdent,
  kString,
  kLParen,
  kRParen,
  kLAngle,
  kRAngle,
  kComma,
  kColon,
  kColonEq,
  kFatArrow,
  kArrow,
  kAmp,
  kBar,
  kDot,
  kUnderscore,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  Location loc;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_keyword(std::string_view s) {
  static const char *const kKeywords[] = {
      "Type",   "let",    "in",   "forall", "fun",   "proj_l", "proj_r",
      "smatch", "as",     "return", "with", "end",   "inj_l",  "inj_r",
      "coe"};
  for (const char *k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::shared_ptr<const Source> source)
      : source_(std::move(source)), text_(source_->text) {}

  Token next() {
    skip_blanks();
    Position start = pos_;
    if (i_ >= text_.size()) return make(Tok::kEnd, "", start);
    char c = text_[i_];
    if (is_ident_char(c) && c != '\'') {
      std::size_t b = i_;
      while (i_ < text_.size() && is_ident_char(text_[i_])) advance();
      std::string word(text_.substr(b, i_ - b));
      return make(word == "_" ? Tok::kUnderscore : Tok::kIdent, word, start);
    }
    if (c == '"') {
      advance();
      std::size_t b = i_;
      while (i_ < text_.size() && text_[i_] != '"' && text_[i_] != '\n') {
        advance();
      }
      if (i_ >= text_.size() || text_[i_] != '"') {
        throw SyntaxError("unterminated string", loc(start, pos_));
      }
      std::string s(text_.substr(b, i_ - b));
      advance();
      return make(Tok::kString, s, start);
    }
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < text_.size() && text_[i_ + 1] == b;
    };
    if (two(':', '=')) return symbol(Tok::kColonEq, 2, start);
    if (two('=', '>')) return symbol(Tok::kFatArrow, 2, start);
    if (two('-', '>')) return symbol(Tok::kArrow, 2, start);
    switch (c) {
      case '(': return symbol(Tok::kLParen, 1, start);
      case ')': return symbol(Tok::kRParen, 1, start);
      case '<': return symbol(Tok::kLAngle, 1, start);
      case '>': return symbol(Tok::kRAngle, 1, start);
      case ',': return symbol(Tok::kComma, 1, start);
      case ':': return symbol(Tok::kColon, 1, start);
      case '&': return symbol(Tok::kAmp, 1, start);
      case '|': return symbol(Tok::kBar, 1, start);
      case '.': return symbol(Tok::kDot, 1, start);
      default: break;
    }
    advance();
    throw SyntaxError(fmt::format("unexpected character '{}'", c),
                      loc(start, pos_));
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 0;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_blanks() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '(' && i_ + 1 < text_.size() && text_[i_ + 1] == '*') {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    Position start = pos_;
    int depth = 0;
    while (i_ < text_.size()) {
      if (text_.compare(i_, 2, "(*") == 0) {
        ++depth;
        advance();
        advance();
      } else if (text_.compare(i_, 2, "*)") == 0) {
        --depth;
        advance();
        advance();
        if (depth == 0) return;
      } else {
        advance();
      }
    }
    throw SyntaxError("unterminated comment", loc(start, pos_));
  }

  Location loc(Position a, Position b) const { return Location{source_, a, b}; }

  Token make(Tok kind, std::string text, Position start) const {
    return Token{kind, std::move(text), loc(start, pos_)};
  }

  Token symbol(Tok kind, int width, Position start) {
    std::string s(text_.substr(i_, width));
    for (int k = 0; k < width; ++k) advance();
    return make(kind, std::move(s), start);
  }

  std::shared_ptr<const Source> source_;
  std::string_view text_;
  std::size_t i_ = 0;
  Position pos_;
};

struct Binder {
  std::string name;
  Location loc;
  Term type;  // Underscore when omitted
};

class Parser {
 public:
  explicit Parser(std::shared_ptr<const Source> source)
      : lexer_(std::move(source)) {}

  bool at_end() { return peek().kind == Tok::kEnd; }

  void expect_end() {
    if (!at_end()) unexpected(peek());
  }

  Term parse_expr() {
    const Token &t = peek();
    if (is_kw(t, "fun")) return parse_binder_form("fun");
    if (is_kw(t, "forall")) return parse_binder_form("forall");
    if (is_kw(t, "let")) return parse_let();
    return parse_arrow();
  }

  std::vector<Command> parse_command() {
    Token t = advance();
    if (t.kind != Tok::kIdent) unexpected(t);
    std::vector<Command> out;
    auto simple = [&](Command::Kind k) {
      Token dot = expect(Tok::kDot, "\".\"");
      out.push_back(Command{k, Location::span(t.loc, dot.loc), "", {}, {}});
      return out;
    };
    if (t.text == "Help") return simple(Command::Kind::kHelp);
    if (t.text == "Quit") return simple(Command::Kind::kQuit);
    if (t.text == "Printall") return simple(Command::Kind::kPrintall);
    if (t.text == "Print" || t.text == "Compute") {
      Token id = expect_ident();
      Token dot = expect(Tok::kDot, "\".\"");
      out.push_back(Command{t.text == "Print" ? Command::Kind::kPrint
                                              : Command::Kind::kCompute,
                            Location::span(t.loc, dot.loc), id.text, {}, {}});
      return out;
    }
    if (t.text == "Load") {
      Token path = expect(Tok::kString, "a file name in quotes");
      Token dot = expect(Tok::kDot, "\".\"");
      out.push_back(Command{Command::Kind::kLoad,
                            Location::span(t.loc, dot.loc), path.text, {}, {}});
      return out;
    }
    if (t.text == "Axiom") return parse_axiom(t);
    if (t.text == "Definition") return parse_definition(t);
    throw SyntaxError(fmt::format("unknown command \"{}\"", t.text), t.loc);
  }

 private:
  // Tokens.

  const Token &peek(std::size_t k = 0) {
    while (buffer_.size() <= k) buffer_.push_back(lexer_.next());
    return buffer_[k];
  }

  Token advance() {
    peek();
    Token t = std::move(buffer_.front());
    buffer_.pop_front();
    last_ = t.loc;
    return t;
  }

  static bool is_kw(const Token &t, std::string_view kw) {
    return t.kind == Tok::kIdent && t.text == kw;
  }

  [[noreturn]] static void unexpected(const Token &t) {
    if (t.kind == Tok::kEnd) {
      throw SyntaxError("unexpected end of input", t.loc);
    }
    throw SyntaxError(fmt::format("unexpected \"{}\"", t.text), t.loc);
  }

  Token expect(Tok kind, std::string_view what) {
    const Token &t = peek();
    if (t.kind != kind) {
      if (t.kind == Tok::kEnd) {
        throw SyntaxError(fmt::format("expected {} before the end of input",
                                      what),
                          t.loc);
      }
      throw SyntaxError(
          fmt::format("expected {} but found \"{}\"", what, t.text), t.loc);
    }
    return advance();
  }

  void expect_kw(std::string_view kw) {
    const Token &t = peek();
    if (!is_kw(t, kw)) {
      if (t.kind == Tok::kEnd) unexpected(t);
      throw SyntaxError(
          fmt::format("expected \"{}\" but found \"{}\"", kw, t.text), t.loc);
    }
    advance();
  }

  Token expect_ident() {
    const Token &t = peek();
    if (t.kind != Tok::kIdent || is_keyword(t.text)) {
      if (t.kind == Tok::kEnd) unexpected(t);
      throw SyntaxError(
          fmt::format("expected an identifier but found \"{}\"", t.text),
          t.loc);
    }
    return advance();
  }

  bool peek_ident(std::size_t k = 0) {
    const Token &t = peek(k);
    return t.kind == Tok::kIdent && !is_keyword(t.text);
  }

  // Binders may also be named "_".
  bool peek_binder(std::size_t k = 0) {
    return peek_ident(k) || peek(k).kind == Tok::kUnderscore;
  }

  Token expect_binder() {
    if (peek().kind == Tok::kUnderscore) return advance();
    return expect_ident();
  }

  Location from(const Location &start) const {
    return Location::span(start, last_);
  }

  // Binders.

  // A parenthesized group "(x y : A)".
  void parse_group(std::vector<Binder> &out) {
    expect(Tok::kLParen, "\"(\"");
    std::vector<Token> names;
    do {
      names.push_back(expect_binder());
    } while (peek_binder());
    expect(Tok::kColon, "\":\"");
    Term type = parse_expr();
    expect(Tok::kRParen, "\")\"");
    for (const Token &n : names) out.push_back(Binder{n.text, n.loc, type});
  }

  // Binders of fun and forall: either "x y : A" or a sequence of bare names
  // and parenthesized groups.
  std::vector<Binder> parse_open_binders() {
    std::vector<Binder> out;
    if (peek_binder()) {
      std::size_t k = 0;
      while (peek_binder(k)) ++k;
      if (peek(k).kind == Tok::kColon) {
        std::vector<Token> names;
        for (std::size_t i = 0; i < k; ++i) names.push_back(advance());
        advance();
        Term type = parse_expr();
        for (const Token &n : names) out.push_back(Binder{n.text, n.loc, type});
        return out;
      }
    }
    parse_closed_binders(out);
    if (out.empty()) unexpected(peek());
    return out;
  }

  // Bare names and parenthesized groups, as in Definition and let.
  void parse_closed_binders(std::vector<Binder> &out) {
    while (true) {
      if (peek_binder()) {
        Token n = advance();
        out.push_back(Binder{n.text, n.loc, mk_underscore(n.loc)});
      } else if (peek().kind == Tok::kLParen) {
        parse_group(out);
      } else {
        return;
      }
    }
  }

  static Term wrap(const std::vector<Binder> &binders, Term body, bool is_abs,
                   const Location *outer) {
    for (std::size_t i = binders.size(); i-- > 0;) {
      const Binder &b = binders[i];
      Location l = Location::span(i == 0 && outer ? *outer : b.loc, body.loc());
      body = is_abs ? mk_abs(l, b.name, b.type, body)
                    : mk_prod(l, b.name, b.type, body);
    }
    return body;
  }

  Term parse_binder_form(std::string_view kw) {
    Token start = advance();
    std::vector<Binder> binders = parse_open_binders();
    bool is_fun = kw == "fun";
    expect(is_fun ? Tok::kFatArrow : Tok::kComma, is_fun ? "\"=>\"" : "\",\"");
    Term body = parse_expr();
    return wrap(binders, body, is_fun, &start.loc);
  }

  Term parse_let() {
    Token start = advance();
    Token name = expect_binder();
    std::vector<Binder> binders;
    parse_closed_binders(binders);
    Term annot;
    if (peek().kind == Tok::kColon) {
      advance();
      annot = wrap(binders, parse_expr(), false, nullptr);
    } else {
      annot = mk_underscore(name.loc);
    }
    expect(Tok::kColonEq, "\":=\"");
    Term bound = wrap(binders, parse_expr(), true, nullptr);
    expect_kw("in");
    Term body = parse_expr();
    return mk_let(from(start.loc), name.text, annot, bound, body);
  }

  // Operators.

  Term parse_arrow() {
    Term lhs = parse_union();
    if (peek().kind == Tok::kArrow) {
      advance();
      Term rhs = parse_expr();
      return mk_prod(Location::span(lhs.loc(), rhs.loc()), "_", lhs, rhs);
    }
    return lhs;
  }

  Term parse_union() {
    Term lhs = parse_inter();
    if (peek().kind == Tok::kBar) {
      advance();
      Term rhs = parse_union();
      return mk_union(Location::span(lhs.loc(), rhs.loc()), lhs, rhs);
    }
    return lhs;
  }

  Term parse_inter() {
    Term lhs = parse_app();
    if (peek().kind == Tok::kAmp) {
      advance();
      Term rhs = parse_inter();
      return mk_inter(Location::span(lhs.loc(), rhs.loc()), lhs, rhs);
    }
    return lhs;
  }

  bool starts_atom() {
    const Token &t = peek();
    switch (t.kind) {
      case Tok::kLParen:
      case Tok::kLAngle:
      case Tok::kUnderscore:
        return true;
      case Tok::kIdent:
        return !is_keyword(t.text) || t.text == "Type" || t.text == "smatch";
      default:
        return false;
    }
  }

  Term parse_app() {
    Term head = parse_app_head();
    std::vector<Term> args;
    while (starts_atom()) args.push_back(parse_atom());
    if (args.empty()) return head;
    Location l = Location::span(head.loc(), args.back().loc());
    return mk_app(l, head, std::move(args));
  }

  Term parse_app_head() {
    const Token &t = peek();
    if (is_kw(t, "proj_l") || is_kw(t, "proj_r")) {
      Token kw = advance();
      Term a = parse_atom();
      Location l = from(kw.loc);
      return kw.text == "proj_l" ? mk_sprleft(l, a) : mk_sprright(l, a);
    }
    if (is_kw(t, "inj_l") || is_kw(t, "inj_r") || is_kw(t, "coe")) {
      Token kw = advance();
      Term a = parse_atom();
      Term b = parse_atom();
      Location l = from(kw.loc);
      if (kw.text == "coe") return mk_coercion(l, a, b);
      return kw.text == "inj_l" ? mk_sinleft(l, a, b) : mk_sinright(l, a, b);
    }
    return parse_atom();
  }

  Term parse_atom() {
    const Token &t = peek();
    switch (t.kind) {
      case Tok::kUnderscore:
        return mk_underscore(advance().loc);
      case Tok::kLParen: {
        advance();
        Term e = parse_expr();
        expect(Tok::kRParen, "\")\"");
        return e;
      }
      case Tok::kLAngle: {
        Token start = advance();
        Term a = parse_expr();
        expect(Tok::kComma, "\",\"");
        Term b = parse_expr();
        expect(Tok::kRAngle, "\">\"");
        return mk_spair(from(start.loc), a, b);
      }
      case Tok::kIdent:
        if (t.text == "Type") return mk_type(advance().loc);
        if (t.text == "smatch") return parse_smatch();
        if (!is_keyword(t.text)) {
          Token id = advance();
          return mk_const(id.loc, id.text);
        }
        break;
      default:
        break;
    }
    unexpected(t);
  }

  Term parse_smatch() {
    Token start = advance();
    Term scrutinee = parse_expr();
    std::string as_name = "_";
    Location ret_loc = start.loc;
    if (is_kw(peek(), "as")) {
      advance();
      Token n = expect_binder();
      as_name = n.text;
      ret_loc = n.loc;
    }
    Term ret_body;
    if (is_kw(peek(), "return")) {
      advance();
      ret_body = parse_expr();
      ret_loc = Location::span(ret_loc, ret_body.loc());
    } else {
      ret_body = mk_underscore(ret_loc);
    }
    Term ret = mk_abs(ret_loc, as_name, mk_underscore(ret_loc), ret_body);
    expect_kw("with");
    auto branch = [&](std::string &name, Term &annot) {
      Token n = expect_binder();
      name = n.text;
      if (peek().kind == Tok::kColon) {
        advance();
        annot = parse_expr();
      } else {
        annot = mk_underscore(n.loc);
      }
      expect(Tok::kFatArrow, "\"=>\"");
      return parse_expr();
    };
    std::string n1, n2;
    Term a1, a2;
    Term b1 = branch(n1, a1);
    expect(Tok::kComma, "\",\"");
    Term b2 = branch(n2, a2);
    expect_kw("end");
    return mk_smatch(from(start.loc), scrutinee, ret, n1, a1, b1, n2, a2, b2);
  }

  // Commands.

  std::vector<Command> parse_axiom(const Token &kw) {
    std::vector<Command> out;
    if (peek().kind == Tok::kLParen) {
      while (peek().kind == Tok::kLParen) {
        std::vector<Binder> group;
        parse_group(group);
        for (Binder &b : group) {
          out.push_back(Command{Command::Kind::kAxiom, b.loc, b.name,
                                NamedTerm{b.type}, {}});
        }
      }
      expect(Tok::kDot, "\".\"");
      return out;
    }
    Token name = expect_ident();
    expect(Tok::kColon, "\":\"");
    Term type = parse_expr();
    expect(Tok::kDot, "\".\"");
    out.push_back(Command{Command::Kind::kAxiom, from(kw.loc), name.text,
                          NamedTerm{type}, {}});
    return out;
  }

  std::vector<Command> parse_definition(const Token &kw) {
    Token name = expect_ident();
    std::vector<Binder> binders;
    parse_closed_binders(binders);
    std::optional<NamedTerm> type;
    if (peek().kind == Tok::kColon) {
      advance();
      type = NamedTerm{wrap(binders, parse_expr(), false, nullptr)};
    }
    expect(Tok::kColonEq, "\":=\"");
    Term body = wrap(binders, parse_expr(), true, nullptr);
    expect(Tok::kDot, "\".\"");
    std::vector<Command> out;
    out.push_back(Command{Command::Kind::kDefinition, from(kw.loc), name.text,
                          type, NamedTerm{body}});
    return out;
  }

  Lexer lexer_;
  std::deque<Token> buffer_;
  Location last_;
};

}  // namespace

NamedTerm parse_term(const std::shared_ptr<const Source> &source) {
  Parser p(source);
  Term t = p.parse_expr();
  p.expect_end();
  return NamedTerm{t};
}

NamedTerm parse_term(std::string_view input) {
  return parse_term(make_source("", std::string(input)));
}

std::vector<Command> parse_command(std::string_view input) {
  CommandReader reader(make_source("", std::string(input)));
  if (reader.at_end()) {
    throw SyntaxError("expected a command", Location{});
  }
  std::vector<Command> cmds = reader.next();
  if (!reader.at_end()) {
    throw SyntaxError("expected a single command", cmds.front().loc);
  }
  return cmds;
}

struct CommandReader::Impl {
  explicit Impl(std::shared_ptr<const Source> source)
      : parser(std::move(source)) {}
  Parser parser;
  bool failed = false;
};

CommandReader::CommandReader(std::shared_ptr<const Source> source)
    : impl_(std::make_unique<Impl>(std::move(source))) {}

CommandReader::~CommandReader() = default;

bool CommandReader::at_end() {
  if (impl_->failed) return true;
  try {
    return impl_->parser.at_end();
  } catch (const SyntaxError &) {
    return false;
  }
}

std::vector<Command> CommandReader::next() {
  try {
    return impl_->parser.parse_command();
  } catch (const SyntaxError &) {
    impl_->failed = true;
    throw;
  }
}

bool has_complete_command(std::string_view text) {
  Lexer lexer(make_source("", std::string(text)));
  try {
    while (true) {
      Token t = lexer.next();
      if (t.kind == Tok::kEnd) return false;
      if (t.kind == Tok::kDot) return true;
    }
  } catch (const SyntaxError &e) {
    // An unterminated comment may still be closed by later input.
    return e.msg != "unterminated comment";
  }
}

// Names and indices.

namespace {

bool same_named_rec(const Term &a, const Term &b) {
  if (a.kind() != b.kind() || a.arity() != b.arity() || a.sort() != b.sort() ||
      a.index() != b.index() || a.name() != b.name() ||
      a.name2() != b.name2()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!same_named_rec(a.child(i), b.child(i))) return false;
  }
  return true;
}

// scope.back() is the innermost name.
Term fix_index_rec(const Term &t, std::vector<std::string> &scope) {
  if (t.is(TermKind::kConst)) {
    for (std::size_t p = scope.size(); p-- > 0;) {
      if (scope[p] == t.name()) {
        return mk_var(t.loc(), static_cast<int>(scope.size() - 1 - p));
      }
    }
    return t;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> children;
  children.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (is_binder_child(t.kind(), i)) {
      scope.push_back(binder_name(t, i));
      children.push_back(fix_index_rec(t.child(i), scope));
      scope.pop_back();
    } else {
      children.push_back(fix_index_rec(t.child(i), scope));
    }
  }
  return with_children(t, std::move(children));
}

std::string unbound_name(int index) { return fmt::format("_UNBOUND_REL_{}", index); }

// Names a body sees from outside its binder: constants and the printed names
// of free variables other than the binder itself.
void collect_visible(const Term &t, int depth,
                     const std::vector<std::string> &scope,
                     std::vector<std::string> &out) {
  switch (t.kind()) {
    case TermKind::kConst:
      out.push_back(t.name());
      return;
    case TermKind::kVar: {
      int outer = t.index() - depth - 1;
      if (outer < 0) return;
      std::size_t n = scope.size();
      if (static_cast<std::size_t>(outer) < n) {
        out.push_back(scope[n - 1 - outer]);
      }
      return;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    collect_visible(t.child(i), is_binder_child(t.kind(), i) ? depth + 1 : depth,
                    scope, out);
  }
}

std::string choose_name(const std::string &hint, bool used, const Term &body,
                        const std::vector<std::string> &scope) {
  std::string base = hint;
  if (base.empty() || base == "_") {
    if (!used) return "_";
    base = "x";
  }
  std::vector<std::string> taken;
  collect_visible(body, 0, scope, taken);
  auto clash = [&](const std::string &s) {
    for (const std::string &u : taken) {
      if (u == s) return true;
    }
    return false;
  };
  if (!clash(base)) return base;
  for (int k = 0;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!clash(candidate)) return candidate;
  }
}

Term fix_id_rec(const Term &t, std::vector<std::string> &scope) {
  if (t.is(TermKind::kVar)) {
    std::size_t n = scope.size();
    std::size_t i = static_cast<std::size_t>(t.index());
    return mk_const(t.loc(), i < n ? scope[n - 1 - i] : unbound_name(t.index()));
  }
  if (t.arity() == 0) return t;
  std::vector<Term> children;
  children.reserve(t.arity());
  std::string name = t.name();
  std::string name2 = t.name2();
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term &c = t.child(i);
    if (!is_binder_child(t.kind(), i)) {
      children.push_back(fix_id_rec(c, scope));
      continue;
    }
    bool used = free_in(0, c);
    std::string chosen;
    if (t.is(TermKind::kProd) && !used) {
      chosen = "_";
    } else {
      chosen = choose_name(binder_name(t, i), used, c, scope);
    }
    scope.push_back(chosen);
    children.push_back(fix_id_rec(c, scope));
    scope.pop_back();
    if (t.is(TermKind::kSMatch) && i == 5) {
      name2 = chosen;
    } else {
      name = chosen;
    }
  }
  return with_children(t, std::move(children), std::move(name),
                       std::move(name2));
}

// Printing.

enum Prec { kTop = 0, kArrow = 1, kUnion = 2, kInter = 3, kApp = 4, kAtom = 5 };

bool is_prefix_form(const Term &t) {
  switch (t.kind()) {
    case TermKind::kSPrLeft:
    case TermKind::kSPrRight:
    case TermKind::kSInLeft:
    case TermKind::kSInRight:
    case TermKind::kCoercion:
      return true;
    default:
      return false;
  }
}

class Printer {
 public:
  std::string run(const Term &t) {
    emit(t, kTop);
    return std::move(out_);
  }

 private:
  void emit(const Term &t, int ctx) {
    int own = prec_of(t);
    bool parens = own < ctx;
    if (parens) out_ += '(';
    emit_bare(t);
    if (parens) out_ += ')';
  }

  static int prec_of(const Term &t) {
    switch (t.kind()) {
      case TermKind::kLet:
      case TermKind::kAbs:
        return kTop;
      case TermKind::kProd:
        return t.name() == "_" ? kArrow : kTop;
      case TermKind::kUnion:
        return kUnion;
      case TermKind::kInter:
        return kInter;
      case TermKind::kApp:
      case TermKind::kSPrLeft:
      case TermKind::kSPrRight:
      case TermKind::kSInLeft:
      case TermKind::kSInRight:
      case TermKind::kCoercion:
        return kApp;
      default:
        return kAtom;
    }
  }

  void annotation(const Term &type) {
    if (type.is(TermKind::kUnderscore)) return;
    out_ += " : ";
    emit(type, kTop);
  }

  void emit_bare(const Term &t) {
    switch (t.kind()) {
      case TermKind::kSort:
        out_ += t.sort() == SortKind::kType ? "Type" : "Kind";
        return;
      case TermKind::kConst:
        out_ += t.name();
        return;
      case TermKind::kVar:
        out_ += unbound_name(t.index());
        return;
      case TermKind::kUnderscore:
        out_ += '_';
        return;
      case TermKind::kMeta:
        out_ += fmt::format("?{}", t.meta_id());
        return;
      case TermKind::kLet:
        out_ += "let " + t.name();
        annotation(t.annot());
        out_ += " := ";
        emit(t.bound(), kTop);
        out_ += " in ";
        emit(t.body(), kTop);
        return;
      case TermKind::kProd:
        if (t.name() == "_") {
          emit(t.domain(), kUnion);
          out_ += " -> ";
          emit(t.body(), kTop);
          return;
        }
        out_ += "forall " + t.name();
        annotation(t.domain());
        out_ += ", ";
        emit(t.body(), kTop);
        return;
      case TermKind::kAbs:
        out_ += "fun " + t.name();
        annotation(t.domain());
        out_ += " => ";
        emit(t.body(), kTop);
        return;
      case TermKind::kApp:
        emit(t.head(), is_prefix_form(t.head()) ? kApp : kAtom);
        for (const Term &a : t.args()) {
          out_ += ' ';
          emit(a, kAtom);
        }
        return;
      case TermKind::kInter:
        emit(t.left(), kApp);
        out_ += " & ";
        emit(t.right(), kInter);
        return;
      case TermKind::kUnion:
        emit(t.left(), kInter);
        out_ += " | ";
        emit(t.right(), kUnion);
        return;
      case TermKind::kSPair:
        out_ += '<';
        emit(t.left(), kTop);
        out_ += ", ";
        emit(t.right(), kTop);
        out_ += '>';
        return;
      case TermKind::kSPrLeft:
      case TermKind::kSPrRight:
        out_ += t.is(TermKind::kSPrLeft) ? "proj_l " : "proj_r ";
        emit(t.arg(), kAtom);
        return;
      case TermKind::kSInLeft:
      case TermKind::kSInRight:
      case TermKind::kCoercion:
        out_ += t.is(TermKind::kSInLeft)    ? "inj_l "
                : t.is(TermKind::kSInRight) ? "inj_r "
                                            : "coe ";
        emit(t.type_arg(), kAtom);
        out_ += ' ';
        emit(t.payload(), kAtom);
        return;
      case TermKind::kSMatch: {
        out_ += "smatch ";
        emit(t.child(0), kTop);
        const Term &ret = t.child(1);
        if (ret.is(TermKind::kAbs)) {
          if (ret.name() != "_") out_ += " as " + ret.name();
          if (!ret.body().is(TermKind::kUnderscore)) {
            out_ += " return ";
            emit(ret.body(), kTop);
          }
        } else if (!ret.is(TermKind::kUnderscore)) {
          out_ += " return ";
          emit(ret, kTop);
        }
        out_ += " with " + t.name();
        annotation(t.child(2));
        out_ += " => ";
        emit(t.child(3), kTop);
        out_ += ", " + t.name2();
        annotation(t.child(4));
        out_ += " => ";
        emit(t.child(5), kTop);
        out_ += " end";
        return;
      }
    }
  }

  std::string out_;
};

}  // namespace

bool same_named(const NamedTerm &a, const NamedTerm &b) {
  return same_named_rec(a.term, b.term);
}

Term fix_index(const NamedTerm &t, const std::vector<std::string> &scope) {
  std::vector<std::string> stack(scope.rbegin(), scope.rend());
  return fix_index_rec(t.term, stack);
}

NamedTerm fix_id(const Term &t, const std::vector<std::string> &scope) {
  std::vector<std::string> stack(scope.rbegin(), scope.rend());
  return NamedTerm{fix_id_rec(t, stack)};
}

std::string print(const NamedTerm &t) { return Printer().run(t.term); }

std::string print_term(const Term &t, const std::vector<std::string> &scope) {
  return print(fix_id(t, scope));
}

}  // namespace bull
