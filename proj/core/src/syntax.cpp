// Copyright 2026 The pimodulo Authors.
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

#include "pimodulo/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pimodulo/printer.hpp"

namespace pimodulo {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string parse_error_message(const SourceSpan& span, const std::vector<std::string>& expected,
                                const std::string& found, const std::string& message) {
  std::string out = span.to_string() + ": ";
  if (!message.empty()) {
    out += message;
  } else {
    out += "expected " + (expected.size() == 1 ? expected[0] : "one of " + join(expected, ", "));
    out += ", found " + found;
  }
  return out;
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::vector<std::string> expected, std::string found,
                       const std::string& message)
    : std::runtime_error(parse_error_message(span, expected, found, message)),
      span_(std::move(span)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

IoError::IoError(const std::string& path)
    : std::runtime_error("cannot read " + path), path_(path) {}

// Surface terms ---------------------------------------------------------------

SurfacePtr make_ident(std::string name, SourceSpan span) {
  return std::make_shared<SurfaceTerm>(
      SurfaceTerm{SurfaceKind::Ident, std::move(name), nullptr, nullptr, std::move(span)});
}

SurfacePtr make_sort(SurfaceKind kind, SourceSpan span) {
  return std::make_shared<SurfaceTerm>(SurfaceTerm{kind, {}, nullptr, nullptr, std::move(span)});
}

SurfacePtr make_binder(SurfaceKind kind, std::string name, SurfacePtr domain, SurfacePtr body,
                       SourceSpan span) {
  return std::make_shared<SurfaceTerm>(
      SurfaceTerm{kind, std::move(name), std::move(domain), std::move(body), std::move(span)});
}

SurfacePtr make_app(SurfacePtr fn, SurfacePtr arg, SourceSpan span) {
  return std::make_shared<SurfaceTerm>(
      SurfaceTerm{SurfaceKind::App, {}, std::move(fn), std::move(arg), std::move(span)});
}

bool same_surface(const SurfacePtr& a, const SurfacePtr& b) {
  if (!a || !b) return !a && !b;
  return a->kind == b->kind && a->name == b->name && same_surface(a->first, b->first) &&
         same_surface(a->second, b->second);
}

namespace {

enum Prec { kBinder = 0, kApp = 1, kAtom = 2 };

std::string print_surface_at(const SurfaceTerm& t, Prec prec) {
  auto wrap = [&](std::string s, bool parens) { return parens ? "(" + s + ")" : s; };
  switch (t.kind) {
    case SurfaceKind::Ident:
      return t.name;
    case SurfaceKind::Type:
      return "Type";
    case SurfaceKind::Kind:
      return "Kind";
    case SurfaceKind::App:
      return wrap(print_surface_at(*t.first, kApp) + " " + print_surface_at(*t.second, kAtom),
                  prec > kApp);
    case SurfaceKind::Pi:
      if (t.name.empty()) {
        return wrap(print_surface_at(*t.first, kApp) + " -> " + print_surface_at(*t.second, kBinder),
                    prec > kBinder);
      }
      [[fallthrough]];
    case SurfaceKind::Lam:
      return wrap(std::string(t.kind == SurfaceKind::Pi ? "Pi " : "\\") + t.name + " : " +
                      print_surface_at(*t.first, kBinder) + ". " +
                      print_surface_at(*t.second, kBinder),
                  prec > kBinder);
  }
  return "?";
}

}  // namespace

std::string print_surface(const SurfacePtr& t) {
  return t ? print_surface_at(*t, kBinder) : "<null>";
}

// Lexer -----------------------------------------------------------------------

namespace {

enum class Tok {
  Ident,
  Type,
  Kind,
  Pi,
  Lambda,
  Colon,
  Dot,
  Arrow,
  RuleArrow,
  Turnstile,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  At,
  Directive,
  Newline,
  End,
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident:
      return "identifier";
    case Tok::Type:
      return "'Type'";
    case Tok::Kind:
      return "'Kind'";
    case Tok::Pi:
      return "'Pi'";
    case Tok::Lambda:
      return "'\\'";
    case Tok::Colon:
      return "':'";
    case Tok::Dot:
      return "'.'";
    case Tok::Arrow:
      return "'->'";
    case Tok::RuleArrow:
      return "'-->'";
    case Tok::Turnstile:
      return "'|-'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Comma:
      return "','";
    case Tok::At:
      return "'@'";
    case Tok::Directive:
      return "directive";
    case Tok::Newline:
      return "end of line";
    case Tok::End:
      return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

// Canonical form of a `{...}` suffix: whitespace removed, and when the
// contents form an arrow type over identifiers, reprinted with minimal
// parentheses so that `forall{(iota) -> o}` and `forall{iota->o}` agree.
class SuffixCanon {
 public:
  explicit SuffixCanon(std::string s) : s_(std::move(s)) {}

  std::string run() {
    std::optional<std::string> r = arrow();
    if (r && pos_ == s_.size()) return *r;
    return s_;
  }

 private:
  std::optional<std::string> arrow() {
    bool compound = false;
    std::optional<std::string> left = atom(compound);
    if (!left) return std::nullopt;
    if (s_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      std::optional<std::string> right = arrow();
      if (!right) return std::nullopt;
      return (compound ? "(" + *left + ")" : *left) + "->" + *right;
    }
    return left;
  }

  std::optional<std::string> atom(bool& compound) {
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      std::optional<std::string> inner = arrow();
      if (!inner || pos_ >= s_.size() || s_[pos_] != ')') return std::nullopt;
      ++pos_;
      compound = inner->find("->") != std::string::npos;
      return inner;
    }
    std::size_t start = pos_;
    if (pos_ < s_.size() && ident_start(s_[pos_])) {
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      return s_.substr(start, pos_ - start);
    }
    return std::nullopt;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string canonical_suffix(std::string_view raw) {
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(raw[i]))) continue;
    if (raw.compare(i, 3, "\xE2\x86\x92") == 0) {  // →
      s += "->";
      i += 2;
      continue;
    }
    s += raw[i];
  }
  return SuffixCanon(s).run();
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string path) : text_(text), path_(std::move(path)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", span(pos_, pos_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  SourceSpan span(std::size_t start, std::size_t end) const {
    SourceSpan s;
    s.file = path_;
    s.start = start;
    s.end = end;
    s.line = line_;
    s.column = static_cast<unsigned>(start - line_start_ + 1);
    return s;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  bool starts(std::string_view s) const { return text_.compare(pos_, s.size(), s) == 0; }

  Token make(Tok kind, std::size_t len, std::string text = {}) {
    Token t{kind, std::move(text), span(pos_, pos_ + len)};
    pos_ += len;
    return t;
  }

  Token next() {
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c == '\n') {
      Token t = make(Tok::Newline, 1);
      ++line_;
      line_start_ = pos_;
      return t;
    }
    if (starts("-->")) return make(Tok::RuleArrow, 3);
    if (starts("->")) return make(Tok::Arrow, 2);
    if (starts("|-")) return make(Tok::Turnstile, 2);
    if (starts("\xCE\xBB")) return make(Tok::Lambda, 2);      // λ
    if (starts("\xCE\xA0")) return make(Tok::Pi, 2);          // Π
    if (starts("\xE2\x86\x92")) return make(Tok::Arrow, 3);   // →
    if (starts("\xE2\x9F\xB6")) return make(Tok::RuleArrow, 3);  // ⟶
    if (starts("\xE2\x8A\xA2")) return make(Tok::Turnstile, 3);  // ⊢
    switch (c) {
      case '\\':
        return make(Tok::Lambda, 1);
      case ':':
        return make(Tok::Colon, 1);
      case '.':
        return make(Tok::Dot, 1);
      case '(':
        return make(Tok::LParen, 1);
      case ')':
        return make(Tok::RParen, 1);
      case '[':
        return make(Tok::LBracket, 1);
      case ']':
        return make(Tok::RBracket, 1);
      case ',':
        return make(Tok::Comma, 1);
      case '@':
        return make(Tok::At, 1);
      default:
        break;
    }
    if (c == '#') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      std::string name(text_.substr(pos_ + 1, end - pos_ - 1));
      return make(Tok::Directive, end - pos_, name);
    }
    if (ident_start(c)) return identifier();
    std::size_t len = 1;
    if (c >= 0x80) {
      while (pos_ + len < text_.size() && (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) {
        ++len;
      }
    }
    std::string bad(text_.substr(pos_, len));
    throw ParseError(span(pos_, pos_ + len), {}, "'" + bad + "'",
                     "unexpected character '" + bad + "'");
  }

  Token identifier() {
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    std::string name(text_.substr(pos_, end - pos_));
    if (end < text_.size() && text_[end] == '{') {
      int depth = 0;
      std::size_t close = end;
      for (; close < text_.size(); ++close) {
        if (text_[close] == '\n') break;
        if (text_[close] == '{') ++depth;
        if (text_[close] == '}' && --depth == 0) break;
      }
      if (close >= text_.size() || text_[close] != '}') {
        throw ParseError(span(end, close), {"'}'"}, "end of line", "unterminated '{' in identifier");
      }
      name += "{" + canonical_suffix(text_.substr(end + 1, close - end - 1)) + "}";
      end = close + 1;
    }
    Tok kind = Tok::Ident;
    if (name == "Type") kind = Tok::Type;
    if (name == "Kind") kind = Tok::Kind;
    if (name == "Pi") kind = Tok::Pi;
    return make(kind, end - pos_, name);
  }

  std::string_view text_;
  std::string path_;
  std::size_t pos_ = 0;
  unsigned line_ = 1;
  std::size_t line_start_ = 0;
};

// Parser ----------------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view text, std::string path) : tokens_(Lexer(text, std::move(path)).run()) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k) {
    if (!at(k)) fail({describe(k)});
    return advance();
  }

  Token advance() {
    Token t = tokens_[pos_];
    if (t.kind != Tok::End) ++pos_;
    last_end_ = t.span.end;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::Ident || t.kind == Tok::Directive
                            ? "'" + (t.kind == Tok::Directive ? "#" : std::string()) + t.text + "'"
                            : describe(t.kind);
    throw ParseError(t.span, std::move(expected), found);
  }

  SourceSpan from(const SourceSpan& start) const {
    SourceSpan s = start;
    s.end = std::max(last_end_, start.end);
    return s;
  }

  void skip_newlines() {
    while (at(Tok::Newline)) advance();
  }

  void end_of_line() {
    if (!at(Tok::Newline) && !at(Tok::End)) fail({describe(Tok::Newline)});
  }

  static bool starts_atom(Tok k) {
    return k == Tok::Ident || k == Tok::Type || k == Tok::Kind || k == Tok::LParen;
  }

  SurfacePtr term() {
    if (at(Tok::Pi) || at(Tok::Lambda)) return binder();
    SourceSpan start = peek().span;
    SurfacePtr left = application();
    if (at(Tok::Arrow)) {
      advance();
      SurfacePtr right = term();
      return make_binder(SurfaceKind::Pi, "", left, right, from(start));
    }
    return left;
  }

  SurfacePtr binder() {
    SourceSpan start = peek().span;
    SurfaceKind kind = advance().kind == Tok::Pi ? SurfaceKind::Pi : SurfaceKind::Lam;
    Token name = expect(Tok::Ident);
    expect(Tok::Colon);
    SurfacePtr domain = term();
    expect(Tok::Dot);
    SurfacePtr body = term();
    return make_binder(kind, name.text, domain, body, from(start));
  }

  SurfacePtr application() {
    SourceSpan start = peek().span;
    SurfacePtr t = atom();
    while (starts_atom(peek().kind)) {
      SurfacePtr a = atom();
      t = make_app(t, a, from(start));
    }
    return t;
  }

  SurfacePtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token id = advance();
        return make_ident(id.text, id.span);
      }
      case Tok::Type:
        return make_sort(SurfaceKind::Type, advance().span);
      case Tok::Kind:
        return make_sort(SurfaceKind::Kind, advance().span);
      case Tok::LParen: {
        advance();
        SurfacePtr inner = term();
        expect(Tok::RParen);
        return inner;
      }
      default:
        fail({"identifier", "'Type'", "'Kind'", "'('", "'Pi'", "'\\'"});
    }
  }

  std::vector<SurfaceBinding> bindings(Tok close) {
    std::vector<SurfaceBinding> out;
    if (at(close)) return out;
    while (true) {
      SourceSpan start = peek().span;
      Token name = expect(Tok::Ident);
      expect(Tok::Colon);
      SurfacePtr type = term();
      out.push_back({name.text, type, from(start)});
      if (!at(Tok::Comma)) break;
      advance();
    }
    if (!at(close)) fail({"','", describe(close)});
    return out;
  }

  RuleDecl rule(std::string label, SourceSpan start) {
    expect(Tok::LBracket);
    RuleDecl r;
    r.label = std::move(label);
    r.context = bindings(Tok::RBracket);
    expect(Tok::RBracket);
    r.lhs = term();
    expect(Tok::RuleArrow);
    r.rhs = term();
    expect(Tok::Colon);
    r.type = term();
    r.span = from(start);
    return r;
  }

  TheoryItem theory_item() {
    SourceSpan start = peek().span;
    if (at(Tok::Directive)) {
      Directive d;
      d.name = advance().text;
      if (!at(Tok::Newline) && !at(Tok::End)) {
        d.args.push_back(term());
        while (at(Tok::Comma)) {
          advance();
          d.args.push_back(term());
        }
      }
      d.span = from(start);
      return d;
    }
    if (at(Tok::At)) {
      advance();
      Token label = expect(Tok::Ident);
      return rule(label.text, start);
    }
    if (at(Tok::LBracket)) return rule("", start);
    if (at(Tok::Ident)) {
      Token name = advance();
      expect(Tok::Colon);
      SurfacePtr type = term();
      return ConstDecl{name.text, type, from(start)};
    }
    fail({"identifier", "'['", "'@'", "directive"});
  }

  TheoryFile theory_file(const std::string& path) {
    TheoryFile file;
    file.path = path;
    skip_newlines();
    while (!at(Tok::End)) {
      file.items.push_back(theory_item());
      end_of_line();
      skip_newlines();
    }
    return file;
  }

  Judgement judgement() {
    Judgement j;
    SourceSpan start = peek().span;
    j.line = start.line;
    j.context = bindings(Tok::Turnstile);
    expect(Tok::Turnstile);
    j.subject = term();
    if (at(Tok::Colon)) {
      advance();
      j.type = term();
    }
    j.span = from(start);
    return j;
  }

  JudgementFile judgement_file(const std::string& path) {
    JudgementFile file;
    file.path = path;
    skip_newlines();
    while (!at(Tok::End)) {
      file.items.push_back(judgement());
      end_of_line();
      skip_newlines();
    }
    return file;
  }

  SurfacePtr single_term() {
    skip_newlines();
    SurfacePtr t = term();
    skip_newlines();
    if (!at(Tok::End)) fail({describe(Tok::End)});
    return t;
  }

  std::vector<SurfaceBinding> single_context() {
    skip_newlines();
    std::vector<SurfaceBinding> out = bindings(Tok::End);
    skip_newlines();
    if (!at(Tok::End)) fail({describe(Tok::End)});
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
};

}  // namespace

TheoryFile parse_theory_file(std::string_view text, const std::string& path) {
  return Parser(text, path).theory_file(path);
}

SurfacePtr parse_surface_term(std::string_view text, const std::string& path) {
  return Parser(text, path).single_term();
}

JudgementFile parse_judgement_file(std::string_view text, const std::string& path) {
  return Parser(text, path).judgement_file(path);
}

namespace {

std::string print_bindings(const std::vector<SurfaceBinding>& bs) {
  std::vector<std::string> parts;
  for (const SurfaceBinding& b : bs) parts.push_back(b.name + " : " + print_surface(b.type));
  return join(parts, ", ");
}

struct ItemPrinter {
  std::string operator()(const ConstDecl& d) const {
    return d.name + " : " + print_surface(d.type);
  }
  std::string operator()(const RuleDecl& r) const {
    std::string s = r.label.empty() ? "" : "@" + r.label + " ";
    return s + "[" + print_bindings(r.context) + "] " + print_surface(r.lhs) + " --> " +
           print_surface(r.rhs) + " : " + print_surface(r.type);
  }
  std::string operator()(const Directive& d) const {
    std::vector<std::string> args;
    for (const SurfacePtr& a : d.args) args.push_back(print_surface(a));
    return "#" + d.name + (args.empty() ? "" : " " + join(args, ", "));
  }
};

bool same_bindings(const std::vector<SurfaceBinding>& a, const std::vector<SurfaceBinding>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !same_surface(a[i].type, b[i].type)) return false;
  }
  return true;
}

struct ItemEquals {
  bool operator()(const ConstDecl& a, const ConstDecl& b) const {
    return a.name == b.name && same_surface(a.type, b.type);
  }
  bool operator()(const RuleDecl& a, const RuleDecl& b) const {
    return a.label == b.label && same_bindings(a.context, b.context) &&
           same_surface(a.lhs, b.lhs) && same_surface(a.rhs, b.rhs) &&
           same_surface(a.type, b.type);
  }
  bool operator()(const Directive& a, const Directive& b) const {
    if (a.name != b.name || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!same_surface(a.args[i], b.args[i])) return false;
    }
    return true;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

std::string print_theory_file(const TheoryFile& file) {
  std::string out;
  for (const TheoryItem& item : file.items) out += std::visit(ItemPrinter{}, item) + "\n";
  return out;
}

bool same_theory_file(const TheoryFile& a, const TheoryFile& b) {
  if (a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (!std::visit(ItemEquals{}, a.items[i], b.items[i])) return false;
  }
  return true;
}

// Resolution ------------------------------------------------------------------

namespace {

Term resolve_at(const SurfaceTerm& t, const Theory& theory, const Context& ctx,
                std::vector<std::string>& bound) {
  switch (t.kind) {
    case SurfaceKind::Type:
      return Term::sort_type();
    case SurfaceKind::Kind:
      return Term::sort_kind();
    case SurfaceKind::Ident: {
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (bound[i] == t.name) return Term::bvar(static_cast<std::uint32_t>(bound.size() - 1 - i));
      }
      if (ctx.contains(t.name)) return Term::fvar(t.name);
      if (theory.constant_type(t.name)) return Term::constant(t.name);
      return Term::fvar(t.name);
    }
    case SurfaceKind::App:
      return Term::app(resolve_at(*t.first, theory, ctx, bound),
                       resolve_at(*t.second, theory, ctx, bound));
    case SurfaceKind::Pi:
    case SurfaceKind::Lam: {
      Term domain = resolve_at(*t.first, theory, ctx, bound);
      bound.push_back(t.name);
      Term body = resolve_at(*t.second, theory, ctx, bound);
      bound.pop_back();
      return t.kind == SurfaceKind::Pi ? Term::pi(t.name, domain, body)
                                       : Term::lam(t.name, domain, body);
    }
  }
  throw std::logic_error("unknown surface kind");
}

Context resolve_bindings(const std::vector<SurfaceBinding>& bs, const Theory& theory) {
  Context ctx;
  for (const SurfaceBinding& b : bs) ctx.push(b.name, resolve(b.type, theory, ctx));
  return ctx;
}

}  // namespace

Term resolve(const SurfacePtr& t, const Theory& theory, const Context& ctx) {
  std::vector<std::string> bound;
  return resolve_at(*t, theory, ctx, bound);
}

Term parse_term(std::string_view text, const Theory& theory, const Context& ctx) {
  return resolve(parse_surface_term(text), theory, ctx);
}

Term parse_term(std::string_view text) { return parse_term(text, Theory{}, Context{}); }

Context parse_context(std::string_view text, const Theory& theory) {
  return resolve_bindings(Parser(text, "").single_context(), theory);
}

ResolvedJudgement resolve(const Judgement& j, const Theory& theory) {
  ResolvedJudgement r;
  r.context = resolve_bindings(j.context, theory);
  r.subject = resolve(j.subject, theory, r.context);
  if (j.type) r.type = resolve(j.type, theory, r.context);
  return r;
}

namespace {

void collect_suffixes(const SurfaceTerm& t, std::vector<std::string>& out) {
  if (t.kind == SurfaceKind::Ident) {
    std::size_t brace = t.name.find('{');
    if (brace != std::string::npos) out.push_back(t.name.substr(brace + 1, t.name.size() - brace - 2));
    return;
  }
  if (t.first) collect_suffixes(*t.first, out);
  if (t.second) collect_suffixes(*t.second, out);
}

}  // namespace

std::vector<std::string> suffix_instances(const SurfacePtr& t) {
  std::vector<std::string> out;
  if (t) collect_suffixes(*t, out);
  return out;
}

std::vector<std::string> suffix_instances(const JudgementFile& file) {
  std::vector<std::string> out;
  for (const Judgement& j : file.items) {
    for (const SurfaceBinding& b : j.context) collect_suffixes(*b.type, out);
    collect_suffixes(*j.subject, out);
    if (j.type) collect_suffixes(*j.type, out);
  }
  return out;
}

// Elaboration -----------------------------------------------------------------

namespace {

std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

bool is_plain_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return ident_char(c); });
}

/// Splits `base{P}` into (base, P); nullopt without a suffix.
std::optional<std::pair<std::string, std::string>> split_suffix(const std::string& name) {
  std::size_t brace = name.find('{');
  if (brace == std::string::npos || name.back() != '}') return std::nullopt;
  return std::make_pair(name.substr(0, brace), name.substr(brace + 1, name.size() - brace - 2));
}

struct SimpleType {
  std::string canonical;
  SurfacePtr surface;
};

class Elaborator {
 public:
  Elaborator(const TheoryFile& file, const ElaborateOptions& options)
      : file_(file), options_(options) {}

  Theory run() {
    scan_declarations();
    collect_instances();
    Theory theory;
    for (const TheoryItem& item : file_.items) {
      if (const auto* d = std::get_if<ConstDecl>(&item)) declare(theory, *d);
    }
    std::size_t rule_number = 0;
    for (const TheoryItem& item : file_.items) {
      if (const auto* r = std::get_if<RuleDecl>(&item)) add_rule(theory, *r, ++rule_number);
    }
    return theory;
  }

 private:
  void scan_declarations() {
    std::set<std::string> declared;
    for (const TheoryItem& item : file_.items) {
      if (const auto* dir = std::get_if<Directive>(&item)) {
        if (dir->name != "simpletypes") {
          throw ParseError(dir->span, {"#simpletypes"}, "'#" + dir->name + "'",
                           "unknown directive #" + dir->name);
        }
        continue;
      }
      const auto* d = std::get_if<ConstDecl>(&item);
      if (!d) continue;
      if (auto split = split_suffix(d->name);
          split && is_plain_identifier(split->second) && !declared.count(split->second)) {
        params_[split->second] = split->first;
      } else if (d->type->kind == SurfaceKind::Type) {
        base_types_.insert(d->name);
      }
      declared.insert(d->name);
    }
  }

  bool is_simple(const SurfaceTerm& t) const {
    if (t.kind == SurfaceKind::Ident) return base_types_.count(t.name) > 0;
    if (t.kind == SurfaceKind::Pi && t.name.empty()) return is_simple(*t.first) && is_simple(*t.second);
    return false;
  }

  void add_instance(const SurfacePtr& t) {
    std::string canon = strip_spaces(print_surface(t));
    for (const SimpleType& s : instances_) {
      if (s.canonical == canon) return;
    }
    instances_.push_back({canon, t});
  }

  void add_instance_text(const std::string& text) {
    SurfacePtr t;
    try {
      t = parse_surface_term(text);
    } catch (const ParseError&) {
      return;
    }
    if (is_simple(*t)) add_instance(t);
  }

  void collect_simple_subterms(const SurfacePtr& t) {
    if (!t) return;
    if (is_simple(*t)) add_instance(t);
    collect_simple_subterms(t->first);
    collect_simple_subterms(t->second);
  }

  void for_each_term(const std::function<void(const SurfacePtr&)>& fn) const {
    for (const TheoryItem& item : file_.items) {
      if (const auto* d = std::get_if<ConstDecl>(&item)) {
        fn(d->type);
      } else if (const auto* r = std::get_if<RuleDecl>(&item)) {
        for (const SurfaceBinding& b : r->context) fn(b.type);
        fn(r->lhs);
        fn(r->rhs);
        fn(r->type);
      }
    }
  }

  void collect_instances() {
    if (params_.empty()) return;
    bool directive = false;
    for (const TheoryItem& item : file_.items) {
      const auto* dir = std::get_if<Directive>(&item);
      if (!dir) continue;
      directive = true;
      for (const SurfacePtr& arg : dir->args) {
        if (!is_simple(*arg)) {
          throw ParseError(arg->span, {"simple type"}, "'" + print_surface(arg) + "'",
                           print_surface(arg) + " is not a simple type over the declared base types");
        }
        add_instance(arg);
      }
    }
    if (!directive) for_each_term([this](const SurfacePtr& t) { collect_simple_subterms(t); });
    for_each_term([this](const SurfacePtr& t) {
      for (const std::string& s : suffix_instances(t)) add_instance_text(s);
    });
    for (const std::string& s : options_.extra_simple_types) add_instance_text(s);
  }

  /// Replaces the schema parameter `param` by `value`, both as an identifier
  /// and as an identifier suffix.
  static SurfacePtr instantiate_param(const SurfacePtr& t, const std::string& param,
                                      const SimpleType& value) {
    if (!t) return t;
    if (t->kind == SurfaceKind::Ident) {
      if (t->name == param) return value.surface;
      if (auto split = split_suffix(t->name); split && split->second == param) {
        return make_ident(split->first + "{" + value.canonical + "}", t->span);
      }
      return t;
    }
    if (t->kind == SurfaceKind::Pi || t->kind == SurfaceKind::Lam) {
      SurfacePtr dom = instantiate_param(t->first, param, value);
      SurfacePtr body = t->name == param ? t->second : instantiate_param(t->second, param, value);
      return make_binder(t->kind, t->name, dom, body, t->span);
    }
    if (t->kind == SurfaceKind::App) {
      return make_app(instantiate_param(t->first, param, value),
                      instantiate_param(t->second, param, value), t->span);
    }
    return t;
  }

  static bool mentions(const SurfacePtr& t, const std::string& param) {
    if (!t) return false;
    if (t->kind == SurfaceKind::Ident) {
      if (t->name == param) return true;
      auto split = split_suffix(t->name);
      return split && split->second == param;
    }
    return mentions(t->first, param) || mentions(t->second, param);
  }

  void declare(Theory& theory, const ConstDecl& d) {
    auto split = split_suffix(d.name);
    if (split && params_.count(split->second) && params_.at(split->second) == split->first) {
      for (const SimpleType& s : instances_) {
        SurfacePtr type = instantiate_param(d.type, split->second, s);
        theory.signature.push(split->first + "{" + s.canonical + "}", resolve(type, theory, {}));
      }
      return;
    }
    theory.signature.push(d.name, resolve(d.type, theory, {}));
  }

  void add_rule(Theory& theory, const RuleDecl& r, std::size_t number) {
    std::vector<std::string> used;
    for (const auto& [param, family] : params_) {
      bool hit = mentions(r.lhs, param) || mentions(r.rhs, param) || mentions(r.type, param);
      for (const SurfaceBinding& b : r.context) hit = hit || mentions(b.type, param);
      if (hit) used.push_back(param);
    }
    std::string id = r.label.empty() ? "rule" + std::to_string(number) : r.label;
    instantiate_rule(theory, r, used, 0, id);
  }

  void instantiate_rule(Theory& theory, const RuleDecl& r, const std::vector<std::string>& params,
                        std::size_t k, const std::string& id) {
    if (k == params.size()) {
      RewriteRule rule;
      rule.id = id;
      for (const SurfaceBinding& b : r.context) {
        rule.context.push(b.name, resolve(b.type, theory, rule.context));
      }
      rule.lhs = resolve(r.lhs, theory, rule.context);
      rule.rhs = resolve(r.rhs, theory, rule.context);
      rule.type = resolve(r.type, theory, rule.context);
      theory.rules.push_back(std::move(rule));
      return;
    }
    for (const SimpleType& s : instances_) {
      RuleDecl copy = r;
      for (SurfaceBinding& b : copy.context) b.type = instantiate_param(b.type, params[k], s);
      copy.lhs = instantiate_param(r.lhs, params[k], s);
      copy.rhs = instantiate_param(r.rhs, params[k], s);
      copy.type = instantiate_param(r.type, params[k], s);
      instantiate_rule(theory, copy, params, k + 1, id + "{" + s.canonical + "}");
    }
  }

  const TheoryFile& file_;
  const ElaborateOptions& options_;
  std::map<std::string, std::string> params_;  // parameter -> family base name
  std::set<std::string> base_types_;
  std::vector<SimpleType> instances_;
};

}  // namespace

Theory elaborate(const TheoryFile& file, const ElaborateOptions& options) {
  Theory theory = Elaborator(file, options).run();
  theory.name = file.path;
  return theory;
}

Theory parse_theory(std::string_view text, const std::string& path,
                    const ElaborateOptions& options) {
  return elaborate(parse_theory_file(text, path), options);
}

std::string print_theory(const Theory& theory) {
  std::string out;
  for (const Declaration& d : theory.signature) out += d.name + " : " + print_term(d.type) + "\n";
  for (const RewriteRule& r : theory.rules) out += "@" + r.id + " " + print_rule(r) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path);
  return ss.str();
}

Theory load_theory(const std::string& ref, const ElaborateOptions& options) {
  if (std::optional<std::string_view> text = builtin_theory_text(ref)) {
    Theory t = parse_theory(*text, ref + ".th", options);
    t.name = ref;
    return t;
  }
  return parse_theory(read_file(ref), ref, options);
}

}  // namespace pimodulo
