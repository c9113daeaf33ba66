#include "extrec/parser.hpp"

#include <cctype>
#include <set>

namespace extrec {

TyVar TypeScope::lookup(const std::string &name) {
  auto &stack = names_[name];
  if (stack.empty()) stack.push_back(make(name));
  return stack.back();
}

TyVar TypeScope::bind(const std::string &name) {
  TyVar v = make(name);
  names_[name].push_back(v);
  return v;
}

void TypeScope::unbind(const std::string &name) {
  auto it = names_.find(name);
  if (it != names_.end() && !it->second.empty()) it->second.pop_back();
}

namespace {

enum class Tok {
  End,
  Ident,
  TyVarName,
  Int,
  String,
  Backslash,
  Dot,
  Eq,
  Comma,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Colon,
  DColon,
  Assign,
  Arrow,
  Plus,
  Minus,
  LAngle,
  RAngle,
  Bars,
  Semi,
  Newline,
};

const char *tok_name(Tok t) {
  switch (t) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier";
    case Tok::TyVarName:
      return "type variable";
    case Tok::Int:
      return "integer";
    case Tok::String:
      return "string";
    case Tok::Backslash:
      return "'\\'";
    case Tok::Dot:
      return "'.'";
    case Tok::Eq:
      return "'='";
    case Tok::Comma:
      return "','";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::Colon:
      return "':'";
    case Tok::DColon:
      return "'::'";
    case Tok::Assign:
      return "':='";
    case Tok::Arrow:
      return "'->'";
    case Tok::Plus:
      return "'+'";
    case Tok::Minus:
      return "'-'";
    case Tok::LAngle:
      return "'<<'";
    case Tok::RAngle:
      return "'>>'";
    case Tok::Bars:
      return "'||'";
    case Tok::Semi:
      return "';'";
    case Tok::Newline:
      return "newline";
  }
  return "?";
}

const std::set<std::string> &keywords() {
  static const std::set<std::string> kw{
      "let",    "in",     "true",   "false", "modify", "extend",
      "remove", "forall", "Int",    "Bool",  "String", "U"};
  return kw;
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view src, bool newlines) : src_(src), newlines_(newlines) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceSpan sp = here();
      if (pos_ >= src_.size()) {
        out.push_back(Token{Tok::End, "", sp});
        return out;
      }
      char c = src_[pos_];
      Token t;
      if (c == '\n') {
        advance();
        t.kind = Tok::Newline;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        t.text = word();
      } else if (c == '\'') {
        advance();
        if (pos_ >= src_.size() ||
            !(std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          error("expected a type variable name after '\\''", sp);
        }
        t.kind = Tok::TyVarName;
        t.text = word();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        t.kind = Tok::Int;
        t.text.push_back(c);
        advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text.push_back(src_[pos_]);
          advance();
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = string_lit(sp);
      } else {
        t.kind = symbol(sp);
      }
      t.span = sp;
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  std::string_view src_;
  bool newlines_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  SourceSpan here() const { return SourceSpan{pos_, pos_, line_, col_}; }

  [[noreturn]] void error(const std::string &msg, SourceSpan sp) {
    sp.end = std::max(pos_, sp.start);
    throw ParseError(std::to_string(sp.line) + ":" + std::to_string(sp.column) +
                         ": " + msg,
                     sp);
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '\n' && newlines_) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string word() {
    std::string w;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      w.push_back(src_[pos_]);
      advance();
    }
    return w;
  }

  std::string string_lit(SourceSpan sp) {
    advance();
    std::string s;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') error("unterminated string", sp);
      char c = src_[pos_];
      advance();
      if (c == '"') return s;
      if (c != '\\') {
        s.push_back(c);
        continue;
      }
      if (pos_ >= src_.size()) error("unterminated string", sp);
      char e = src_[pos_];
      advance();
      switch (e) {
        case 'n':
          s.push_back('\n');
          break;
        case 't':
          s.push_back('\t');
          break;
        case '"':
        case '\\':
          s.push_back(e);
          break;
        default:
          error(std::string("unknown escape '\\") + e + "'", sp);
      }
    }
  }

  Tok symbol(SourceSpan sp) {
    auto two = [&](char a, char b) {
      return src_[pos_] == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    auto take = [&](int n, Tok t) {
      for (int i = 0; i < n; ++i) advance();
      return t;
    };
    if (two(':', ':')) return take(2, Tok::DColon);
    if (two(':', '=')) return take(2, Tok::Assign);
    if (two('-', '>')) return take(2, Tok::Arrow);
    if (two('<', '<')) return take(2, Tok::LAngle);
    if (two('>', '>')) return take(2, Tok::RAngle);
    if (two('|', '|')) return take(2, Tok::Bars);
    switch (src_[pos_]) {
      case '\\':
        return take(1, Tok::Backslash);
      case '.':
        return take(1, Tok::Dot);
      case '=':
        return take(1, Tok::Eq);
      case ',':
        return take(1, Tok::Comma);
      case '{':
        return take(1, Tok::LBrace);
      case '}':
        return take(1, Tok::RBrace);
      case '(':
        return take(1, Tok::LParen);
      case ')':
        return take(1, Tok::RParen);
      case ':':
        return take(1, Tok::Colon);
      case '+':
        return take(1, Tok::Plus);
      case '-':
        return take(1, Tok::Minus);
      case ';':
        return take(1, Tok::Semi);
    }
    error(std::string("unexpected character '") + src_[pos_] + "'", sp);
  }
};

class Parser {
 public:
  Parser(std::vector<Token> toks, TypeScope *scope)
      : toks_(std::move(toks)), scope_(scope ? scope : &own_) {}

  // ----- terms -----

  Term term() {
    const Token &t = peek();
    if (t.kind == Tok::Backslash) {
      SourceSpan sp = next().span;
      std::string x = ident("parameter name");
      expect(Tok::Dot);
      Term body = term();
      return make_abs(std::move(x), body, join(sp, body->span));
    }
    if (is_kw(t, "let")) {
      SourceSpan sp = next().span;
      std::string x = ident("bound name");
      expect(Tok::Eq);
      Term bound = term();
      expect_kw("in");
      Term body = term();
      return make_let(std::move(x), bound, body, join(sp, body->span));
    }
    return appterm();
  }

  Term appterm() {
    Term f = postfix();
    while (starts_atom(peek())) {
      Term a = postfix();
      f = make_app(f, a, join(f->span, a->span));
    }
    return f;
  }

  Term postfix() {
    Term t = atom();
    while (peek().kind == Tok::Dot) {
      next();
      SourceSpan lsp = peek().span;
      Label l = label();
      t = make_select(t, std::move(l), join(t->span, lsp));
    }
    return t;
  }

  Term atom() {
    const Token &t = peek();
    SourceSpan sp = t.span;
    switch (t.kind) {
      case Tok::Int: {
        std::string text = next().text;
        try {
          return make_int(std::stoll(text), sp);
        } catch (const std::out_of_range &) {
          fail("integer literal out of range", sp);
        }
      }
      case Tok::String:
        return make_string(next().text, sp);
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::LBrace:
        return record_lit();
      case Tok::Ident:
        break;
      default:
        fail_expected({"term"});
    }
    if (is_kw(t, "true")) {
      next();
      return make_bool(true, sp);
    }
    if (is_kw(t, "false")) {
      next();
      return make_bool(false, sp);
    }
    if (is_kw(t, "modify") || is_kw(t, "extend")) {
      bool mod = t.text == "modify";
      next();
      expect(Tok::LParen);
      Term r = term();
      expect(Tok::Comma);
      Label l = label();
      expect(Tok::Comma);
      Term v = term();
      SourceSpan end = expect(Tok::RParen).span;
      return mod ? make_modify(r, std::move(l), v, join(sp, end))
                 : make_extend(r, std::move(l), v, join(sp, end));
    }
    if (is_kw(t, "remove")) {
      next();
      expect(Tok::LParen);
      Term r = term();
      expect(Tok::Comma);
      Label l = label();
      SourceSpan end = expect(Tok::RParen).span;
      return make_remove(r, std::move(l), join(sp, end));
    }
    return make_tvar(ident("variable"), sp);
  }

  Term record_lit() {
    SourceSpan sp = expect(Tok::LBrace).span;
    std::vector<std::pair<Label, Term>> fields;
    std::set<Label> seen;
    if (peek().kind != Tok::RBrace) {
      do {
        SourceSpan lsp = peek().span;
        Label l = label();
        if (!seen.insert(l).second) fail("duplicate label '" + l + "'", lsp);
        expect(Tok::Eq);
        fields.emplace_back(std::move(l), term());
      } while (accept(Tok::Comma));
    }
    SourceSpan end = expect(Tok::RBrace).span;
    return make_record_lit(std::move(fields), join(sp, end));
  }

  // ----- types -----

  PolyType poly() {
    std::vector<Quantifier> qs;
    std::vector<std::string> bound;
    while (is_kw(peek(), "forall")) {
      next();
      std::string name = tyvar_name();
      expect(Tok::DColon);
      Kind k = kind();
      expect(Tok::Dot);
      qs.push_back(Quantifier{scope_->bind(name), std::move(k)});
      bound.push_back(name);
    }
    Type body = mono();
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) scope_->unbind(*it);
    return PolyType(std::move(qs), std::move(body));
  }

  Type mono() {
    Type t = extty();
    if (accept(Tok::Arrow)) return make_arrow(t, mono());
    return t;
  }

  Type extty() {
    SourceSpan sp = peek().span;
    Type t = atomty();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool ext = next().kind == Tok::Plus;
      if (!is_extensible(t)) {
        fail("field operation on a non-extensible type", sp);
      }
      expect(Tok::LBrace);
      Label l = label();
      expect(Tok::Colon);
      Type f = mono();
      expect(Tok::RBrace);
      t = ext ? make_ext(t, std::move(l), f) : make_contr(t, std::move(l), f);
    }
    return t;
  }

  Type atomty() {
    const Token &t = peek();
    switch (t.kind) {
      case Tok::TyVarName:
        return make_var(scope_->lookup(next().text));
      case Tok::LBrace: {
        next();
        FieldMap f = fields(Tok::RBrace);
        expect(Tok::RBrace);
        return make_record(std::move(f));
      }
      case Tok::LParen: {
        next();
        Type inner = mono();
        expect(Tok::RParen);
        return inner;
      }
      default:
        break;
    }
    if (is_kw(t, "Int")) {
      next();
      return int_type();
    }
    if (is_kw(t, "Bool")) {
      next();
      return bool_type();
    }
    if (is_kw(t, "String")) {
      next();
      return string_type();
    }
    fail_expected({"type"});
  }

  FieldMap fields(Tok close) {
    FieldMap f;
    if (peek().kind == close) return f;
    do {
      SourceSpan lsp = peek().span;
      Label l = label();
      expect(Tok::Colon);
      Type t = mono();
      if (!f.emplace(l, std::move(t)).second) {
        fail("duplicate label '" + l + "'", lsp);
      }
    } while (accept(Tok::Comma));
    return f;
  }

  Kind kind() {
    if (is_kw(peek(), "U")) {
      next();
      return Kind::U();
    }
    if (peek().kind != Tok::LAngle) fail_expected({"kind"});
    next();
    FieldMap l = fields(Tok::Bars);
    expect(Tok::Bars);
    FieldMap r = fields(Tok::RAngle);
    expect(Tok::RAngle);
    return Kind::record(std::move(l), std::move(r));
  }

  // ----- declarations -----

  void declaration(Environment &env) {
    const Token &t = peek();
    if (t.kind == Tok::TyVarName) {
      SourceSpan sp = t.span;
      TyVar v = scope_->lookup(next().text);
      expect(Tok::DColon);
      Kind k = kind();
      if (!env.kinds.emplace(v, std::move(k)).second) {
        fail("type variable declared twice", sp);
      }
      return;
    }
    if (t.kind == Tok::Ident && !keywords().count(t.text)) {
      SourceSpan sp = t.span;
      std::string x = next().text;
      expect(Tok::Colon);
      PolyType s = poly();
      if (!env.gamma.emplace(x, std::move(s)).second) {
        fail("variable '" + x + "' declared twice", sp);
      }
      return;
    }
    fail_expected({"type variable", "identifier"});
  }

  void binding(Substitution &s) {
    SourceSpan sp = peek().span;
    TyVar v = scope_->lookup(tyvar_name());
    expect(Tok::Assign);
    if (!s.emplace(v, mono()).second) fail("type variable bound twice", sp);
  }

  Equation equation() {
    Type l = mono();
    expect(Tok::Eq);
    return Equation{l, mono()};
  }

  // ----- plumbing -----

  bool at(Tok k) const { return peek().kind == k; }

  void end() {
    if (!at(Tok::End)) fail_expected({tok_name(Tok::End)});
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  TypeScope own_;
  TypeScope *scope_;

  const Token &peek() const { return toks_[pos_]; }

  const Token &next() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  static bool is_kw(const Token &t, const char *kw) {
    return t.kind == Tok::Ident && t.text == kw;
  }

  static bool starts_atom(const Token &t) {
    switch (t.kind) {
      case Tok::Int:
      case Tok::String:
      case Tok::LParen:
      case Tok::LBrace:
        return true;
      case Tok::Ident:
        return t.text != "let" && t.text != "in" && t.text != "forall";
      default:
        return false;
    }
  }

  static SourceSpan join(SourceSpan a, SourceSpan b) {
    a.end = std::max(a.end, b.end);
    return a;
  }

  [[noreturn]] void fail(const std::string &msg, SourceSpan sp) const {
    throw ParseError(std::to_string(sp.line) + ":" + std::to_string(sp.column) +
                         ": " + msg,
                     sp);
  }

  [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
    const Token &t = peek();
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found ";
    msg += t.kind == Tok::Ident || t.kind == Tok::TyVarName
               ? "'" + std::string(t.kind == Tok::TyVarName ? "'" : "") + t.text + "'"
               : std::string(tok_name(t.kind));
    throw ParseError(std::to_string(t.span.line) + ":" +
                         std::to_string(t.span.column) + ": " + msg,
                     t.span, std::move(expected));
  }

  const Token &expect(Tok k) {
    if (!at(k)) fail_expected({tok_name(k)});
    return next();
  }

  void expect_kw(const char *kw) {
    if (!is_kw(peek(), kw)) fail_expected({std::string("'") + kw + "'"});
    next();
  }

  std::string ident(const char *what) {
    const Token &t = peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) fail_expected({what});
    return next().text;
  }

  Label label() { return ident("label"); }

  std::string tyvar_name() {
    if (!at(Tok::TyVarName)) fail_expected({tok_name(Tok::TyVarName)});
    return next().text;
  }
};

Parser make_parser(std::string_view text, TypeScope *scope, bool newlines = false) {
  return Parser(Lexer(text, newlines).run(), scope);
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p = make_parser(text, nullptr);
  Term t = p.term();
  p.end();
  return t;
}

PolyType parse_type(std::string_view text, TypeScope *scope) {
  Parser p = make_parser(text, scope);
  PolyType t = p.poly();
  p.end();
  return t;
}

Type parse_mono(std::string_view text, TypeScope *scope) {
  Parser p = make_parser(text, scope);
  Type t = p.mono();
  p.end();
  return t;
}

Kind parse_kind(std::string_view text, TypeScope *scope) {
  Parser p = make_parser(text, scope);
  Kind k = p.kind();
  p.end();
  return k;
}

void parse_env_into(std::string_view text, Environment &env) {
  Parser p = make_parser(text, &env.scope, true);
  for (;;) {
    while (p.accept(Tok::Newline)) {
    }
    if (p.at(Tok::End)) return;
    p.declaration(env);
    if (!p.accept(Tok::Newline)) p.end();
  }
}

Environment parse_env(std::string_view text) {
  Environment env;
  parse_env_into(text, env);
  return env;
}

Substitution parse_substitution(std::string_view text, TypeScope *scope) {
  Parser p = make_parser(text, scope, true);
  Substitution s;
  for (;;) {
    while (p.accept(Tok::Newline)) {
    }
    if (p.at(Tok::End)) return s;
    p.binding(s);
    if (!p.accept(Tok::Newline)) p.end();
  }
}

EquationSet parse_equations(std::string_view text, TypeScope *scope) {
  Parser p = make_parser(text, scope, true);
  EquationSet eqs;
  for (;;) {
    while (p.accept(Tok::Newline) || p.accept(Tok::Semi)) {
    }
    if (p.at(Tok::End)) return eqs;
    eqs.push_back(p.equation());
    if (!p.accept(Tok::Newline) && !p.accept(Tok::Semi)) p.end();
  }
}

}  // namespace extrec
