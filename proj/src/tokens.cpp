#include "proofsynth/tokens.hpp"

#include <cctype>

namespace proofsynth {

std::string Token::str() const {
  switch (kind) {
    case TokenKind::Atom:
    case TokenKind::Var:
    case TokenKind::Unknown: return text;
    case TokenKind::Arrow: return "->";
    case TokenKind::Times: return "*";
    case TokenKind::Plus: return "+";
    case TokenKind::LParen: return "(";
    case TokenKind::RParen: return ")";
    case TokenKind::Lambda: return "λ";
    case TokenKind::Dot: return ".";
    case TokenKind::Comma: return ",";
    case TokenKind::Case: return "case";
    case TokenKind::Of: return "of";
    case TokenKind::LBrace: return "{";
    case TokenKind::RBrace: return "}";
    case TokenKind::Semi: return ";";
    case TokenKind::Left: return "Left";
    case TokenKind::Right: return "Right";
    case TokenKind::Hole: return "_";
    case TokenKind::Eos: return "<EOS>";
  }
  return "?";
}

bool token_less(const Token& a, const Token& b) {
  auto sa = a.str(), sb = b.str();
  if (sa != sb) return sa < sb;
  return a.kind < b.kind;
}

std::string to_text(const TokenSeq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += s[i].str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexing

namespace {

bool starts_with(std::string_view s, std::size_t i, std::string_view p) { return s.substr(i, p.size()) == p; }

bool ident_start(unsigned char c) { return std::isalpha(c) != 0; }
bool ident_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_' || c == '\''; }

// Greek letter prefixes accepted for atoms.
struct Greek {
  std::string_view utf8;
  char ascii;
};
constexpr Greek kGreek[] = {{"α", 'a'}, {"β", 'b'}, {"γ", 'c'}, {"δ", 'd'}};

std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

TokenSeq lex(std::string_view s, bool type_mode) {
  TokenSeq out;
  std::size_t i = 0;
  auto ident_token = [&](std::string name) {
    if (name == "case") return Token::of(TokenKind::Case);
    if (name == "of") return Token::of(TokenKind::Of);
    if (name == "Left") return Token::of(TokenKind::Left);
    if (name == "Right") return Token::of(TokenKind::Right);
    return type_mode ? Token::atom(std::move(name)) : Token::var(std::move(name));
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (starts_with(s, i, "->")) {
      out.push_back(Token::of(TokenKind::Arrow));
      i += 2;
      continue;
    }
    if (starts_with(s, i, "→")) {
      out.push_back(Token::of(TokenKind::Arrow));
      i += std::string_view("→").size();
      continue;
    }
    if (starts_with(s, i, "×")) {
      out.push_back(Token::of(TokenKind::Times));
      i += std::string_view("×").size();
      continue;
    }
    if (starts_with(s, i, "λ")) {
      out.push_back(Token::of(TokenKind::Lambda));
      i += std::string_view("λ").size();
      continue;
    }
    if (starts_with(s, i, "<EOS>")) {
      out.push_back(Token::of(TokenKind::Eos));
      i += 5;
      continue;
    }
    bool greek = false;
    for (const auto& g : kGreek) {
      if (!starts_with(s, i, g.utf8)) continue;
      std::size_t j = i + g.utf8.size();
      std::string name(1, g.ascii);
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) name += s[j++];
      out.push_back(ident_token(std::move(name)));
      i = j;
      greek = true;
      break;
    }
    if (greek) continue;
    switch (c) {
      case '*': out.push_back(Token::of(TokenKind::Times)); ++i; continue;
      case '+': out.push_back(Token::of(TokenKind::Plus)); ++i; continue;
      case '(': out.push_back(Token::of(TokenKind::LParen)); ++i; continue;
      case ')': out.push_back(Token::of(TokenKind::RParen)); ++i; continue;
      case '\\': out.push_back(Token::of(TokenKind::Lambda)); ++i; continue;
      case '.': out.push_back(Token::of(TokenKind::Dot)); ++i; continue;
      case ',': out.push_back(Token::of(TokenKind::Comma)); ++i; continue;
      case '{': out.push_back(Token::of(TokenKind::LBrace)); ++i; continue;
      case '}': out.push_back(Token::of(TokenKind::RBrace)); ++i; continue;
      case ';': out.push_back(Token::of(TokenKind::Semi)); ++i; continue;
      case '_':
        if (i + 1 >= s.size() || !ident_char(static_cast<unsigned char>(s[i + 1]))) {
          out.push_back(Token::of(TokenKind::Hole));
          ++i;
          continue;
        }
        break;
      default: break;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back(ident_token(std::string(s.substr(i, j - i))));
      i = j;
      continue;
    }
    // Unknown: consume up to the next whitespace as one token.
    std::size_t j = i + utf8_len(c);
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) j += utf8_len(static_cast<unsigned char>(s[j]));
    out.push_back({TokenKind::Unknown, std::string(s.substr(i, j - i))});
    i = j;
  }
  return out;
}

}  // namespace

TokenSeq lex_type(std::string_view text) { return lex(text, true); }
TokenSeq lex_term(std::string_view text) { return lex(text, false); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

void emit_type(const TypeExpr& t, TokenSeq& out);

void emit_type_paren(const TypeExpr& t, bool paren, TokenSeq& out) {
  if (paren) out.push_back(Token::of(TokenKind::LParen));
  emit_type(t, out);
  if (paren) out.push_back(Token::of(TokenKind::RParen));
}

void emit_type(const TypeExpr& t, TokenSeq& out) {
  switch (t.kind()) {
    case TypeKind::Atom: out.push_back(Token::atom(t.name())); return;
    case TypeKind::Arrow:
      emit_type_paren(t.left(), t.left().kind() == TypeKind::Arrow, out);
      out.push_back(Token::of(TokenKind::Arrow));
      emit_type(t.right(), out);
      return;
    case TypeKind::Prod:
    case TypeKind::Sum: {
      TypeKind other = t.kind() == TypeKind::Prod ? TypeKind::Sum : TypeKind::Prod;
      auto lk = t.left().kind(), rk = t.right().kind();
      emit_type_paren(t.left(), lk == TypeKind::Arrow || lk == other, out);
      out.push_back(Token::of(t.kind() == TypeKind::Prod ? TokenKind::Times : TokenKind::Plus));
      emit_type_paren(t.right(), rk != TypeKind::Atom, out);
      return;
    }
  }
}

void emit_term(const Term& t, TokenSeq& out) {
  auto open = [&] { out.push_back(Token::of(TokenKind::LParen)); };
  auto close = [&] { out.push_back(Token::of(TokenKind::RParen)); };
  auto tok = [&](TokenKind k) { out.push_back(Token::of(k)); };
  switch (t.kind()) {
    case TermKind::Hole: tok(TokenKind::Hole); return;
    case TermKind::Var: out.push_back(Token::var(t.name())); return;
    case TermKind::Lam:
      open();
      tok(TokenKind::Lambda);
      out.push_back(Token::var(t.name()));
      tok(TokenKind::Dot);
      emit_term(t.child(0), out);
      close();
      return;
    case TermKind::App:
      open();
      emit_term(t.child(0), out);
      emit_term(t.child(1), out);
      close();
      return;
    case TermKind::Pair:
      open();
      emit_term(t.child(0), out);
      tok(TokenKind::Comma);
      emit_term(t.child(1), out);
      close();
      return;
    case TermKind::CasePair:
      open();
      tok(TokenKind::Case);
      emit_term(t.child(0), out);
      tok(TokenKind::Of);
      open();
      out.push_back(Token::var(t.name()));
      tok(TokenKind::Comma);
      out.push_back(Token::var(t.name2()));
      close();
      tok(TokenKind::Arrow);
      emit_term(t.child(1), out);
      close();
      return;
    case TermKind::InjL:
    case TermKind::InjR:
      open();
      tok(t.kind() == TermKind::InjL ? TokenKind::Left : TokenKind::Right);
      emit_term(t.child(0), out);
      close();
      return;
    case TermKind::CaseSum:
      open();
      tok(TokenKind::Case);
      emit_term(t.child(0), out);
      tok(TokenKind::Of);
      tok(TokenKind::LBrace);
      tok(TokenKind::Left);
      out.push_back(Token::var(t.name()));
      tok(TokenKind::Arrow);
      emit_term(t.child(1), out);
      tok(TokenKind::Semi);
      tok(TokenKind::Right);
      out.push_back(Token::var(t.name2()));
      tok(TokenKind::Arrow);
      emit_term(t.child(2), out);
      tok(TokenKind::RBrace);
      close();
      return;
  }
}

}  // namespace

TokenSeq tokenize_type(const TypeExpr& t) {
  TokenSeq out;
  emit_type(t, out);
  return out;
}

TokenSeq tokenize_term(const Term& t) {
  TokenSeq out;
  emit_term(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Cursor {
 public:
  explicit Cursor(const TokenSeq& s) : s_(s) {}

  bool at_end() const { return pos_ >= s_.size(); }
  bool peek(TokenKind k) const { return !at_end() && s_[pos_].kind == k; }
  std::size_t pos() const { return pos_; }

  const Token& expect(TokenKind k, const char* what) {
    if (!peek(k)) fail(std::string("expected ") + what);
    return s_[pos_++];
  }
  bool accept(TokenKind k) {
    if (!peek(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

 private:
  const TokenSeq& s_;
  std::size_t pos_ = 0;
};

TypeExpr parse_arrow_type(Cursor& c);

TypeExpr parse_atomic_type(Cursor& c) {
  if (c.peek(TokenKind::Atom)) return TypeExpr::atom(c.expect(TokenKind::Atom, "atom").text);
  c.expect(TokenKind::LParen, "atom or '('");
  TypeExpr t = parse_arrow_type(c);
  c.expect(TokenKind::RParen, "')'");
  return t;
}

TypeExpr parse_prodsum_type(Cursor& c) {
  TypeExpr t = parse_atomic_type(c);
  for (;;) {
    if (c.accept(TokenKind::Times)) {
      t = TypeExpr::prod(t, parse_atomic_type(c));
    } else if (c.accept(TokenKind::Plus)) {
      t = TypeExpr::sum(t, parse_atomic_type(c));
    } else {
      return t;
    }
  }
}

TypeExpr parse_arrow_type(Cursor& c) {
  TypeExpr l = parse_prodsum_type(c);
  if (c.accept(TokenKind::Arrow)) return TypeExpr::arrow(l, parse_arrow_type(c));
  return l;
}

Term parse_expr(Cursor& c);

bool starts_aexpr(const Cursor& c) {
  return c.peek(TokenKind::Var) || c.peek(TokenKind::Hole) || c.peek(TokenKind::LParen);
}

Term parse_aexpr(Cursor& c) {
  if (c.peek(TokenKind::Var)) return Term::var(c.expect(TokenKind::Var, "variable").text);
  if (c.accept(TokenKind::Hole)) return Term::hole();
  c.expect(TokenKind::LParen, "term");
  Term inner = parse_expr(c);
  if (c.accept(TokenKind::Comma)) {
    Term snd = parse_expr(c);
    c.expect(TokenKind::RParen, "')'");
    return Term::pair(inner, snd);
  }
  c.expect(TokenKind::RParen, "')'");
  return inner;
}

Term parse_expr(Cursor& c) {
  if (c.accept(TokenKind::Lambda)) {
    std::string x = c.expect(TokenKind::Var, "binder").text;
    c.expect(TokenKind::Dot, "'.'");
    return Term::lam(x, parse_expr(c));
  }
  if (c.accept(TokenKind::Case)) {
    Term scrut = parse_expr(c);
    c.expect(TokenKind::Of, "'of'");
    if (c.accept(TokenKind::LParen)) {
      std::string x = c.expect(TokenKind::Var, "binder").text;
      c.expect(TokenKind::Comma, "','");
      std::string y = c.expect(TokenKind::Var, "binder").text;
      c.expect(TokenKind::RParen, "')'");
      c.expect(TokenKind::Arrow, "'->'");
      return Term::case_pair(scrut, x, y, parse_expr(c));
    }
    c.expect(TokenKind::LBrace, "'(' or '{'");
    c.expect(TokenKind::Left, "'Left'");
    std::string x = c.expect(TokenKind::Var, "binder").text;
    c.expect(TokenKind::Arrow, "'->'");
    Term l = parse_expr(c);
    c.expect(TokenKind::Semi, "';'");
    c.expect(TokenKind::Right, "'Right'");
    std::string y = c.expect(TokenKind::Var, "binder").text;
    c.expect(TokenKind::Arrow, "'->'");
    Term r = parse_expr(c);
    c.expect(TokenKind::RBrace, "'}'");
    return Term::case_sum(scrut, x, l, y, r);
  }
  if (c.accept(TokenKind::Left)) return Term::inj_l(parse_aexpr(c));
  if (c.accept(TokenKind::Right)) return Term::inj_r(parse_aexpr(c));
  Term t = parse_aexpr(c);
  while (starts_aexpr(c)) t = Term::app(t, parse_aexpr(c));
  return t;
}

}  // namespace

TypeExpr parse_type(const TokenSeq& s) {
  Cursor c(s);
  TypeExpr t = parse_arrow_type(c);
  if (!c.at_end()) c.fail("unexpected token");
  return t;
}

Term parse_term(const TokenSeq& s) {
  Cursor c(s);
  Term t = parse_expr(c);
  if (!c.at_end()) c.fail("unexpected token");
  return t;
}

std::optional<Term> try_parse_term(const TokenSeq& s) {
  try {
    return parse_term(s);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

TypeExpr parse_type_text(std::string_view text) { return parse_type(lex_type(text)); }
Term parse_term_text(std::string_view text) { return parse_term(lex_term(text)); }

std::string type_text(const TypeExpr& t) { return to_text(tokenize_type(t)); }
std::string term_text(const Term& t) { return to_text(tokenize_term(t)); }

std::set<std::string> vocabulary(const std::vector<TokenSeq>& seqs) {
  std::set<std::string> v;
  for (const auto& s : seqs)
    for (const auto& t : s) v.insert(t.str());
  return v;
}

}  // namespace proofsynth
