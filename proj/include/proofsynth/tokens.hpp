#pragma once

// Token-sequence form of types and terms: the concrete syntax exchanged with
// guides and stored in dataset files. The canonical text of a sequence is
// its tokens joined by single spaces, e.g. "( λ x0 . x0 )" or "a -> b * c".

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofsynth/term.hpp"

namespace proofsynth {

enum class TokenKind : std::uint8_t {
  Atom,
  Var,
  Arrow,  // "->" in types and case arms
  Times,
  Plus,
  LParen,
  RParen,
  Lambda,
  Dot,
  Comma,
  Case,
  Of,
  LBrace,
  RBrace,
  Semi,
  Left,
  Right,
  Hole,
  Eos,
  Unknown,
};

struct Token {
  TokenKind kind;
  std::string text;  // name for Atom/Var, raw text for Unknown, else empty

  static Token of(TokenKind k) { return {k, {}}; }
  static Token atom(std::string name) { return {TokenKind::Atom, std::move(name)}; }
  static Token var(std::string name) { return {TokenKind::Var, std::move(name)}; }

  // Canonical rendering.
  std::string str() const;

  friend bool operator==(const Token& a, const Token& b) { return a.kind == b.kind && a.text == b.text; }
  friend bool operator!=(const Token& a, const Token& b) { return !(a == b); }
};

// Total order on tokens: bytewise order of the canonical rendering, then kind.
bool token_less(const Token& a, const Token& b);

using TokenSeq = std::vector<Token>;

std::string to_text(const TokenSeq& s);

// Lexes text. Accepts the canonical ASCII forms and the Unicode forms
// "→", "×", "λ" (also "\"); Greek atoms α, β, γ, δ map to a, b, c, d keeping
// any numeric suffix. Identifiers become Atom tokens in type mode and Var
// tokens in term mode; anything unrecognised becomes an Unknown token.
TokenSeq lex_type(std::string_view text);
TokenSeq lex_term(std::string_view text);

// Minimal parenthesization: ×/+ bind tighter than →, → associates to the
// right, × and + to the left, and a product and a sum nested in each other
// are always parenthesized.
TokenSeq tokenize_type(const TypeExpr& t);

// Every compound term is wrapped in parentheses; a hole renders as "_".
TokenSeq tokenize_term(const Term& t);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what + " at token " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

TypeExpr parse_type(const TokenSeq& s);
Term parse_term(const TokenSeq& s);
std::optional<Term> try_parse_term(const TokenSeq& s);

TypeExpr parse_type_text(std::string_view text);
Term parse_term_text(std::string_view text);

std::string type_text(const TypeExpr& t);
std::string term_text(const Term& t);

// Distinct canonical token strings occurring in the given sequences.
std::set<std::string> vocabulary(const std::vector<TokenSeq>& seqs);

}  // namespace proofsynth
