#pragma once

// Breadth-first search over insert/delete edit scripts: the closest
// parsable sequences by brute force. Inserted variables are named x0, like
// the repairer's, so the two can be compared token for token.
//
// Sequences are encoded one byte per token and checked with a small
// recognizer of their own, so the oracle shares no code with the parser.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "proofsynth/tokens.hpp"

namespace proofsynth::testing {

inline const std::vector<Token>& repair_alphabet() {
  static const std::vector<Token> a = {
      Token::of(TokenKind::LParen), Token::of(TokenKind::RParen), Token::of(TokenKind::Lambda),
      Token::of(TokenKind::Dot),    Token::of(TokenKind::Comma),  Token::of(TokenKind::Case),
      Token::of(TokenKind::Of),     Token::of(TokenKind::LBrace), Token::of(TokenKind::RBrace),
      Token::of(TokenKind::Semi),   Token::of(TokenKind::Left),   Token::of(TokenKind::Right),
      Token::of(TokenKind::Arrow),  Token::var("x0"),
  };
  return a;
}

struct SeqLess {
  bool operator()(const TokenSeq& a, const TokenSeq& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), token_less);
  }
};

// Byte codes: the token kind, or 'v' + index for variables.
class SeqCodec {
 public:
  std::string encode(const TokenSeq& s) {
    std::string out;
    for (const auto& t : s) out.push_back(code(t));
    return out;
  }
  char code(const Token& t) {
    if (t.kind != TokenKind::Var) return static_cast<char>(t.kind);
    auto [it, fresh] = vars_.emplace(t.text, static_cast<char>(kVar + vars_.size()));
    if (fresh) names_.push_back(t.text);
    return it->second;
  }
  TokenSeq decode(const std::string& s) const {
    TokenSeq out;
    for (char c : s) {
      if (static_cast<unsigned char>(c) >= kVar)
        out.push_back(Token::var(names_[static_cast<unsigned char>(c) - kVar]));
      else
        out.push_back(Token::of(static_cast<TokenKind>(c)));
    }
    return out;
  }
  static constexpr unsigned char kVar = 64;

 private:
  std::map<std::string, char> vars_;
  std::vector<std::string> names_;
};

// Recognizer for the hole-free term language.
class Recognizer {
 public:
  explicit Recognizer(const std::string& s) : s_(s) {}
  bool accepts() { return expr() && i_ == s_.size(); }

 private:
  bool is(TokenKind k) const { return i_ < s_.size() && s_[i_] == static_cast<char>(k); }
  bool eat(TokenKind k) {
    if (!is(k)) return false;
    ++i_;
    return true;
  }
  bool var() {
    if (i_ < s_.size() && static_cast<unsigned char>(s_[i_]) >= SeqCodec::kVar) {
      ++i_;
      return true;
    }
    return false;
  }
  bool aexpr_start() const {
    return is(TokenKind::LParen) || (i_ < s_.size() && static_cast<unsigned char>(s_[i_]) >= SeqCodec::kVar);
  }
  bool aexpr() {
    if (var()) return true;
    if (!eat(TokenKind::LParen) || !expr()) return false;
    if (eat(TokenKind::RParen)) return true;
    return eat(TokenKind::Comma) && expr() && eat(TokenKind::RParen);
  }
  bool expr() {
    if (eat(TokenKind::Lambda)) return var() && eat(TokenKind::Dot) && expr();
    if (eat(TokenKind::Case)) {
      if (!expr() || !eat(TokenKind::Of)) return false;
      if (eat(TokenKind::LParen))
        return var() && eat(TokenKind::Comma) && var() && eat(TokenKind::RParen) && eat(TokenKind::Arrow) && expr();
      return eat(TokenKind::LBrace) && eat(TokenKind::Left) && var() && eat(TokenKind::Arrow) && expr() &&
             eat(TokenKind::Semi) && eat(TokenKind::Right) && var() && eat(TokenKind::Arrow) && expr() &&
             eat(TokenKind::RBrace);
    }
    if (eat(TokenKind::Left) || eat(TokenKind::Right)) return aexpr();
    if (!aexpr()) return false;
    while (aexpr_start())
      if (!aexpr()) return false;
    return true;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

struct OracleRepair {
  std::size_t distance;
  std::set<TokenSeq, SeqLess> best;  // all parsable sequences at that distance
};

// Searches up to `bound` edits; distance is bound + 1 and `best` is empty if
// nothing parsable was found.
inline OracleRepair oracle_repair(const TokenSeq& s, std::size_t bound) {
  SeqCodec codec;
  std::string start = codec.encode(s);
  std::string alphabet;
  for (const auto& t : repair_alphabet()) alphabet.push_back(codec.code(t));
  std::unordered_set<std::string> seen{start};
  std::vector<std::string> level{start};
  for (std::size_t d = 0; d <= bound; ++d) {
    OracleRepair r{d, {}};
    for (const auto& q : level)
      if (Recognizer(q).accepts()) r.best.insert(codec.decode(q));
    if (!r.best.empty()) return r;
    if (d == bound) break;
    std::vector<std::string> next;
    for (const auto& q : level) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        std::string e = q;
        e.erase(i, 1);
        if (seen.insert(e).second) next.push_back(std::move(e));
      }
      for (std::size_t i = 0; i <= q.size(); ++i)
        for (char c : alphabet) {
          std::string e = q;
          e.insert(e.begin() + static_cast<long>(i), c);
          if (seen.insert(e).second) next.push_back(std::move(e));
        }
    }
    level = std::move(next);
  }
  return {bound + 1, {}};
}

inline bool recognizes(const TokenSeq& s) {
  SeqCodec codec;
  for (const auto& t : s)
    if (t.kind == TokenKind::Hole || t.kind == TokenKind::Eos || t.kind == TokenKind::Unknown ||
        t.kind == TokenKind::Atom || t.kind == TokenKind::Times || t.kind == TokenKind::Plus)
      return false;
  std::string e = codec.encode(s);
  return Recognizer(e).accepts();
}

// The preferred member under the documented tie-break: fewer tokens, then
// lexicographic token order.
inline TokenSeq preferred(const std::set<TokenSeq, SeqLess>& best) {
  TokenSeq out = *best.begin();
  for (const auto& q : best)
    if (q.size() < out.size() || (q.size() == out.size() && SeqLess{}(q, out))) out = q;
  return out;
}

// Applies `k` random single-token edits drawn from the repair alphabet.
template <class Rng>
TokenSeq corrupt_tokens(Rng& rng, TokenSeq s, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    bool del = !s.empty() && std::bernoulli_distribution(0.5)(rng);
    if (del) {
      std::size_t p = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
      s.erase(s.begin() + static_cast<long>(p));
    } else {
      std::size_t p = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
      const auto& a = repair_alphabet();
      std::size_t t = std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng);
      s.insert(s.begin() + static_cast<long>(p), a[t]);
    }
  }
  return s;
}

}  // namespace proofsynth::testing
