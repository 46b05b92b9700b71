#include <doctest.h>

#include <random>

#include "lcs_oracle.hpp"
#include "proofsynth/repair.hpp"
#include "repair_oracle.hpp"
#include "term_gen.hpp"

using namespace proofsynth;
using namespace proofsynth::testing;

namespace {

TokenSeq random_seq(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<Token> pool = {Token::atom("a"), Token::atom("b"), Token::of(TokenKind::Arrow),
                                          Token::of(TokenKind::LParen), Token::of(TokenKind::RParen),
                                          Token::var("x0")};
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  TokenSeq s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
  return s;
}

}  // namespace

TEST_CASE("sequence distance examples") {
  auto a = lex_type("a -> a");
  CHECK(seq_edit_distance(a, a).distance == 0);
  CHECK(seq_edit_distance(lex_term("x )"), lex_term("x")).distance == 1);
  CHECK(seq_edit_distance({}, lex_term("x y z")).distance == 3);
  CHECK(seq_edit_distance(lex_term("x y z"), {}).distance == 3);
  CHECK(seq_edit_distance({}, {}).distance == 0);
}

TEST_CASE("Myers matches the dynamic-programming table and its script replays") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 2000; ++i) {
    TokenSeq a = random_seq(rng, 14);
    TokenSeq b = random_seq(rng, 14);
    auto d = seq_edit_distance(a, b);
    REQUIRE(d.distance == dp_distance(a, b));
    REQUIRE(apply_script(a, d.script) == b);
    std::size_t edits = 0;
    for (const auto& op : d.script) edits += op.kind != EditOp::Kind::Keep;
    REQUIRE(edits == d.distance);
  }
}

TEST_CASE("sequence distance is symmetric and obeys the triangle inequality") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 1000; ++i) {
    TokenSeq a = random_seq(rng, 10), b = random_seq(rng, 10), c = random_seq(rng, 10);
    auto ab = seq_edit_distance(a, b).distance;
    CHECK(ab == seq_edit_distance(b, a).distance);
    CHECK(seq_edit_distance(a, c).distance <= ab + seq_edit_distance(b, c).distance);
  }
}

TEST_CASE("malformed scripts are rejected") {
  auto a = lex_term("x y");
  EditScript bad = {{EditOp::Kind::Keep, Token::var("y"), 0}};
  CHECK_THROWS_AS(apply_script(a, bad), std::invalid_argument);
  CHECK_THROWS_AS(apply_script(a, {}), std::invalid_argument);
}

TEST_CASE("repair examples") {
  auto id = lex_term("( λ x . x )");
  auto r = nearest_term(id);
  CHECK(r.distance == 0);
  CHECK(r.term == Term::lam("x", Term::var("x")));
  auto broken = id;
  broken.pop_back();
  r = nearest_term(broken);
  CHECK(r.distance == 1);
  CHECK(r.term == Term::lam("x", Term::var("x")));
  r = nearest_term({});
  CHECK(r.distance == 1);
  CHECK(r.term == Term::var("x0"));
  CHECK_FALSE(r.budget_exceeded);
  // tokens outside the term grammar can only be deleted
  r = nearest_term(lex_term("x0 ? <EOS>"));
  CHECK(r.distance == 2);
  CHECK(r.term == Term::var("x0"));
  // the near-miss swap guide is already well formed
  r = nearest_term(lex_term("( λ x0 . ( case x0 of ( x1 , x2 ) -> ( x1 , x1 ) ) )"));
  CHECK(r.distance == 0);
}

TEST_CASE("repair is minimal against brute force over edit scripts") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 40; ++i) {
    Term m = random_term(rng, 1 + i % 7, {"x0", "x1", "x2"});
    TokenSeq s = corrupt_tokens(rng, tokenize_term(m), 1 + i % 2);
    auto r = nearest_term(s);
    auto o = oracle_repair(s, 2);
    REQUIRE_MESSAGE(r.distance == o.distance, to_text(s));
    CHECK(seq_edit_distance(s, r.tokens).distance == r.distance);
    CHECK(r.tokens == preferred(o.best));
    CHECK(nearest_term(tokenize_term(r.term)).distance == 0);
  }
}

TEST_CASE("the brute-force recognizer accepts the parser's language") {
  std::mt19937_64 rng(109);
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    Term m = random_term(rng, 1 + i % 6, {"x0", "x1"});
    TokenSeq s = corrupt_tokens(rng, tokenize_term(m), i % 3);
    bool ok = recognizes(s);
    REQUIRE_MESSAGE(ok == try_parse_term(s).has_value(), to_text(s));
    accepted += ok;
  }
  CHECK(accepted > 1000);
}

TEST_CASE("an exhausted budget still yields a parsable repair") {
  auto s = lex_term("( λ x0 . ( case x0 of ( x1 , x2 ) -> ( x1 , x1 ) ) ) ) ( (");
  RepairOptions tight;
  tight.max_states = 5;
  auto r = nearest_term(s, tight);
  CHECK(r.budget_exceeded);
  CHECK(try_parse_term(r.tokens));
  CHECK(seq_edit_distance(s, r.tokens).distance <= r.distance);
  CHECK(r.distance >= nearest_term(s).distance);
}
