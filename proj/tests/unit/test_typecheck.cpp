#include <doctest.h>

#include <random>

#include "proofsynth/typecheck.hpp"
#include "proofsynth/tokens.hpp"
#include "term_gen.hpp"

using namespace proofsynth;
using proofsynth::testing::all_terms;
using proofsynth::testing::random_term;

namespace {

Term v(const char* x) { return Term::var(x); }
TypeExpr A(const char* n) { return TypeExpr::atom(n); }
using S = TypeSkeleton;

Term swap_proof() { return Term::lam("x0", Term::case_pair(v("x0"), "x1", "x2", Term::pair(v("x2"), v("x1")))); }
Term table2_row1() { return Term::lam("x0", Term::case_pair(v("x0"), "x1", "x2", Term::pair(v("x1"), v("x1")))); }
TypeExpr swap_type() {
  return TypeExpr::arrow(TypeExpr::prod(A("a1"), A("a2")), TypeExpr::prod(A("a2"), A("a1")));
}

// Every type over atoms a, b with at most `max_size` nodes.
std::vector<TypeExpr> universe(std::size_t max_size) {
  std::vector<std::vector<TypeExpr>> by(max_size + 1);
  by[1] = {A("a"), A("b")};
  for (std::size_t n = 3; n <= max_size; n += 2)
    for (std::size_t l = 1; l + 1 < n; l += 2)
      for (const auto& x : by[l])
        for (const auto& y : by[n - 1 - l]) {
          by[n].push_back(TypeExpr::arrow(x, y));
          by[n].push_back(TypeExpr::prod(x, y));
          by[n].push_back(TypeExpr::sum(x, y));
        }
  std::vector<TypeExpr> out;
  for (const auto& b : by) out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Rule-by-rule derivation search. Types that a derivation must invent
// (application arguments, scrutinee components) are drawn from `u`.
struct Derivations {
  const std::vector<TypeExpr>& u;

  bool derive(std::vector<std::pair<std::string, TypeExpr>>& ctx, const Term& t, const TypeExpr& T) {
    switch (t.kind()) {
      case TermKind::Hole: return true;
      case TermKind::Var:
        for (std::size_t i = ctx.size(); i-- > 0;)
          if (ctx[i].first == t.name()) return ctx[i].second == T;
        return false;
      case TermKind::Lam: {
        if (T.kind() != TypeKind::Arrow) return false;
        ctx.emplace_back(t.name(), T.left());
        bool ok = derive(ctx, t.child(0), T.right());
        ctx.pop_back();
        return ok;
      }
      case TermKind::App:
        for (const auto& s : u)
          if (derive(ctx, t.child(1), s) && derive(ctx, t.child(0), TypeExpr::arrow(s, T))) return true;
        return false;
      case TermKind::Pair:
        return T.kind() == TypeKind::Prod && derive(ctx, t.child(0), T.left()) && derive(ctx, t.child(1), T.right());
      case TermKind::InjL: return T.kind() == TypeKind::Sum && derive(ctx, t.child(0), T.left());
      case TermKind::InjR: return T.kind() == TypeKind::Sum && derive(ctx, t.child(0), T.right());
      case TermKind::CasePair:
        for (const auto& s1 : u)
          for (const auto& s2 : u) {
            if (!derive(ctx, t.child(0), TypeExpr::prod(s1, s2))) continue;
            ctx.emplace_back(t.name(), s1);
            ctx.emplace_back(t.name2(), s2);
            bool ok = derive(ctx, t.child(1), T);
            ctx.pop_back();
            ctx.pop_back();
            if (ok) return true;
          }
        return false;
      case TermKind::CaseSum:
        for (const auto& s1 : u)
          for (const auto& s2 : u) {
            if (!derive(ctx, t.child(0), TypeExpr::sum(s1, s2))) continue;
            ctx.emplace_back(t.name(), s1);
            bool ok = derive(ctx, t.child(1), T);
            ctx.pop_back();
            if (!ok) continue;
            ctx.emplace_back(t.name2(), s2);
            ok = derive(ctx, t.child(2), T);
            ctx.pop_back();
            if (ok) return true;
          }
        return false;
    }
    return false;
  }
};

}  // namespace

TEST_CASE("unification examples") {
  auto bb = S::arrow(S::atom("b"), S::atom("b"));
  auto s = unify(S::meta(0), bb);
  REQUIRE(s);
  CHECK(s->size() == 1);
  CHECK(s->at(0) == bb);
  CHECK_FALSE(unify(S::meta(0), S::arrow(S::meta(0), S::atom("b"))));
  CHECK_FALSE(unify(S::prod(S::atom("a"), S::atom("b")), S::sum(S::atom("a"), S::atom("b"))));
  CHECK_FALSE(unify(S::atom("a"), S::atom("b")));
}

TEST_CASE("unifiers are idempotent and make both sides equal") {
  // ?0 -> ?1 against (?1 * a) -> ?2 chains bindings through ?1
  auto l = S::arrow(S::meta(0), S::meta(1));
  auto r = S::arrow(S::prod(S::meta(1), S::atom("a")), S::meta(2));
  auto s = unify(l, r);
  REQUIRE(s);
  CHECK(proofsynth::apply(*s, l) == proofsynth::apply(*s, r));
  for (const auto& [m, img] : *s) CHECK(proofsynth::apply(*s, img) == img);
  // extending an existing substitution
  Substitution base{{5, S::atom("c")}};
  auto t = unify(S::meta(5), S::meta(6), base);
  REQUIRE(t);
  CHECK(proofsynth::apply(*t, S::meta(6)) == S::atom("c"));
  CHECK_FALSE(unify(S::meta(5), S::atom("d"), base));
}

TEST_CASE("typing contexts shadow") {
  TypingContext c;
  auto d = c.extended("x", S::atom("a")).extended("x", S::atom("b"));
  REQUIRE(d.lookup("x"));
  CHECK(*d.lookup("x") == S::atom("b"));
  CHECK(d.lookup("y") == nullptr);
  CHECK(d.bindings().size() == 2);
  CHECK(check_partial(d, v("x"), S::atom("b")));
  CHECK_FALSE(check_partial(d, v("x"), S::atom("a")));
  CHECK(check_partial(d, v("x"), S::meta(0)));
}

TEST_CASE("holes check against anything") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) CHECK(check_partial(Term::hole(), testing::random_type(rng, 1 + 2 * (i % 5))));
  CHECK(check_partial(TypingContext{}, Term::hole(), S::meta(0)));
}

TEST_CASE("the swap type and a near-miss guide") {
  CHECK_FALSE(check_partial(table2_row1(), swap_type()));
  CHECK(check_partial(swap_proof(), swap_type()));
  CHECK_FALSE(check_partial(v("x"), A("a")));
}

TEST_CASE("principal types") {
  auto id = infer_type(Term::lam("x", v("x")));
  REQUIRE(id);
  CHECK(type_text(*id) == "a -> a");
  auto sw = infer_type(swap_proof());
  REQUIRE(sw);
  CHECK(type_text(*sw) == "a * b -> b * a");
  CHECK(check_partial(swap_proof(), *sw));
  CHECK_FALSE(infer_type(Term::lam("x", Term::app(v("x"), v("x")))));
  CHECK_FALSE(infer_type(v("x")));
  auto k = infer_type(Term::lam("x", Term::lam("y", v("x"))));
  REQUIRE(k);
  CHECK(type_text(*k) == "a -> b -> a");
}

TEST_CASE("inference is sound and stable under renaming") {
  std::mt19937_64 rng(29);
  int typed = 0;
  for (int i = 0; i < 4000; ++i) {
    Term t = random_term(rng, 2 + i % 9, {"x", "y", "z"});
    auto ty = infer_type(t);
    if (!ty) continue;
    ++typed;
    REQUIRE(check_partial(t, *ty));
    auto again = infer_type(canonical_names(t));
    REQUIRE(again);
    CHECK(*again == *ty);
  }
  CHECK(typed > 50);
}

TEST_CASE("checking agrees with a derivation enumerator on small closed terms") {
  auto goals = universe(3);
  auto u = universe(5);
  Derivations d{u};
  std::size_t positives = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : all_terms(n, {"x", "y"}, false)) {
      if (!free_vars(t).empty()) continue;
      for (const auto& g : goals) {
        std::vector<std::pair<std::string, TypeExpr>> ctx;
        bool expect = d.derive(ctx, t, g);
        REQUIRE_MESSAGE(check_partial(t, g) == expect, term_text(t), " : ", type_text(g));
        positives += expect;
      }
    }
  CHECK(positives > 0);
}

TEST_CASE("filling a hole never rescues an ill-typed partial term") {
  std::mt19937_64 rng(31);
  int refuted = 0;
  for (int i = 0; i < 3000; ++i) {
    Term t = random_term(rng, 2 + i % 6, {"x", "y"}, 0.35);
    auto p = first_hole(t);
    if (!p) continue;
    TypeExpr g = testing::random_type(rng, 1 + 2 * (i % 3), 2);
    if (check_partial(t, g)) continue;
    ++refuted;
    for (int j = 0; j < 5; ++j) {
      Term c = random_term(rng, 1 + j, {"x", "y"}, 0.3);
      REQUIRE_FALSE(check_partial(replace_at(t, *p, c), g));
    }
  }
  CHECK(refuted > 100);
}
