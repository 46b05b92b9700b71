#pragma once

// Typing of (partial) proof terms. Holes have any type; application argument
// types and eliminator component types are unification variables, so a
// check succeeds iff some instantiation of holes and metas types the term.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proofsynth/term.hpp"
#include "proofsynth/type_arena.hpp"

namespace proofsynth {

// A TypeExpr that may also contain metavariables ?n.
class TypeSkeleton {
 public:
  enum class Kind : std::uint8_t { Meta, Atom, Arrow, Prod, Sum };

  static TypeSkeleton meta(int id);
  static TypeSkeleton atom(std::string name);
  static TypeSkeleton arrow(TypeSkeleton l, TypeSkeleton r);
  static TypeSkeleton prod(TypeSkeleton l, TypeSkeleton r);
  static TypeSkeleton sum(TypeSkeleton l, TypeSkeleton r);
  static TypeSkeleton from(const TypeExpr& t);

  Kind kind() const { return kind_; }
  int meta_id() const { return meta_; }
  const std::string& name() const { return name_; }
  const TypeSkeleton& left() const { return *l_; }
  const TypeSkeleton& right() const { return *r_; }

  bool has_metas() const;
  // Fails if metas remain.
  std::optional<TypeExpr> to_type() const;

  friend bool operator==(const TypeSkeleton& a, const TypeSkeleton& b);

 private:
  Kind kind_ = Kind::Meta;
  int meta_ = 0;
  std::string name_;
  std::shared_ptr<const TypeSkeleton> l_, r_;
};

std::string to_string(const TypeSkeleton& t);

// Fully resolved bindings: no bound meta occurs in any image.
using Substitution = std::map<int, TypeSkeleton>;

TypeSkeleton apply(const Substitution& s, const TypeSkeleton& t);

// Most general unifier of a and b extending s, or nullopt on a constructor
// clash or occurs-check failure.
std::optional<Substitution> unify(const TypeSkeleton& a, const TypeSkeleton& b, const Substitution& s = {});

class TypingContext {
 public:
  TypingContext() = default;

  TypingContext extended(std::string x, TypeSkeleton t) const;
  // Most recent binding for x.
  const TypeSkeleton* lookup(const std::string& x) const;
  const std::vector<std::pair<std::string, TypeSkeleton>>& bindings() const { return bindings_; }

 private:
  std::vector<std::pair<std::string, TypeSkeleton>> bindings_;
};

bool check_partial(const TypingContext& ctx, const Term& t, const TypeSkeleton& goal);
bool check_partial(const Term& t, const TypeExpr& goal);

// Principal type of a closed term with metas renamed a, b, c, ... by first
// occurrence. nullopt if the term is untypable or has free variables.
std::optional<TypeExpr> infer_type(const Term& t);

namespace detail {

// Checks `t` against arena node `goal` under `ctx` (name, arena node),
// accumulating bindings in `arena`.
bool check_in_arena(TypeArena& arena, std::vector<std::pair<std::string, int>>& ctx, const Term& t, int goal);

}  // namespace detail

}  // namespace proofsynth
