#include "proofsynth/typecheck.hpp"

namespace proofsynth {

// ---------------------------------------------------------------------------
// TypeSkeleton

TypeSkeleton TypeSkeleton::meta(int id) {
  TypeSkeleton s;
  s.kind_ = Kind::Meta;
  s.meta_ = id;
  return s;
}

TypeSkeleton TypeSkeleton::atom(std::string name) {
  TypeSkeleton s;
  s.kind_ = Kind::Atom;
  s.name_ = std::move(name);
  return s;
}

namespace {
TypeSkeleton binary(TypeSkeleton::Kind k, TypeSkeleton l, TypeSkeleton r) {
  switch (k) {
    case TypeSkeleton::Kind::Arrow: return TypeSkeleton::arrow(std::move(l), std::move(r));
    case TypeSkeleton::Kind::Prod: return TypeSkeleton::prod(std::move(l), std::move(r));
    default: return TypeSkeleton::sum(std::move(l), std::move(r));
  }
}
}  // namespace

TypeSkeleton TypeSkeleton::arrow(TypeSkeleton l, TypeSkeleton r) {
  TypeSkeleton s;
  s.kind_ = Kind::Arrow;
  s.l_ = std::make_shared<const TypeSkeleton>(std::move(l));
  s.r_ = std::make_shared<const TypeSkeleton>(std::move(r));
  return s;
}

TypeSkeleton TypeSkeleton::prod(TypeSkeleton l, TypeSkeleton r) {
  auto s = arrow(std::move(l), std::move(r));
  s.kind_ = Kind::Prod;
  return s;
}

TypeSkeleton TypeSkeleton::sum(TypeSkeleton l, TypeSkeleton r) {
  auto s = arrow(std::move(l), std::move(r));
  s.kind_ = Kind::Sum;
  return s;
}

TypeSkeleton TypeSkeleton::from(const TypeExpr& t) {
  switch (t.kind()) {
    case TypeKind::Atom: return atom(t.name());
    case TypeKind::Arrow: return arrow(from(t.left()), from(t.right()));
    case TypeKind::Prod: return prod(from(t.left()), from(t.right()));
    case TypeKind::Sum: return sum(from(t.left()), from(t.right()));
  }
  return atom("?");
}

bool TypeSkeleton::has_metas() const {
  if (kind_ == Kind::Meta) return true;
  if (kind_ == Kind::Atom) return false;
  return l_->has_metas() || r_->has_metas();
}

std::optional<TypeExpr> TypeSkeleton::to_type() const {
  switch (kind_) {
    case Kind::Meta: return std::nullopt;
    case Kind::Atom: return TypeExpr::atom(name_);
    default: break;
  }
  auto l = l_->to_type();
  auto r = r_->to_type();
  if (!l || !r) return std::nullopt;
  switch (kind_) {
    case Kind::Arrow: return TypeExpr::arrow(*l, *r);
    case Kind::Prod: return TypeExpr::prod(*l, *r);
    default: return TypeExpr::sum(*l, *r);
  }
}

bool operator==(const TypeSkeleton& a, const TypeSkeleton& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case TypeSkeleton::Kind::Meta: return a.meta_ == b.meta_;
    case TypeSkeleton::Kind::Atom: return a.name_ == b.name_;
    default: return *a.l_ == *b.l_ && *a.r_ == *b.r_;
  }
}

std::string to_string(const TypeSkeleton& t) {
  switch (t.kind()) {
    case TypeSkeleton::Kind::Meta: return "?" + std::to_string(t.meta_id());
    case TypeSkeleton::Kind::Atom: return t.name();
    case TypeSkeleton::Kind::Arrow: return "(" + to_string(t.left()) + " -> " + to_string(t.right()) + ")";
    case TypeSkeleton::Kind::Prod: return "(" + to_string(t.left()) + " * " + to_string(t.right()) + ")";
    case TypeSkeleton::Kind::Sum: return "(" + to_string(t.left()) + " + " + to_string(t.right()) + ")";
  }
  return "?";
}

TypeSkeleton apply(const Substitution& s, const TypeSkeleton& t) {
  switch (t.kind()) {
    case TypeSkeleton::Kind::Meta: {
      auto it = s.find(t.meta_id());
      if (it == s.end()) return t;
      return apply(s, it->second);
    }
    case TypeSkeleton::Kind::Atom: return t;
    default: return binary(t.kind(), apply(s, t.left()), apply(s, t.right()));
  }
}

// ---------------------------------------------------------------------------
// Bridging skeletons and the arena

namespace {

struct Bridge {
  TypeArena& arena;
  std::map<int, int> meta_nodes;  // skeleton meta id -> arena node

  int node_for_meta(int id) {
    auto it = meta_nodes.find(id);
    if (it != meta_nodes.end()) return it->second;
    int n = arena.fresh();
    meta_nodes.emplace(id, n);
    return n;
  }

  int import(const TypeSkeleton& t) {
    switch (t.kind()) {
      case TypeSkeleton::Kind::Meta: return node_for_meta(t.meta_id());
      case TypeSkeleton::Kind::Atom: return arena.atom(t.name());
      case TypeSkeleton::Kind::Arrow: {
        int l = import(t.left());
        return arena.arrow(l, import(t.right()));
      }
      case TypeSkeleton::Kind::Prod: {
        int l = import(t.left());
        return arena.prod(l, import(t.right()));
      }
      case TypeSkeleton::Kind::Sum: {
        int l = import(t.left());
        return arena.sum(l, import(t.right()));
      }
    }
    return -1;
  }

  TypeSkeleton export_node(int n) const {
    n = arena.find(n);
    switch (arena.tag(n)) {
      case TypeArena::Tag::Meta: {
        for (const auto& [id, node] : meta_nodes)
          if (arena.find(node) == n) return TypeSkeleton::meta(id);
        // Metas created internally are not expected to survive export.
        return TypeSkeleton::meta(-n - 1);
      }
      case TypeArena::Tag::Atom: return TypeSkeleton::atom(arena.atom_name_of(n));
      case TypeArena::Tag::Arrow: return TypeSkeleton::arrow(export_node(arena.lhs(n)), export_node(arena.rhs(n)));
      case TypeArena::Tag::Prod: return TypeSkeleton::prod(export_node(arena.lhs(n)), export_node(arena.rhs(n)));
      case TypeArena::Tag::Sum: return TypeSkeleton::sum(export_node(arena.lhs(n)), export_node(arena.rhs(n)));
    }
    return TypeSkeleton::meta(0);
  }
};

}  // namespace

std::optional<Substitution> unify(const TypeSkeleton& a, const TypeSkeleton& b, const Substitution& s) {
  TypeArena arena;
  Bridge br{arena, {}};
  for (const auto& [id, img] : s) {
    int m = br.node_for_meta(id);
    if (!arena.unify(m, br.import(img))) return std::nullopt;
  }
  int x = br.import(a);
  int y = br.import(b);
  if (!arena.unify(x, y)) return std::nullopt;
  Substitution out;
  for (const auto& [id, node] : br.meta_nodes) {
    if (arena.is_unbound_meta(node) && br.export_node(node) == TypeSkeleton::meta(id)) continue;
    out.emplace(id, br.export_node(node));
  }
  return out;
}

// ---------------------------------------------------------------------------
// TypingContext

TypingContext TypingContext::extended(std::string x, TypeSkeleton t) const {
  TypingContext c = *this;
  c.bindings_.emplace_back(std::move(x), std::move(t));
  return c;
}

const TypeSkeleton* TypingContext::lookup(const std::string& x) const {
  for (std::size_t i = bindings_.size(); i-- > 0;)
    if (bindings_[i].first == x) return &bindings_[i].second;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Checking

namespace detail {

namespace {

// Reuses the goal's own components when it is already the wanted
// constructor; otherwise unifies it with a fresh instance.
bool split(TypeArena& arena, int goal, TypeArena::Tag want, int& l, int& r) {
  int g = arena.find(goal);
  if (arena.tag(g) == want) {
    l = arena.lhs(g);
    r = arena.rhs(g);
    return true;
  }
  if (arena.tag(g) != TypeArena::Tag::Meta) return false;
  l = arena.fresh();
  r = arena.fresh();
  int shape = want == TypeArena::Tag::Arrow  ? arena.arrow(l, r)
              : want == TypeArena::Tag::Prod ? arena.prod(l, r)
                                             : arena.sum(l, r);
  return arena.unify(g, shape);
}

}  // namespace

bool check_in_arena(TypeArena& arena, std::vector<std::pair<std::string, int>>& ctx, const Term& t, int goal) {
  using Tag = TypeArena::Tag;
  switch (t.kind()) {
    case TermKind::Hole: return true;
    case TermKind::Var: {
      for (std::size_t i = ctx.size(); i-- > 0;)
        if (ctx[i].first == t.name()) return arena.unify(ctx[i].second, goal);
      return false;
    }
    case TermKind::Lam: {
      int a, b;
      if (!split(arena, goal, Tag::Arrow, a, b)) return false;
      ctx.emplace_back(t.name(), a);
      bool ok = check_in_arena(arena, ctx, t.child(0), b);
      ctx.pop_back();
      return ok;
    }
    case TermKind::App: {
      int a = arena.fresh();
      int f = arena.arrow(a, goal);
      return check_in_arena(arena, ctx, t.child(0), f) && check_in_arena(arena, ctx, t.child(1), a);
    }
    case TermKind::Pair: {
      int a, b;
      if (!split(arena, goal, Tag::Prod, a, b)) return false;
      return check_in_arena(arena, ctx, t.child(0), a) && check_in_arena(arena, ctx, t.child(1), b);
    }
    case TermKind::CasePair: {
      int a = arena.fresh(), b = arena.fresh();
      if (!check_in_arena(arena, ctx, t.child(0), arena.prod(a, b))) return false;
      ctx.emplace_back(t.name(), a);
      ctx.emplace_back(t.name2(), b);
      bool ok = check_in_arena(arena, ctx, t.child(1), goal);
      ctx.resize(ctx.size() - 2);
      return ok;
    }
    case TermKind::InjL:
    case TermKind::InjR: {
      int a, b;
      if (!split(arena, goal, Tag::Sum, a, b)) return false;
      return check_in_arena(arena, ctx, t.child(0), t.kind() == TermKind::InjL ? a : b);
    }
    case TermKind::CaseSum: {
      int a = arena.fresh(), b = arena.fresh();
      if (!check_in_arena(arena, ctx, t.child(0), arena.sum(a, b))) return false;
      ctx.emplace_back(t.name(), a);
      bool ok = check_in_arena(arena, ctx, t.child(1), goal);
      ctx.pop_back();
      if (!ok) return false;
      ctx.emplace_back(t.name2(), b);
      ok = check_in_arena(arena, ctx, t.child(2), goal);
      ctx.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace detail

bool check_partial(const TypingContext& ctx, const Term& t, const TypeSkeleton& goal) {
  TypeArena arena;
  Bridge br{arena, {}};
  std::vector<std::pair<std::string, int>> nodes;
  nodes.reserve(ctx.bindings().size() + 8);
  for (const auto& [x, ty] : ctx.bindings()) nodes.emplace_back(x, br.import(ty));
  int g = br.import(goal);
  return detail::check_in_arena(arena, nodes, t, g);
}

bool check_partial(const Term& t, const TypeExpr& goal) {
  TypeArena arena;
  std::vector<std::pair<std::string, int>> ctx;
  int g = arena.import(goal);
  return detail::check_in_arena(arena, ctx, t, g);
}

std::optional<TypeExpr> infer_type(const Term& t) {
  TypeArena arena;
  std::vector<std::pair<std::string, int>> ctx;
  int g = arena.fresh();
  if (!detail::check_in_arena(arena, ctx, t, g)) return std::nullopt;
  return arena.to_type(g);
}

}  // namespace proofsynth
