#include "proofsynth/type_arena.hpp"

#include <algorithm>

namespace proofsynth {

int TypeArena::fresh() { return push(Tag::Meta, -1, 0); }

int TypeArena::atom(std::string_view name) {
  std::string key(name);
  auto it = atom_ids_.find(key);
  int id;
  if (it == atom_ids_.end()) {
    id = static_cast<int>(atom_names_.size());
    atom_names_.push_back(key);
    atom_ids_.emplace(std::move(key), id);
  } else {
    id = it->second;
  }
  return push(Tag::Atom, id, 0);
}

int TypeArena::import(const TypeExpr& t) {
  switch (t.kind()) {
    case TypeKind::Atom: return atom(t.name());
    case TypeKind::Arrow: {
      int l = import(t.left());
      return arrow(l, import(t.right()));
    }
    case TypeKind::Prod: {
      int l = import(t.left());
      return prod(l, import(t.right()));
    }
    case TypeKind::Sum: {
      int l = import(t.left());
      return sum(l, import(t.right()));
    }
  }
  return -1;
}

int TypeArena::find(int t) const {
  while (nodes_[t].tag == Tag::Meta && nodes_[t].a >= 0) t = nodes_[t].a;
  return t;
}

bool TypeArena::is_unbound_meta(int t) const {
  t = find(t);
  return nodes_[t].tag == Tag::Meta;
}

bool TypeArena::occurs(int meta, int t) const {
  t = find(t);
  if (t == meta) return true;
  const Node& n = nodes_[t];
  if (n.tag == Tag::Meta || n.tag == Tag::Atom) return false;
  return occurs(meta, n.a) || occurs(meta, n.b);
}

bool TypeArena::unify(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return true;
  Node& nx = nodes_[x];
  Node& ny = nodes_[y];
  if (nx.tag == Tag::Meta || ny.tag == Tag::Meta) {
    int m = nx.tag == Tag::Meta ? x : y;
    int other = m == x ? y : x;
    if (occurs(m, other)) return false;
    nodes_[m].a = other;
    trail_.push_back(m);
    return true;
  }
  if (nx.tag != ny.tag) return false;
  if (nx.tag == Tag::Atom) return nx.a == ny.a;
  int xa = nx.a, xb = nx.b, ya = ny.a, yb = ny.b;
  return unify(xa, ya) && unify(xb, yb);
}

void TypeArena::rollback(const Mark& m) {
  while (trail_.size() > m.trail) {
    nodes_[trail_.back()].a = -1;
    trail_.pop_back();
  }
  nodes_.resize(m.nodes);
}

TypeExpr TypeArena::to_type(int t, std::vector<int>& metas) const {
  t = find(t);
  const Node& n = nodes_[t];
  switch (n.tag) {
    case Tag::Meta: {
      auto it = std::find(metas.begin(), metas.end(), t);
      std::size_t idx = static_cast<std::size_t>(it - metas.begin());
      if (it == metas.end()) metas.push_back(t);
      return TypeExpr::atom(atom_name(idx));
    }
    case Tag::Atom: return TypeExpr::atom(atom_names_[n.a]);
    case Tag::Arrow: {
      auto l = to_type(n.a, metas);
      return TypeExpr::arrow(std::move(l), to_type(n.b, metas));
    }
    case Tag::Prod: {
      auto l = to_type(n.a, metas);
      return TypeExpr::prod(std::move(l), to_type(n.b, metas));
    }
    case Tag::Sum: {
      auto l = to_type(n.a, metas);
      return TypeExpr::sum(std::move(l), to_type(n.b, metas));
    }
  }
  return TypeExpr::atom("?");
}

void TypeArena::serialize(int t, std::string& out, std::vector<int>& metas) const {
  t = find(t);
  const Node& n = nodes_[t];
  switch (n.tag) {
    case Tag::Meta: {
      auto it = std::find(metas.begin(), metas.end(), t);
      std::size_t idx = static_cast<std::size_t>(it - metas.begin());
      if (it == metas.end()) metas.push_back(t);
      out += '?';
      out += std::to_string(idx);
      return;
    }
    case Tag::Atom:
      out += '\'';
      out += atom_names_[n.a];
      out += '\'';
      return;
    case Tag::Arrow: out += '>'; break;
    case Tag::Prod: out += '*'; break;
    case Tag::Sum: out += '+'; break;
  }
  serialize(n.a, out, metas);
  serialize(n.b, out, metas);
}

}  // namespace proofsynth
