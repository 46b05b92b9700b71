#pragma once

// Mutable store of type nodes with unification variables ("metas"). Bindings
// are recorded on a trail so a depth-first search can roll back to a mark.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "proofsynth/term.hpp"

namespace proofsynth {

class TypeArena {
 public:
  enum class Tag : std::uint8_t { Meta, Atom, Arrow, Prod, Sum };

  struct Mark {
    std::size_t nodes;
    std::size_t trail;
  };

  int fresh();
  int atom(std::string_view name);
  int arrow(int from, int to) { return push(Tag::Arrow, from, to); }
  int prod(int l, int r) { return push(Tag::Prod, l, r); }
  int sum(int l, int r) { return push(Tag::Sum, l, r); }
  int import(const TypeExpr& t);

  // Follows meta bindings to the representative node.
  int find(int t) const;
  Tag tag(int t) const { return nodes_[t].tag; }
  int lhs(int t) const { return nodes_[t].a; }
  int rhs(int t) const { return nodes_[t].b; }
  const std::string& atom_name_of(int t) const { return atom_names_[nodes_[t].a]; }
  bool is_unbound_meta(int t) const;

  // Most general unifier with occurs check. On failure, bindings made during
  // the call are left in place; callers roll back to a mark.
  bool unify(int x, int y);
  bool occurs(int meta, int t) const;

  Mark mark() const { return {nodes_.size(), trail_.size()}; }
  void rollback(const Mark& m);

  // Resolved type with unbound metas renamed to a, b, c, ... in
  // first-occurrence order (shared numbering via `metas`).
  TypeExpr to_type(int t, std::vector<int>& metas) const;
  TypeExpr to_type(int t) const {
    std::vector<int> metas;
    return to_type(t, metas);
  }

  // Appends a rendering of the resolved type; unbound metas are numbered by
  // first occurrence across calls sharing `metas`.
  void serialize(int t, std::string& out, std::vector<int>& metas) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Tag tag;
    int a;  // Meta: binding (-1 if unbound); Atom: atom id; else left child
    int b;
  };
  int push(Tag tag, int a, int b) {
    nodes_.push_back({tag, a, b});
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  std::vector<int> trail_;
  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, int> atom_ids_;
};

}  // namespace proofsynth
