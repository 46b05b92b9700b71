#pragma once

// Propositions (simple types) and proof terms (λ-terms with pairs, sums and
// holes). Both are immutable trees with shared structure; copying a value
// copies a pointer.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace proofsynth {

// ---------------------------------------------------------------------------
// TypeExpr

enum class TypeKind : std::uint8_t { Atom, Arrow, Prod, Sum };

class TypeExpr {
 public:
  static TypeExpr atom(std::string name);
  static TypeExpr arrow(TypeExpr from, TypeExpr to);
  static TypeExpr prod(TypeExpr left, TypeExpr right);
  static TypeExpr sum(TypeExpr left, TypeExpr right);

  TypeKind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind == TypeKind::Atom; }
  const std::string& name() const { return node_->name; }
  const TypeExpr& left() const { return *node_->left; }
  const TypeExpr& right() const { return *node_->right; }

  std::size_t size() const;
  // Distinct atom names in first-occurrence (left-to-right) order.
  std::vector<std::string> atoms() const;
  // Renames atoms to a, b, c, ... by first occurrence; equal results mean
  // equal up to a bijective renaming of atoms.
  TypeExpr canonical_atoms() const;

  friend bool operator==(const TypeExpr& a, const TypeExpr& b);
  friend bool operator<(const TypeExpr& a, const TypeExpr& b);

 private:
  struct Node {
    TypeKind kind;
    std::string name;
    std::shared_ptr<const TypeExpr> left;
    std::shared_ptr<const TypeExpr> right;
  };
  explicit TypeExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static TypeExpr binary(TypeKind k, TypeExpr l, TypeExpr r);

  std::shared_ptr<const Node> node_;
};

bool equal_up_to_renaming(const TypeExpr& a, const TypeExpr& b);

// Name of the i-th atom produced by canonical renaming: a, b, ..., z, t26, ...
std::string atom_name(std::size_t index);

// ---------------------------------------------------------------------------
// Term

enum class TermKind : std::uint8_t {
  Hole,
  Var,
  Lam,       // λx. body
  App,       // fun arg
  Pair,      // (fst, snd)
  CasePair,  // case scrut of (x, y) -> body
  InjL,      // Left inner
  InjR,      // Right inner
  CaseSum,   // case scrut of { Left x -> left ; Right y -> right }
};

const char* to_string(TermKind k);

class Term {
 public:
  Term() = default;  // the hole
  static Term hole() { return Term(); }
  static Term var(std::string name);
  static Term lam(std::string x, Term body);
  static Term app(Term fun, Term arg);
  static Term pair(Term fst, Term snd);
  static Term case_pair(Term scrut, std::string x, std::string y, Term body);
  static Term inj_l(Term inner);
  static Term inj_r(Term inner);
  static Term case_sum(Term scrut, std::string x, Term left, std::string y, Term right);

  TermKind kind() const;
  bool is_hole() const { return node_ == nullptr; }

  // Var: the variable. Lam/CasePair/CaseSum: the first binder.
  const std::string& name() const;
  // CasePair/CaseSum: the second binder.
  const std::string& name2() const;

  std::size_t arity() const;
  const Term& child(std::size_t i) const;

  // Number of binders the node introduces (0, 1 or 2).
  std::size_t binder_count() const;
  // Variables bound by this node inside child i.
  std::vector<std::string> binders_for_child(std::size_t i) const;

  // Same constructor and binder/variable names, new children.
  Term with_children(const std::array<Term, 3>& kids) const;
  Term with_child(std::size_t i, Term c) const;

  // Structural (name-sensitive) equality.
  friend bool operator==(const Term& a, const Term& b);

  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, std::string x, std::string y, std::initializer_list<Term> kids);

  // Null for the hole.
  std::shared_ptr<const Node> node_;
};

// Path from the root: sequence of child indices.
using TermPath = std::vector<std::uint8_t>;

std::size_t size(const Term& t);
std::set<std::string> free_vars(const Term& t);
bool alpha_eq(const Term& a, const Term& b);
bool has_hole(const Term& t);
std::size_t hole_count(const Term& t);

enum class RedexKind : std::uint8_t {
  BetaApp,       // (λx.M) N
  BetaPair,      // case (M, N) of (x, y) -> L
  BetaSum,       // case Left/Right M of {...}
  EtaLam,        // λx. f x, x ∉ fv(f)
  EtaPair,       // case M of (x, y) -> (x, y)
  EtaSum,        // case M of { Left x -> Left x ; Right y -> Right y }
};

const char* to_string(RedexKind k);

struct RedexLocation {
  TermPath path;
  RedexKind kind;
};

// First redex in preorder. Detection is syntactic: a λ-body `f x` is an
// η-redex only when f is hole-free (a hole could still mention x).
std::optional<RedexLocation> find_beta_eta_redex(const Term& t);

// De Bruijn rendering; equal iff the terms are α-equivalent (free variables
// compared by name).
std::string canonical_key(const Term& t);

// Binder names in preorder of introduction.
std::vector<std::string> binders_preorder(const Term& t);

// Renames binders to x0, x1, ... in preorder of introduction (skipping names
// free in the term). Result is α-equivalent to the input.
Term canonical_names(const Term& t);

// Capture-avoiding renaming of the free occurrences of `from` to `to`.
Term rename_free(const Term& t, const std::string& from, const std::string& to);

// Leftmost-outermost hole, if any.
std::optional<TermPath> first_hole(const Term& t);
// Variables in scope at `path` (outermost first).
std::vector<std::string> scope_at(const Term& t, const TermPath& path);
const Term& subterm_at(const Term& t, const TermPath& path);
Term replace_at(const Term& t, const TermPath& path, Term replacement);

// Largest k such that some binder or variable is named x<k>; -1 if none.
long max_x_index(const Term& t);

}  // namespace proofsynth
