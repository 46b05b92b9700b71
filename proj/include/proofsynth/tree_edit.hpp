#pragma once

// Ordered tree edit distance (Zhang-Shasha, unit costs) on term ASTs, the
// imitate transformation and the three candidate cost functions.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proofsynth/term.hpp"

namespace proofsynth {

struct LabeledTree {
  std::string label;
  std::vector<LabeledTree> children;

  std::size_t size() const;
  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.label == b.label && a.children == b.children;
  }
};

// Labels: "lam:x", "app", "pair", "casepair:x,y", "left", "right",
// "casesum:x,y", "var:x", "hole". With ignore_names the ":..." suffixes are
// dropped, so only the constructor shape is compared.
LabeledTree to_tree(const Term& t, bool ignore_names = false);

// A tree flattened to postorder with the tables Zhang-Shasha needs; build
// once when one side is compared against many trees.
class PostorderTree {
 public:
  explicit PostorderTree(const LabeledTree& t);
  std::size_t size() const { return labels_.size(); }

 private:
  friend std::size_t tree_edit_distance(const PostorderTree& a, const PostorderTree& b);
  void build(const LabeledTree& t);
  std::vector<std::string> labels_;
  std::vector<std::size_t> leftmost_;  // leftmost leaf descendant, postorder index
  std::vector<std::size_t> keyroots_;
};

std::size_t tree_edit_distance(const PostorderTree& a, const PostorderTree& b);
std::size_t tree_edit_distance(const LabeledTree& a, const LabeledTree& b);
std::size_t tree_edit_distance(const Term& a, const Term& b, bool ignore_names = false);

// Fills the holes of n with the corresponding subterms of m where the two
// share structure. Binder clauses need equal constructors; m's binders are
// renamed to n's before recursing.
Term imitate(const Term& n, const Term& m);

enum class CostKind : std::uint8_t { BF, ED, IM };

const char* to_string(CostKind k);
std::optional<CostKind> parse_cost_kind(std::string_view s);

// BF: size(n). ED: size(n) + EditDist(guide, n).
// IM: size(n) + EditDist(guide, imitate(n, guide)).
std::size_t cost(CostKind kind, const Term& guide, const Term& candidate, bool ignore_names = false);

// Same, with the guide's tree prepared in advance.
class CostFunction {
 public:
  CostFunction(CostKind kind, Term guide, bool ignore_names = false);
  std::size_t operator()(const Term& candidate) const;
  CostKind kind() const { return kind_; }
  const Term& guide() const { return guide_; }

 private:
  CostKind kind_;
  Term guide_;
  bool ignore_names_;
  PostorderTree guide_tree_;
};

}  // namespace proofsynth
