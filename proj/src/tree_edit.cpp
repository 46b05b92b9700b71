#include "proofsynth/tree_edit.hpp"

#include <algorithm>

namespace proofsynth {

std::size_t LabeledTree::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

LabeledTree to_tree(const Term& t, bool ignore_names) {
  LabeledTree out;
  out.label = to_string(t.kind());
  if (!ignore_names) {
    switch (t.kind()) {
      case TermKind::Var:
      case TermKind::Lam: out.label += ":" + t.name(); break;
      case TermKind::CasePair:
      case TermKind::CaseSum: out.label += ":" + t.name() + "," + t.name2(); break;
      default: break;
    }
  }
  out.children.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) out.children.push_back(to_tree(t.child(i), ignore_names));
  return out;
}

// ---------------------------------------------------------------------------
// Zhang-Shasha

PostorderTree::PostorderTree(const LabeledTree& t) {
  build(t);
  // A node is a keyroot if no later node shares its leftmost leaf.
  std::vector<bool> taken(labels_.size(), false);
  for (std::size_t i = labels_.size(); i-- > 0;) {
    if (taken[leftmost_[i]]) continue;
    taken[leftmost_[i]] = true;
    keyroots_.push_back(i);
  }
  std::reverse(keyroots_.begin(), keyroots_.end());
}

void PostorderTree::build(const LabeledTree& t) {
  std::size_t first = labels_.size();
  for (const auto& c : t.children) build(c);
  labels_.push_back(t.label);
  leftmost_.push_back(t.children.empty() ? labels_.size() - 1 : leftmost_[first]);
}

std::size_t tree_edit_distance(const PostorderTree& a, const PostorderTree& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> td(n * m, 0);
  std::vector<std::size_t> fd((n + 1) * (m + 1), 0);
  for (std::size_t i : a.keyroots_)
    for (std::size_t j : b.keyroots_) {
      const std::size_t li = a.leftmost_[i], lj = b.leftmost_[j];
      const std::size_t rows = i - li + 2, cols = j - lj + 2;
      auto F = [&](std::size_t r, std::size_t c) -> std::size_t& { return fd[r * cols + c]; };
      F(0, 0) = 0;
      for (std::size_t r = 1; r < rows; ++r) F(r, 0) = F(r - 1, 0) + 1;
      for (std::size_t c = 1; c < cols; ++c) F(0, c) = F(0, c - 1) + 1;
      for (std::size_t r = 1; r < rows; ++r)
        for (std::size_t c = 1; c < cols; ++c) {
          std::size_t x = li + r - 1, y = lj + c - 1;
          std::size_t best = std::min(F(r - 1, c), F(r, c - 1)) + 1;
          if (a.leftmost_[x] == li && b.leftmost_[y] == lj) {
            best = std::min(best, F(r - 1, c - 1) + (a.labels_[x] == b.labels_[y] ? 0 : 1));
            F(r, c) = best;
            td[x * m + y] = best;
          } else {
            std::size_t pr = a.leftmost_[x] - li, pc = b.leftmost_[y] - lj;
            F(r, c) = std::min(best, F(pr, pc) + td[x * m + y]);
          }
        }
    }
  return td[(n - 1) * m + (m - 1)];
}

std::size_t tree_edit_distance(const LabeledTree& a, const LabeledTree& b) {
  return tree_edit_distance(PostorderTree(a), PostorderTree(b));
}

std::size_t tree_edit_distance(const Term& a, const Term& b, bool ignore_names) {
  return tree_edit_distance(to_tree(a, ignore_names), to_tree(b, ignore_names));
}

// ---------------------------------------------------------------------------
// imitate

namespace {

// Renames m's binders (from, in binding order) to n's (to), simultaneously.
Term rebind(const Term& body, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  Term out = body;
  std::vector<std::string> tmp;
  for (std::size_t i = 0; i < from.size(); ++i) {
    tmp.push_back("%" + std::to_string(i));
    out = rename_free(out, from[i], tmp.back());
  }
  for (std::size_t i = 0; i < from.size(); ++i) out = rename_free(out, tmp[i], to[i]);
  return out;
}

}  // namespace

Term imitate(const Term& n, const Term& m) {
  if (n.is_hole()) return m;
  if (n.kind() != m.kind()) return n;
  switch (n.kind()) {
    case TermKind::Var: return n;
    case TermKind::Lam:
      return Term::lam(n.name(), imitate(n.child(0), rebind(m.child(0), {m.name()}, {n.name()})));
    case TermKind::App: return Term::app(imitate(n.child(0), m.child(0)), imitate(n.child(1), m.child(1)));
    case TermKind::Pair: return Term::pair(imitate(n.child(0), m.child(0)), imitate(n.child(1), m.child(1)));
    case TermKind::InjL: return Term::inj_l(imitate(n.child(0), m.child(0)));
    case TermKind::InjR: return Term::inj_r(imitate(n.child(0), m.child(0)));
    case TermKind::CasePair: {
      Term body = rebind(m.child(1), {m.name(), m.name2()}, {n.name(), n.name2()});
      return Term::case_pair(imitate(n.child(0), m.child(0)), n.name(), n.name2(), imitate(n.child(1), body));
    }
    case TermKind::CaseSum: {
      Term l = rebind(m.child(1), {m.name()}, {n.name()});
      Term r = rebind(m.child(2), {m.name2()}, {n.name2()});
      return Term::case_sum(imitate(n.child(0), m.child(0)), n.name(), imitate(n.child(1), l), n.name2(),
                            imitate(n.child(2), r));
    }
    case TermKind::Hole: break;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Costs

const char* to_string(CostKind k) {
  switch (k) {
    case CostKind::BF: return "bf";
    case CostKind::ED: return "ed";
    case CostKind::IM: return "im";
  }
  return "?";
}

std::optional<CostKind> parse_cost_kind(std::string_view s) {
  if (s == "bf") return CostKind::BF;
  if (s == "ed") return CostKind::ED;
  if (s == "im") return CostKind::IM;
  return std::nullopt;
}

std::size_t cost(CostKind kind, const Term& guide, const Term& candidate, bool ignore_names) {
  switch (kind) {
    case CostKind::BF: return size(candidate);
    case CostKind::ED: return size(candidate) + tree_edit_distance(guide, candidate, ignore_names);
    case CostKind::IM:
      return size(candidate) + tree_edit_distance(guide, imitate(candidate, guide), ignore_names);
  }
  return 0;
}

CostFunction::CostFunction(CostKind kind, Term guide, bool ignore_names)
    : kind_(kind), guide_(std::move(guide)), ignore_names_(ignore_names), guide_tree_(to_tree(guide_, ignore_names)) {}

std::size_t CostFunction::operator()(const Term& candidate) const {
  switch (kind_) {
    case CostKind::BF: return size(candidate);
    case CostKind::ED:
      return size(candidate) + tree_edit_distance(guide_tree_, PostorderTree(to_tree(candidate, ignore_names_)));
    case CostKind::IM:
      return size(candidate) +
             tree_edit_distance(guide_tree_, PostorderTree(to_tree(imitate(candidate, guide_), ignore_names_)));
  }
  return 0;
}

}  // namespace proofsynth
