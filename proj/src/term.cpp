#include "proofsynth/term.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace proofsynth {

// ---------------------------------------------------------------------------
// TypeExpr

TypeExpr TypeExpr::atom(std::string name) {
  return TypeExpr(std::make_shared<const Node>(Node{TypeKind::Atom, std::move(name), nullptr, nullptr}));
}

TypeExpr TypeExpr::binary(TypeKind k, TypeExpr l, TypeExpr r) {
  return TypeExpr(std::make_shared<const Node>(Node{k, {}, std::make_shared<const TypeExpr>(std::move(l)),
                                                    std::make_shared<const TypeExpr>(std::move(r))}));
}

TypeExpr TypeExpr::arrow(TypeExpr from, TypeExpr to) { return binary(TypeKind::Arrow, std::move(from), std::move(to)); }
TypeExpr TypeExpr::prod(TypeExpr left, TypeExpr right) { return binary(TypeKind::Prod, std::move(left), std::move(right)); }
TypeExpr TypeExpr::sum(TypeExpr left, TypeExpr right) { return binary(TypeKind::Sum, std::move(left), std::move(right)); }

std::size_t TypeExpr::size() const {
  if (is_atom()) return 1;
  return 1 + left().size() + right().size();
}

namespace {

void collect_atoms(const TypeExpr& t, std::vector<std::string>& out) {
  if (t.is_atom()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  collect_atoms(t.left(), out);
  collect_atoms(t.right(), out);
}

TypeExpr rename_atoms(const TypeExpr& t, const std::map<std::string, std::string>& m) {
  switch (t.kind()) {
    case TypeKind::Atom: return TypeExpr::atom(m.at(t.name()));
    case TypeKind::Arrow: return TypeExpr::arrow(rename_atoms(t.left(), m), rename_atoms(t.right(), m));
    case TypeKind::Prod: return TypeExpr::prod(rename_atoms(t.left(), m), rename_atoms(t.right(), m));
    case TypeKind::Sum: return TypeExpr::sum(rename_atoms(t.left(), m), rename_atoms(t.right(), m));
  }
  return t;
}

}  // namespace

std::vector<std::string> TypeExpr::atoms() const {
  std::vector<std::string> out;
  collect_atoms(*this, out);
  return out;
}

std::string atom_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "t" + std::to_string(index);
}

TypeExpr TypeExpr::canonical_atoms() const {
  std::map<std::string, std::string> m;
  auto names = atoms();
  for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = atom_name(i);
  return rename_atoms(*this, m);
}

bool operator==(const TypeExpr& a, const TypeExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.name() == b.name();
  return a.left() == b.left() && a.right() == b.right();
}

bool operator<(const TypeExpr& a, const TypeExpr& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.is_atom()) return a.name() < b.name();
  if (!(a.left() == b.left())) return a.left() < b.left();
  return a.right() < b.right();
}

bool equal_up_to_renaming(const TypeExpr& a, const TypeExpr& b) {
  return a.canonical_atoms() == b.canonical_atoms();
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind = TermKind::Hole;
  std::uint8_t arity = 0;
  std::string x;
  std::string y;
  std::array<Term, 3> kids;
};

namespace {
const std::string kEmpty;
}

const char* to_string(TermKind k) {
  switch (k) {
    case TermKind::Hole: return "hole";
    case TermKind::Var: return "var";
    case TermKind::Lam: return "lam";
    case TermKind::App: return "app";
    case TermKind::Pair: return "pair";
    case TermKind::CasePair: return "casepair";
    case TermKind::InjL: return "left";
    case TermKind::InjR: return "right";
    case TermKind::CaseSum: return "casesum";
  }
  return "?";
}

TermKind Term::kind() const { return node_ ? node_->kind : TermKind::Hole; }
std::size_t Term::arity() const { return node_ ? node_->arity : 0; }
const Term& Term::child(std::size_t i) const { return node_->kids[i]; }
const std::string& Term::name() const { return node_ ? node_->x : kEmpty; }
const std::string& Term::name2() const { return node_ ? node_->y : kEmpty; }

Term Term::make(TermKind k, std::string x, std::string y, std::initializer_list<Term> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->arity = static_cast<std::uint8_t>(kids.size());
  n->x = std::move(x);
  n->y = std::move(y);
  std::size_t i = 0;
  for (const auto& c : kids) n->kids[i++] = c;
  return Term(std::move(n));
}

Term Term::var(std::string name) { return make(TermKind::Var, std::move(name), {}, {}); }
Term Term::lam(std::string x, Term body) { return make(TermKind::Lam, std::move(x), {}, {std::move(body)}); }
Term Term::app(Term fun, Term arg) { return make(TermKind::App, {}, {}, {std::move(fun), std::move(arg)}); }
Term Term::pair(Term fst, Term snd) { return make(TermKind::Pair, {}, {}, {std::move(fst), std::move(snd)}); }
Term Term::case_pair(Term scrut, std::string x, std::string y, Term body) {
  return make(TermKind::CasePair, std::move(x), std::move(y), {std::move(scrut), std::move(body)});
}
Term Term::inj_l(Term inner) { return make(TermKind::InjL, {}, {}, {std::move(inner)}); }
Term Term::inj_r(Term inner) { return make(TermKind::InjR, {}, {}, {std::move(inner)}); }
Term Term::case_sum(Term scrut, std::string x, Term left, std::string y, Term right) {
  return make(TermKind::CaseSum, std::move(x), std::move(y), {std::move(scrut), std::move(left), std::move(right)});
}

std::size_t Term::binder_count() const {
  switch (kind()) {
    case TermKind::Lam: return 1;
    case TermKind::CasePair:
    case TermKind::CaseSum: return 2;
    default: return 0;
  }
}

std::vector<std::string> Term::binders_for_child(std::size_t i) const {
  switch (kind()) {
    case TermKind::Lam: return {name()};
    case TermKind::CasePair:
      if (i == 1) return {name(), name2()};
      return {};
    case TermKind::CaseSum:
      if (i == 1) return {name()};
      if (i == 2) return {name2()};
      return {};
    default: return {};
  }
}

Term Term::with_children(const std::array<Term, 3>& kids) const {
  if (!node_) return *this;
  auto n = std::make_shared<Node>(*node_);
  for (std::size_t i = 0; i < n->arity; ++i) n->kids[i] = kids[i];
  return Term(std::move(n));
}

Term Term::with_child(std::size_t i, Term c) const {
  auto n = std::make_shared<Node>(*node_);
  n->kids[i] = std::move(c);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.name2() != b.name2()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {

// For each binder visible in child i, 0 if it is the node's first binder and
// 1 if the second.
std::vector<int> binder_slots(const Term& t, std::size_t i) {
  switch (t.kind()) {
    case TermKind::Lam: return {0};
    case TermKind::CasePair: return i == 1 ? std::vector<int>{0, 1} : std::vector<int>{};
    case TermKind::CaseSum:
      if (i == 1) return {0};
      if (i == 2) return {1};
      return {};
    default: return {};
  }
}

// Rebuild `t` with new binder names.
Term with_binders(const Term& t, const std::string& x, const std::string& y) {
  switch (t.kind()) {
    case TermKind::Lam: return Term::lam(x, t.child(0));
    case TermKind::CasePair: return Term::case_pair(t.child(0), x, y, t.child(1));
    case TermKind::CaseSum: return Term::case_sum(t.child(0), x, t.child(1), y, t.child(2));
    default: return t;
  }
}

void free_vars_into(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (t.kind() == TermKind::Var) {
    if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto bs = t.binders_for_child(i);
    for (auto& b : bs) bound.push_back(b);
    free_vars_into(t.child(i), bound, out);
    bound.resize(bound.size() - bs.size());
  }
}

bool occurs_free(const Term& t, const std::string& x) {
  if (t.kind() == TermKind::Var) return t.name() == x;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto bs = t.binders_for_child(i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    if (occurs_free(t.child(i), x)) return true;
  }
  return false;
}

// Index of `name` counted from the innermost binder, or -1.
long debruijn(const std::vector<std::string>& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i] == name) return static_cast<long>(env.size() - 1 - i);
  return -1;
}

bool alpha_eq_rec(const Term& a, const Term& b, std::vector<std::string>& ea, std::vector<std::string>& eb) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Var) {
    long ia = debruijn(ea, a.name());
    long ib = debruijn(eb, b.name());
    if (ia != ib) return false;
    return ia >= 0 || a.name() == b.name();
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    auto ba = a.binders_for_child(i);
    auto bb = b.binders_for_child(i);
    ea.insert(ea.end(), ba.begin(), ba.end());
    eb.insert(eb.end(), bb.begin(), bb.end());
    bool ok = alpha_eq_rec(a.child(i), b.child(i), ea, eb);
    ea.resize(ea.size() - ba.size());
    eb.resize(eb.size() - bb.size());
    if (!ok) return false;
  }
  return true;
}

void key_rec(const Term& t, std::vector<std::string>& env, std::string& out) {
  switch (t.kind()) {
    case TermKind::Hole: out += 'H'; return;
    case TermKind::Var: {
      long i = debruijn(env, t.name());
      if (i >= 0) {
        out += 'v';
        out += std::to_string(i);
      } else {
        out += 'f';
        out += t.name();
        out += ';';
      }
      return;
    }
    case TermKind::Lam: out += 'L'; break;
    case TermKind::App: out += 'A'; break;
    case TermKind::Pair: out += 'P'; break;
    case TermKind::CasePair: out += 'C'; break;
    case TermKind::InjL: out += 'l'; break;
    case TermKind::InjR: out += 'r'; break;
    case TermKind::CaseSum: out += 'S'; break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto bs = t.binders_for_child(i);
    env.insert(env.end(), bs.begin(), bs.end());
    key_rec(t.child(i), env, out);
    env.resize(env.size() - bs.size());
  }
}

bool is_var(const Term& t, const std::string& x) { return t.kind() == TermKind::Var && t.name() == x; }

std::optional<RedexKind> redex_at(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
      if (t.child(0).kind() == TermKind::Lam) return RedexKind::BetaApp;
      return std::nullopt;
    case TermKind::CasePair: {
      if (t.child(0).kind() == TermKind::Pair) return RedexKind::BetaPair;
      const Term& body = t.child(1);
      if (t.name() != t.name2() && body.kind() == TermKind::Pair && is_var(body.child(0), t.name()) &&
          is_var(body.child(1), t.name2()))
        return RedexKind::EtaPair;
      return std::nullopt;
    }
    case TermKind::CaseSum: {
      auto sk = t.child(0).kind();
      if (sk == TermKind::InjL || sk == TermKind::InjR) return RedexKind::BetaSum;
      const Term& l = t.child(1);
      const Term& r = t.child(2);
      if (l.kind() == TermKind::InjL && is_var(l.child(0), t.name()) && r.kind() == TermKind::InjR &&
          is_var(r.child(0), t.name2()))
        return RedexKind::EtaSum;
      return std::nullopt;
    }
    case TermKind::Lam: {
      const Term& body = t.child(0);
      if (body.kind() == TermKind::App && is_var(body.child(1), t.name()) && !has_hole(body.child(0)) &&
          !occurs_free(body.child(0), t.name()))
        return RedexKind::EtaLam;
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

bool find_redex_rec(const Term& t, TermPath& path, RedexKind& kind) {
  if (auto k = redex_at(t)) {
    kind = *k;
    return true;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<std::uint8_t>(i));
    if (find_redex_rec(t.child(i), path, kind)) return true;
    path.pop_back();
  }
  return false;
}

void binders_rec(const Term& t, std::vector<std::string>& out) {
  if (t.kind() == TermKind::Lam) out.push_back(t.name());
  if (t.kind() == TermKind::CasePair || t.kind() == TermKind::CaseSum) {
    out.push_back(t.name());
    out.push_back(t.name2());
  }
  for (std::size_t i = 0; i < t.arity(); ++i) binders_rec(t.child(i), out);
}

struct Renamer {
  const std::set<std::string>& avoid;
  long next = 0;
  std::vector<std::pair<std::string, std::string>> env;  // old -> new

  std::string fresh() {
    for (;;) {
      std::string n = "x" + std::to_string(next++);
      if (!avoid.count(n)) return n;
    }
  }

  std::string lookup(const std::string& old) const {
    for (std::size_t i = env.size(); i-- > 0;)
      if (env[i].first == old) return env[i].second;
    return old;
  }

  Term run(const Term& t) {
    switch (t.kind()) {
      case TermKind::Hole: return t;
      case TermKind::Var: return Term::var(lookup(t.name()));
      default: break;
    }
    std::string nx, ny;
    if (t.binder_count() >= 1) nx = fresh();
    if (t.binder_count() >= 2) ny = fresh();
    std::array<Term, 3> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) {
      auto bs = t.binders_for_child(i);
      auto slots = binder_slots(t, i);
      for (std::size_t j = 0; j < bs.size(); ++j) env.emplace_back(bs[j], slots[j] == 0 ? nx : ny);
      kids[i] = run(t.child(i));
      env.resize(env.size() - bs.size());
    }
    Term rebuilt = t.with_children(kids);
    return with_binders(rebuilt, nx, ny);
  }
};

std::string fresh_name_avoiding(const std::set<std::string>& avoid) {
  for (long k = 0;; ++k) {
    std::string n = "x" + std::to_string(k);
    if (!avoid.count(n)) return n;
  }
}

bool first_hole_rec(const Term& t, TermPath& path) {
  if (t.is_hole()) return true;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<std::uint8_t>(i));
    if (first_hole_rec(t.child(i), path)) return true;
    path.pop_back();
  }
  return false;
}

long x_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return -1;
  long v = 0;
  auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return -1;
  return v;
}

}  // namespace

std::size_t size(const Term& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.arity(); ++i) n += size(t.child(i));
  return n;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_into(t, bound, out);
  return out;
}

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::string> ea, eb;
  return alpha_eq_rec(a, b, ea, eb);
}

bool has_hole(const Term& t) {
  if (t.is_hole()) return true;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_hole(t.child(i))) return true;
  return false;
}

std::size_t hole_count(const Term& t) {
  if (t.is_hole()) return 1;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.arity(); ++i) n += hole_count(t.child(i));
  return n;
}

const char* to_string(RedexKind k) {
  switch (k) {
    case RedexKind::BetaApp: return "beta-app";
    case RedexKind::BetaPair: return "beta-pair";
    case RedexKind::BetaSum: return "beta-sum";
    case RedexKind::EtaLam: return "eta-lam";
    case RedexKind::EtaPair: return "eta-pair";
    case RedexKind::EtaSum: return "eta-sum";
  }
  return "?";
}

std::optional<RedexLocation> find_beta_eta_redex(const Term& t) {
  TermPath path;
  RedexKind kind{};
  if (find_redex_rec(t, path, kind)) return RedexLocation{std::move(path), kind};
  return std::nullopt;
}

std::string canonical_key(const Term& t) {
  std::string out;
  std::vector<std::string> env;
  key_rec(t, env, out);
  return out;
}

std::vector<std::string> binders_preorder(const Term& t) {
  std::vector<std::string> out;
  binders_rec(t, out);
  return out;
}

Term canonical_names(const Term& t) {
  auto fv = free_vars(t);
  Renamer r{fv, 0, {}};
  return r.run(t);
}

Term rename_free(const Term& t, const std::string& from, const std::string& to) {
  if (from == to) return t;
  switch (t.kind()) {
    case TermKind::Hole: return t;
    case TermKind::Var: return t.name() == from ? Term::var(to) : t;
    default: break;
  }
  std::string nx = t.name(), ny = t.name2();
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Term c = t.child(i);
    auto bs = t.binders_for_child(i);
    if (std::find(bs.begin(), bs.end(), from) != bs.end() || !occurs_free(c, from)) {
      kids[i] = c;
      continue;
    }
    // A binder named `to` would capture the renamed occurrences: rename it.
    auto slots = binder_slots(t, i);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (bs[j] != to) continue;
      auto avoid = free_vars(c);
      avoid.insert(to);
      avoid.insert(from);
      std::string z = fresh_name_avoiding(avoid);
      c = rename_free(c, to, z);
      (slots[j] == 0 ? nx : ny) = z;
    }
    kids[i] = rename_free(c, from, to);
  }
  return with_binders(t.with_children(kids), nx, ny);
}

std::optional<TermPath> first_hole(const Term& t) {
  TermPath p;
  if (first_hole_rec(t, p)) return p;
  return std::nullopt;
}

std::vector<std::string> scope_at(const Term& t, const TermPath& path) {
  std::vector<std::string> scope;
  const Term* cur = &t;
  for (auto i : path) {
    auto bs = cur->binders_for_child(i);
    scope.insert(scope.end(), bs.begin(), bs.end());
    cur = &cur->child(i);
  }
  return scope;
}

const Term& subterm_at(const Term& t, const TermPath& path) {
  const Term* cur = &t;
  for (auto i : path) {
    if (i >= cur->arity()) throw std::out_of_range("subterm_at: bad path");
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {
Term replace_rec(const Term& t, const TermPath& path, std::size_t depth, Term replacement) {
  if (depth == path.size()) return replacement;
  std::size_t i = path[depth];
  if (i >= t.arity()) throw std::out_of_range("replace_at: bad path");
  return t.with_child(i, replace_rec(t.child(i), path, depth + 1, std::move(replacement)));
}
}  // namespace

Term replace_at(const Term& t, const TermPath& path, Term replacement) {
  return replace_rec(t, path, 0, std::move(replacement));
}

long max_x_index(const Term& t) {
  long m = -1;
  if (t.kind() == TermKind::Var) m = x_index(t.name());
  if (t.binder_count() >= 1) m = std::max(m, x_index(t.name()));
  if (t.binder_count() >= 2) m = std::max(m, x_index(t.name2()));
  for (std::size_t i = 0; i < t.arity(); ++i) m = std::max(m, max_x_index(t.child(i)));
  return m;
}

}  // namespace proofsynth
