#include "proofsynth/search.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "proofsynth/typecheck.hpp"

namespace proofsynth {

// ---------------------------------------------------------------------------
// Shallow contexts

Term ShallowContext::instantiate() const {
  switch (kind) {
    case Kind::UseVar: return Term::var(x);
    case Kind::Lam: return Term::lam(x, Term::hole());
    case Kind::App: return Term::app(Term::hole(), Term::hole());
    case Kind::Pair: return Term::pair(Term::hole(), Term::hole());
    case Kind::CasePair: return Term::case_pair(Term::hole(), x, y, Term::hole());
    case Kind::InjL: return Term::inj_l(Term::hole());
    case Kind::InjR: return Term::inj_r(Term::hole());
    case Kind::CaseSum: return Term::case_sum(Term::hole(), x, Term::hole(), y, Term::hole());
  }
  return Term::hole();
}

std::vector<ShallowContext> shallow_contexts(const std::vector<std::string>& scope, long next) {
  using K = ShallowContext::Kind;
  std::vector<ShallowContext> out;
  for (const auto& v : scope) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const ShallowContext& c) { return c.x == v; });
    if (!dup) out.push_back({K::UseVar, v, {}});
  }
  std::string a = "x" + std::to_string(next);
  std::string b = "x" + std::to_string(next + 1);
  out.push_back({K::Lam, a, {}});
  out.push_back({K::App, {}, {}});
  out.push_back({K::Pair, {}, {}});
  out.push_back({K::CasePair, a, b});
  out.push_back({K::InjL, {}, {}});
  out.push_back({K::InjR, {}, {}});
  out.push_back({K::CaseSum, a, b});
  return out;
}

namespace {

struct Keyed {
  Term term;
  std::string key;
};

std::vector<Keyed> gen_keyed(const Term& n, const TypeExpr& goal, std::size_t max_size) {
  auto hole = first_hole(n);
  if (!hole) throw std::invalid_argument("no hole to fill");
  const std::size_t base = size(n);
  std::vector<Keyed> out;
  std::unordered_set<std::string> seen;
  for (const auto& ctx : shallow_contexts(scope_at(n, *hole), max_x_index(n) + 1)) {
    Term filler = ctx.instantiate();
    if (base + size(filler) - 1 > max_size) continue;
    Term c = replace_at(n, *hole, filler);
    if (find_beta_eta_redex(c)) continue;
    if (!check_partial(c, goal)) continue;
    std::string key = canonical_key(c);
    if (!seen.insert(key).second) continue;
    out.push_back({std::move(c), std::move(key)});
  }
  return out;
}

}  // namespace

std::vector<Term> gen_candidates(const Term& n, const TypeExpr& goal, const GenOptions& opts) {
  std::vector<Term> out;
  for (auto& k : gen_keyed(n, goal, opts.max_candidate_size)) out.push_back(std::move(k.term));
  return out;
}

// ---------------------------------------------------------------------------
// Queue and search

void CandidateQueue::push(std::size_t cost, Term t) { heap_.push({cost, next_++, std::move(t)}); }

CandidateQueue::Item CandidateQueue::pop() {
  Item top = heap_.top();
  heap_.pop();
  return top;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "proved";
    case Outcome::BudgetExceeded: return "budget";
  }
  return "?";
}

SearchResult best_first_search(const TypeExpr& goal, const CostFn& cost, const SearchLimits& limits) {
  SearchResult r;
  CandidateQueue q;
  std::unordered_set<std::string> seen;
  Term start = Term::hole();
  seen.insert(canonical_key(start));
  q.push(cost(start), start);
  r.pushes = 1;
  while (!q.empty()) {
    if (r.pops >= limits.max_pops) return r;
    auto item = q.pop();
    ++r.pops;
    if (limits.record_trace) r.trace.push_back({item.cost, canonical_key(item.term)});
    if (!has_hole(item.term)) {
      // Every queued term passed the partial check, so a complete one is a proof.
      if (!check_partial(item.term, goal)) throw std::logic_error("unsound candidate reached the queue");
      r.outcome = Outcome::Proved;
      r.proof = item.term;
      return r;
    }
    for (auto& c : gen_keyed(item.term, goal, limits.max_candidate_size)) {
      if (!seen.insert(c.key).second) continue;
      std::size_t k = cost(c.term);
      q.push(k, std::move(c.term));
      ++r.pushes;
    }
  }
  r.frontier_exhausted = true;
  return r;
}

// ---------------------------------------------------------------------------
// Guides

namespace {

struct Edit {
  enum class Op : std::uint8_t { Rename, Swap, WrapLeft, WrapRight, Unwrap };
  TermPath path;
  Op op;
  std::string name;
};

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Var) out.insert(t.name());
  for (const auto& b : binders_preorder(t)) out.insert(b);
}

void collect_edits(const Term& t, TermPath& path, const std::set<std::string>& names, const std::string& fresh,
                   std::vector<Edit>& out) {
  out.push_back({path, Edit::Op::WrapLeft, {}});
  out.push_back({path, Edit::Op::WrapRight, {}});
  switch (t.kind()) {
    case TermKind::Var: {
      bool any = false;
      for (const auto& n : names)
        if (n != t.name()) {
          out.push_back({path, Edit::Op::Rename, n});
          any = true;
        }
      if (!any) out.push_back({path, Edit::Op::Rename, fresh});
      break;
    }
    case TermKind::InjL:
    case TermKind::InjR:
      out.push_back({path, Edit::Op::Swap, {}});
      out.push_back({path, Edit::Op::Unwrap, {}});
      break;
    default: break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<std::uint8_t>(i));
    collect_edits(t.child(i), path, names, fresh, out);
    path.pop_back();
  }
}

Term apply_edit(const Term& t, const Edit& e) {
  const Term& at = subterm_at(t, e.path);
  Term repl;
  switch (e.op) {
    case Edit::Op::Rename: repl = Term::var(e.name); break;
    case Edit::Op::Swap:
      repl = at.kind() == TermKind::InjL ? Term::inj_r(at.child(0)) : Term::inj_l(at.child(0));
      break;
    case Edit::Op::WrapLeft: repl = Term::inj_l(at); break;
    case Edit::Op::WrapRight: repl = Term::inj_r(at); break;
    case Edit::Op::Unwrap: repl = at.child(0); break;
  }
  return replace_at(t, e.path, std::move(repl));
}

}  // namespace

Term corrupt(const Term& t, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Term cur = t;
  for (std::size_t i = 0; i < k; ++i) {
    std::set<std::string> names;
    collect_names(cur, names);
    std::string fresh = "x" + std::to_string(max_x_index(cur) + 1);
    std::vector<Edit> edits;
    TermPath path;
    collect_edits(cur, path, names, fresh, edits);
    std::uniform_int_distribution<std::size_t> pick(0, edits.size() - 1);
    cur = apply_edit(cur, edits[pick(rng)]);
  }
  return cur;
}

GuideOutcome make_guide(const TypeExpr& goal, const GuideSpec& spec, const std::optional<Term>& reference,
                        std::uint64_t seed, GuideClient* client) {
  GuideOutcome g;
  switch (spec.kind) {
    case GuideSpec::Kind::Null: g.guide = Term::hole(); break;
    case GuideSpec::Kind::Fixed: g.guide = canonical_names(spec.fixed); break;
    case GuideSpec::Kind::CorruptedOracle:
      if (!reference) throw std::invalid_argument("a corrupted-oracle guide needs a reference proof");
      g.guide = corrupt(canonical_names(*reference), spec.edits, seed);
      break;
    case GuideSpec::Kind::External: {
      std::optional<GuideClient> own;
      if (!client) client = &own.emplace(spec.command);
      GuideReply reply = client->ask(tokenize_type(goal));
      if (reply.kind == GuideReply::Kind::None) {
        g.guide = Term::hole();
        break;
      }
      auto rep = nearest_term(reply.tokens);
      g.guide = canonical_names(rep.term);
      g.repair_distance = rep.distance;
      g.repaired = rep.distance > 0;
      break;
    }
  }
  return g;
}

SynthesisResult synthesize(const TypeExpr& goal, const SynthesisConfig& config, GuideClient* client) {
  auto t0 = std::chrono::steady_clock::now();
  SynthesisResult out;
  GuideOutcome g = make_guide(goal, config.guide, config.reference, config.seed, client);
  out.guide = g.guide;
  out.guide_repair_distance = g.repair_distance;
  CostFunction cf(config.cost_kind, g.guide, config.ignore_names);
  SearchLimits limits;
  limits.max_pops = config.max_pops;
  limits.max_candidate_size = config.max_candidate_size;
  limits.record_trace = config.record_trace;
  SearchResult r = best_first_search(goal, [&cf](const Term& t) { return cf(t); }, limits);
  out.outcome = r.outcome;
  out.proof = r.proof;
  out.pops = r.pops;
  out.pushes = r.pushes;
  out.frontier_exhausted = r.frontier_exhausted;
  out.trace = std::move(r.trace);
  if (r.proof) out.guide_distance = tree_edit_distance(g.guide, *r.proof, config.ignore_names);
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace proofsynth
