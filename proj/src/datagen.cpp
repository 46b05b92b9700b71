#include "proofsynth/datagen.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "proofsynth/repair.hpp"
#include "proofsynth/tree_edit.hpp"
#include "proofsynth/type_arena.hpp"
#include "proofsynth/typecheck.hpp"

namespace proofsynth {

// ---------------------------------------------------------------------------
// The term space
//
// Terms are built top-down, leftmost first, as a stack of obligations
// (context, goal type) over a shared TypeArena, consuming one node per
// choice. The number of completions of a state depends only on the state
// up to renaming of metas, so it is memoized on a canonical rendering.
//
// For βη-normal terms, obligations carry tags:
//  - function, pair-case scrutinee and sum-case scrutinee positions forbid
//    λ, pairs and injections respectively (β);
//  - a λ body that becomes an application watches the λ's variable in the
//    function part; the argument may be that variable only if it was seen
//    (η for functions);
//  - the first component of a pair-case body pair records whether it is the
//    first bound variable; if so the second may not be the second (η for
//    pairs); sum cases are handled the same way across their branches.
// Watch results live in slots, which are part of the memo key.

namespace {

enum : std::uint8_t { kNoLam = 1, kNoPair = 2, kNoInj = 4 };

enum class Special : std::uint8_t { None, LamBody, PairBody, SumLeft, SumRight, Mark, Forbid };

struct Ob {
  std::vector<int> ctx;  // arena nodes, outermost binder first
  int goal = -1;
  std::uint8_t no = 0;
  Special sp = Special::None;
  int p = -1;        // Mark/Forbid: context index
  int s = -1;        // slot for SumLeft/SumRight/Mark/Forbid
  bool pol = false;  // Forbid applies when the slot equals pol
  std::vector<std::pair<int, int>> watches;  // (context index, slot)
};

enum class CK : std::uint8_t { Var, Lam, App, Pair, CasePair, InjL, InjR, CaseSum };

struct Choice {
  CK kind;
  int var = -1;
};

constexpr CK kConstructors[] = {CK::Lam, CK::App, CK::Pair, CK::CasePair, CK::InjL, CK::InjR, CK::CaseSum};

Count add(Count a, Count b) {
  Count c;
  if (__builtin_add_overflow(a, b, &c)) throw std::overflow_error("term count exceeds 64 bits");
  return c;
}

struct Builder {
  const std::vector<Choice>& cs;
  std::size_t i = 0;
  long next = 0;

  std::string fresh() { return "x" + std::to_string(next++); }

  Term build(std::vector<std::string>& env) {
    const Choice c = cs[i++];
    switch (c.kind) {
      case CK::Var: return Term::var(env[static_cast<std::size_t>(c.var)]);
      case CK::Lam: {
        std::string x = fresh();
        env.push_back(x);
        Term b = build(env);
        env.pop_back();
        return Term::lam(x, b);
      }
      case CK::App: {
        Term f = build(env);
        return Term::app(f, build(env));
      }
      case CK::Pair: {
        Term a = build(env);
        return Term::pair(a, build(env));
      }
      case CK::CasePair: {
        std::string x = fresh(), y = fresh();
        Term s = build(env);
        env.push_back(x);
        env.push_back(y);
        Term b = build(env);
        env.resize(env.size() - 2);
        return Term::case_pair(s, x, y, b);
      }
      case CK::InjL: return Term::inj_l(build(env));
      case CK::InjR: return Term::inj_r(build(env));
      case CK::CaseSum: {
        std::string x = fresh(), y = fresh();
        Term s = build(env);
        env.push_back(x);
        Term l = build(env);
        env.back() = y;
        Term r = build(env);
        env.pop_back();
        return Term::case_sum(s, x, l, y, r);
      }
    }
    return Term::hole();
  }
};

Term build_term(const std::vector<Choice>& cs) {
  Builder b{cs};
  std::vector<std::string> env;
  return b.build(env);
}

}  // namespace

struct TermSpace::Impl {
  bool normal;
  std::optional<TypeExpr> goal;
  TypeArena arena;
  std::vector<Ob> stack;
  std::vector<std::int8_t> slots;
  std::unordered_map<std::string, Count> memo;

  void reset() {
    arena = TypeArena();
    stack.clear();
    slots.clear();
    Ob root;
    root.goal = goal ? arena.import(*goal) : arena.fresh();
    stack.push_back(std::move(root));
  }

  bool split(int g, TypeArena::Tag want, int& l, int& r) {
    g = arena.find(g);
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

  int new_slot() {
    slots.push_back(0);
    return static_cast<int>(slots.size()) - 1;
  }

  Ob child(const Ob& o, int goal_node) const {
    Ob c;
    c.ctx = o.ctx;
    c.goal = goal_node;
    c.watches = o.watches;
    return c;
  }

  // Pushes the obligations for choice c on o. False if c is ruled out.
  bool expand(const Ob& o, const Choice& c) {
    using Tag = TypeArena::Tag;
    const int n = static_cast<int>(o.ctx.size());
    switch (c.kind) {
      case CK::Var: {
        if (o.sp == Special::Forbid && c.var == o.p && (slots[o.s] != 0) == o.pol) return false;
        if (!arena.unify(o.ctx[c.var], o.goal)) return false;
        for (const auto& [wp, ws] : o.watches)
          if (wp == c.var) slots[ws] = 1;
        if (o.sp == Special::Mark && c.var == o.p) slots[o.s] = 1;
        return true;
      }
      case CK::Lam: {
        if (o.no & kNoLam) return false;
        int a, b;
        if (!split(o.goal, Tag::Arrow, a, b)) return false;
        Ob body = child(o, b);
        body.ctx.push_back(a);
        if (normal) body.sp = Special::LamBody;
        stack.push_back(std::move(body));
        return true;
      }
      case CK::App: {
        int a = arena.fresh();
        Ob fun = child(o, arena.arrow(a, o.goal));
        Ob arg = child(o, a);
        if (normal) {
          fun.no = kNoLam;
          if (o.sp == Special::LamBody) {
            int s = new_slot();
            fun.watches.emplace_back(n - 1, s);
            arg.sp = Special::Forbid;
            arg.p = n - 1;
            arg.s = s;
            arg.pol = false;
          }
        }
        stack.push_back(std::move(arg));
        stack.push_back(std::move(fun));
        return true;
      }
      case CK::Pair: {
        if (o.no & kNoPair) return false;
        int a, b;
        if (!split(o.goal, Tag::Prod, a, b)) return false;
        Ob fst = child(o, a);
        Ob snd = child(o, b);
        if (normal && o.sp == Special::PairBody) {
          int s = new_slot();
          fst.sp = Special::Mark;
          fst.p = n - 2;
          fst.s = s;
          snd.sp = Special::Forbid;
          snd.p = n - 1;
          snd.s = s;
          snd.pol = true;
        }
        stack.push_back(std::move(snd));
        stack.push_back(std::move(fst));
        return true;
      }
      case CK::CasePair: {
        int a = arena.fresh(), b = arena.fresh();
        Ob scrut = child(o, arena.prod(a, b));
        Ob body = child(o, o.goal);
        body.ctx.push_back(a);
        body.ctx.push_back(b);
        if (normal) {
          scrut.no = kNoPair;
          body.sp = Special::PairBody;
        }
        stack.push_back(std::move(body));
        stack.push_back(std::move(scrut));
        return true;
      }
      case CK::InjL:
      case CK::InjR: {
        if (o.no & kNoInj) return false;
        int a, b;
        if (!split(o.goal, Tag::Sum, a, b)) return false;
        Ob inner = child(o, c.kind == CK::InjL ? a : b);
        if (normal && c.kind == CK::InjL && o.sp == Special::SumLeft) {
          inner.sp = Special::Mark;
          inner.p = n - 1;
          inner.s = o.s;
        }
        if (normal && c.kind == CK::InjR && o.sp == Special::SumRight) {
          inner.sp = Special::Forbid;
          inner.p = n - 1;
          inner.s = o.s;
          inner.pol = true;
        }
        stack.push_back(std::move(inner));
        return true;
      }
      case CK::CaseSum: {
        int a = arena.fresh(), b = arena.fresh();
        Ob scrut = child(o, arena.sum(a, b));
        Ob left = child(o, o.goal);
        Ob right = child(o, o.goal);
        left.ctx.push_back(a);
        right.ctx.push_back(b);
        if (normal) {
          scrut.no = kNoInj;
          int s = new_slot();
          left.sp = Special::SumLeft;
          left.s = s;
          right.sp = Special::SumRight;
          right.s = s;
        }
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
        stack.push_back(std::move(scrut));
        return true;
      }
    }
    return false;
  }

  // Calls f(choice) with the state advanced by each admissible choice, in
  // a fixed order: variables innermost first, then constructors. Stops when
  // f returns false. `r` is the node budget including this choice.
  template <class F>
  bool for_each_choice(const Ob& o, std::size_t r, F&& f) {
    auto attempt = [&](const Choice& c) {
      auto mark = arena.mark();
      std::size_t depth = stack.size();
      auto saved = slots;
      bool go = true;
      if (expand(o, c) && r - 1 >= stack.size()) go = f(c);
      arena.rollback(mark);
      stack.resize(depth);
      slots = std::move(saved);
      return go;
    };
    for (int i = static_cast<int>(o.ctx.size()); i-- > 0;)
      if (!attempt({CK::Var, i})) return false;
    for (CK k : kConstructors)
      if (!attempt({k, -1})) return false;
    return true;
  }

  std::string key(std::size_t r) const {
    std::string k = std::to_string(r);
    k += '#';
    std::vector<int> metas;
    std::vector<int> slot_ids;
    auto sid = [&](int s) {
      auto it = std::find(slot_ids.begin(), slot_ids.end(), s);
      if (it != slot_ids.end()) return std::to_string(it - slot_ids.begin());
      slot_ids.push_back(s);
      return std::to_string(slot_ids.size() - 1) + "=" + std::to_string(slots[s]);
    };
    for (std::size_t i = stack.size(); i-- > 0;) {
      const Ob& o = stack[i];
      k += static_cast<char>('0' + o.no);
      switch (o.sp) {
        case Special::None: break;
        case Special::LamBody: k += 'L'; break;
        case Special::PairBody: k += 'P'; break;
        case Special::SumLeft: k += "l" + sid(o.s); break;
        case Special::SumRight: k += "r" + sid(o.s); break;
        case Special::Mark: k += "m" + std::to_string(o.p) + ":" + sid(o.s); break;
        case Special::Forbid:
          k += "f" + std::to_string(o.p) + ":" + sid(o.s) + (o.pol ? "+" : "-");
          break;
      }
      for (const auto& [wp, ws] : o.watches)
        if (!slots[ws]) k += "w" + std::to_string(wp) + ":" + sid(ws);
      k += '[';
      for (int c : o.ctx) {
        arena.serialize(c, k, metas);
        k += ',';
      }
      k += ']';
      arena.serialize(o.goal, k, metas);
      k += ';';
    }
    return k;
  }

  Count count_rec(std::size_t r) {
    if (stack.empty()) return r == 0 ? 1 : 0;
    if (r < stack.size()) return 0;
    std::string k = key(r);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    Ob o = std::move(stack.back());
    stack.pop_back();
    Count total = 0;
    for_each_choice(o, r, [&](const Choice&) {
      total = add(total, count_rec(r - 1));
      return true;
    });
    stack.push_back(std::move(o));
    memo.emplace(std::move(k), total);
    return total;
  }

  void unrank_rec(std::size_t r, Count& index, std::vector<Choice>& out) {
    if (stack.empty()) return;
    Ob o = std::move(stack.back());
    stack.pop_back();
    for_each_choice(o, r, [&](const Choice& c) {
      Count k = count_rec(r - 1);
      if (index >= k) {
        index -= k;
        return true;
      }
      out.push_back(c);
      unrank_rec(r - 1, index, out);
      return false;
    });
    stack.push_back(std::move(o));
  }

  bool enumerate_rec(std::size_t r, std::vector<Choice>& path, const std::function<bool(const Term&)>& visit) {
    if (stack.empty()) return r == 0 ? visit(build_term(path)) : true;
    if (count_rec(r) == 0) return true;
    Ob o = std::move(stack.back());
    stack.pop_back();
    bool go = for_each_choice(o, r, [&](const Choice& c) {
      path.push_back(c);
      bool cont = enumerate_rec(r - 1, path, visit);
      path.pop_back();
      return cont;
    });
    stack.push_back(std::move(o));
    return go;
  }
};

TermSpace::TermSpace(bool normal_only, std::optional<TypeExpr> goal) : impl_(std::make_unique<Impl>()) {
  impl_->normal = normal_only;
  impl_->goal = std::move(goal);
}

TermSpace::~TermSpace() = default;
TermSpace::TermSpace(TermSpace&&) noexcept = default;
TermSpace& TermSpace::operator=(TermSpace&&) noexcept = default;

Count TermSpace::count(std::size_t s) {
  impl_->reset();
  return impl_->count_rec(s);
}

Term TermSpace::unrank(std::size_t s, Count index) {
  if (index >= count(s)) throw std::out_of_range("term index out of range");
  impl_->reset();
  std::vector<Choice> cs;
  impl_->unrank_rec(s, index, cs);
  return build_term(cs);
}

Term TermSpace::sample(std::size_t s, std::mt19937_64& rng) {
  Count n = count(s);
  if (n == 0) throw std::invalid_argument("no term of size " + std::to_string(s));
  Count i = std::uniform_int_distribution<Count>(0, n - 1)(rng);
  return unrank(s, i);
}

bool TermSpace::enumerate(std::size_t s, const std::function<bool(const Term&)>& visit) {
  impl_->reset();
  std::vector<Choice> path;
  return impl_->enumerate_rec(s, path, visit);
}

bool TermSpace::normal_only() const { return impl_->normal; }
std::size_t TermSpace::memo_size() const { return impl_->memo.size(); }

namespace {

TermSpace& shared_space(bool normal_only) {
  thread_local TermSpace all(false);
  thread_local TermSpace normal(true);
  return normal_only ? normal : all;
}

}  // namespace

Count count_terms(std::size_t s, bool normal_only) { return shared_space(normal_only).count(s); }

Term sample_term(std::size_t s, bool normal_only, std::mt19937_64& rng) {
  return shared_space(normal_only).sample(s, rng);
}

Term sample_term(std::size_t s, bool normal_only, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_term(s, normal_only, rng);
}

// ---------------------------------------------------------------------------
// Datasets

DatasetEntry make_entry(const TypeExpr& type, const Term& proof) {
  return {type, proof, type_text(type), term_text(proof)};
}

namespace {

struct Sampler {
  const DatasetOptions& opts;
  std::mt19937_64 rng;
  TermSpace space;
  std::size_t draws = 0;
  std::size_t cap;

  Sampler(const DatasetOptions& o, std::uint64_t seed, std::size_t n)
      : opts(o), rng(seed), space(o.normal_only), cap(o.max_draws ? o.max_draws : 2000 * n + 100000) {
    if (o.min_size < 1 || o.min_size > o.max_size) throw std::invalid_argument("bad size range");
  }

  // Next accepted (type, proof) draw.
  SampleRecord next() {
    std::uniform_int_distribution<std::size_t> sz(opts.min_size, opts.max_size);
    for (;;) {
      if (++draws > cap) throw std::runtime_error("dataset generation exceeded its draw limit");
      std::size_t s = sz(rng);
      if (space.count(s) == 0) continue;
      Term m = space.sample(s, rng);
      auto t = infer_type(m);
      if (!t) throw std::logic_error("sampled an untypable term");
      if (t->atoms().size() > opts.max_atoms) continue;
      return {*t, m};
    }
  }
};

}  // namespace

std::vector<DatasetEntry> training_dataset(std::size_t n, std::uint64_t seed, const DatasetOptions& opts,
                                           std::vector<SampleRecord>* trace) {
  Sampler sampler(opts, seed, n);
  std::map<TypeExpr, std::size_t> index;
  std::vector<DatasetEntry> out;
  while (out.size() < n) {
    SampleRecord d = sampler.next();
    if (trace) trace->push_back(d);
    auto it = index.find(d.type);
    if (it == index.end()) {
      index.emplace(d.type, out.size());
      out.push_back(make_entry(d.type, d.proof));
    } else if (size(d.proof) < size(out[it->second].proof)) {
      out[it->second] = make_entry(d.type, d.proof);
    }
  }
  return out;
}

std::vector<DatasetEntry> test_dataset(std::size_t n, const std::vector<TypeExpr>& exclude, std::uint64_t seed,
                                       const DatasetOptions& opts) {
  Sampler sampler(opts, seed, n);
  std::set<TypeExpr> taken;
  for (const auto& t : exclude) taken.insert(t.canonical_atoms());
  std::vector<DatasetEntry> out;
  while (out.size() < n) {
    SampleRecord d = sampler.next();
    if (!taken.insert(d.type).second) continue;
    out.push_back(make_entry(d.type, d.proof));
  }
  return out;
}

void write_dataset(std::ostream& out, const DatasetHeader& h, const std::vector<DatasetEntry>& entries) {
  nlohmann::json head = {{"generator", h.generator}, {"seed", h.seed}, {"n", h.n}, {"normal_only", h.normal_only}};
  out << head.dump() << '\n';
  for (const auto& e : entries) {
    nlohmann::json j = {{"type_tokens", e.type_tokens},
                        {"term_tokens", e.term_tokens},
                        {"size", size(e.proof)},
                        {"normal_only", h.normal_only}};
    out << j.dump() << '\n';
  }
}

std::vector<DatasetEntry> read_dataset(std::istream& in, DatasetHeader* header) {
  std::vector<DatasetEntry> out;
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (!seen_header && j.contains("generator")) {
        seen_header = true;
        if (header) {
          header->generator = j.at("generator").get<std::string>();
          header->seed = j.value("seed", std::uint64_t{0});
          header->n = j.value("n", std::size_t{0});
          header->normal_only = j.value("normal_only", false);
        }
        continue;
      }
      TypeExpr t = parse_type_text(j.at("type_tokens").get<std::string>());
      Term m;
      if (j.contains("term_tokens") && !j.at("term_tokens").is_null())
        m = parse_term_text(j.at("term_tokens").get<std::string>());
      out.push_back(make_entry(t, m));
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

ProofSet enumerate_proofs(const TypeExpr& goal, std::size_t max_size, std::size_t cap, double time_limit_ms) {
  ProofSet out;
  TermSpace space(false, goal);
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t s = 1; s <= max_size && out.complete; ++s) {
    space.enumerate(s, [&](const Term& t) {
      if (out.proofs.size() >= cap ||
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() > time_limit_ms) {
        out.complete = false;
        return false;
      }
      out.proofs.push_back(t);
      return true;
    });
  }
  return out;
}

EvalReport evaluate_outputs(const std::vector<std::pair<TypeExpr, TokenSeq>>& cases, const EvalOptions& opts) {
  EvalReport rep;
  std::map<TypeExpr, std::vector<PostorderTree>> trees;
  std::map<TypeExpr, bool> complete;
  double sum = 0;
  for (const auto& [goal, tokens] : cases) {
    CaseReport c;
    ++rep.n_total;
    c.parsable = try_parse_term(tokens).has_value();
    auto fixed = nearest_term(tokens);
    c.repaired = fixed.distance > 0;
    c.repair_distance = fixed.distance;
    Term n = canonical_names(fixed.term);
    c.term_tokens = term_text(n);
    c.size = size(n);
    c.typable = check_partial(n, goal);
    rep.n_parsable += c.parsable;
    rep.n_typable += c.typable;

    auto it = trees.find(goal);
    if (it == trees.end()) {
      ProofSet ps = enumerate_proofs(goal, opts.max_proof_size, opts.proof_cap, opts.time_limit_ms);
      std::vector<PostorderTree> ts;
      ts.reserve(ps.proofs.size());
      for (const auto& p : ps.proofs) ts.emplace_back(to_tree(p));
      complete[goal] = ps.complete;
      it = trees.emplace(goal, std::move(ts)).first;
    }
    c.approximate = !complete[goal];
    if (!it->second.empty()) {
      PostorderTree nt(to_tree(n));
      std::size_t best = SIZE_MAX;
      for (const auto& m : it->second) {
        best = std::min(best, tree_edit_distance(nt, m));
        if (best == 0) break;
      }
      c.distance = best;
      sum += static_cast<double>(best) / static_cast<double>(c.size);
      ++rep.n_scored;
    }
    rep.cases.push_back(std::move(c));
  }
  rep.closeness = rep.n_scored ? sum / static_cast<double>(rep.n_scored) : 0.0;
  return rep;
}

}  // namespace proofsynth
