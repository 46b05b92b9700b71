#include "proofsynth/repair.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace proofsynth {

// ---------------------------------------------------------------------------
// Myers

SeqDiff seq_edit_distance(const TokenSeq& a, const TokenSeq& b) {
  const long n = static_cast<long>(a.size());
  const long m = static_cast<long>(b.size());
  const long max = n + m;
  const long off = max + 1;
  std::vector<long> v(static_cast<std::size_t>(2 * max + 3), 0);
  std::vector<std::vector<long>> trace;
  long found = -1;
  for (long d = 0; d <= max && found < 0; ++d) {
    trace.push_back(v);
    for (long k = -d; k <= d; k += 2) {
      long x;
      if (k == -d || (k != d && v[off + k - 1] < v[off + k + 1]))
        x = v[off + k + 1];
      else
        x = v[off + k - 1] + 1;
      long y = x - k;
      while (x < n && y < m && a[x] == b[y]) ++x, ++y;
      v[off + k] = x;
      if (x >= n && y >= m) {
        found = d;
        break;
      }
    }
  }

  EditScript rev;
  long x = n, y = m;
  for (long d = found; d > 0; --d) {
    const auto& vd = trace[static_cast<std::size_t>(d)];
    long k = x - y;
    long pk = (k == -d || (k != d && vd[off + k - 1] < vd[off + k + 1])) ? k + 1 : k - 1;
    long px = vd[off + pk];
    long py = px - pk;
    while (x > px && y > py) {
      --x, --y;
      rev.push_back({EditOp::Kind::Keep, a[x], static_cast<std::size_t>(x)});
    }
    if (x == px) {
      rev.push_back({EditOp::Kind::Insert, b[py], static_cast<std::size_t>(py)});
    } else {
      rev.push_back({EditOp::Kind::Delete, a[px], static_cast<std::size_t>(px)});
    }
    x = px, y = py;
  }
  while (x > 0 && y > 0) {
    --x, --y;
    rev.push_back({EditOp::Kind::Keep, a[x], static_cast<std::size_t>(x)});
  }
  std::reverse(rev.begin(), rev.end());
  return {static_cast<std::size_t>(found), std::move(rev)};
}

TokenSeq apply_script(const TokenSeq& a, const EditScript& script) {
  TokenSeq out;
  std::size_t i = 0;
  for (const auto& op : script) {
    switch (op.kind) {
      case EditOp::Kind::Keep:
        if (i >= a.size() || op.position != i || a[i] != op.token) throw std::invalid_argument("bad keep");
        out.push_back(a[i++]);
        break;
      case EditOp::Kind::Delete:
        if (i >= a.size() || op.position != i) throw std::invalid_argument("bad delete");
        ++i;
        break;
      case EditOp::Kind::Insert:
        if (op.position != out.size()) throw std::invalid_argument("bad insert");
        out.push_back(op.token);
        break;
    }
  }
  if (i != a.size()) throw std::invalid_argument("script does not consume the source");
  return out;
}

// ---------------------------------------------------------------------------
// NearestTerm
//
// Uniform-cost search over (predictive-parser stack, input position). Moves:
// expand the top nonterminal by any production (free), match the top
// terminal against the next input token (free), insert the top terminal
// (cost 1), delete the next input token (cost 1). States are ordered by
// (edits, emitted tokens, emitted prefix), so the first goal popped is the
// minimal repair under the documented tie-break.

namespace {

// Grammar symbols. Terminals are the TokenKind values; nonterminals follow.
using Sym = std::uint8_t;
constexpr Sym kTerminalCount = static_cast<Sym>(TokenKind::Unknown) + 1;
constexpr Sym kExpr = kTerminalCount;
constexpr Sym kAExpr = kTerminalCount + 1;
constexpr Sym kAppTail = kTerminalCount + 2;
constexpr Sym kParenRest = kTerminalCount + 3;
constexpr Sym kAlts = kTerminalCount + 4;

constexpr Sym T(TokenKind k) { return static_cast<Sym>(k); }
bool is_terminal(Sym s) { return s < kTerminalCount; }

using Production = std::vector<Sym>;

const std::vector<Production>& productions(Sym nt) {
  static const std::vector<Production> expr = {
      {T(TokenKind::Lambda), T(TokenKind::Var), T(TokenKind::Dot), kExpr},
      {T(TokenKind::Case), kExpr, T(TokenKind::Of), kAlts},
      {T(TokenKind::Left), kAExpr},
      {T(TokenKind::Right), kAExpr},
      {kAExpr, kAppTail},
  };
  static const std::vector<Production> aexpr = {
      {T(TokenKind::Var)},
      {T(TokenKind::LParen), kExpr, kParenRest},
  };
  static const std::vector<Production> app_tail = {
      {},
      {kAExpr, kAppTail},
  };
  static const std::vector<Production> paren_rest = {
      {T(TokenKind::RParen)},
      {T(TokenKind::Comma), kExpr, T(TokenKind::RParen)},
  };
  static const std::vector<Production> alts = {
      {T(TokenKind::LParen), T(TokenKind::Var), T(TokenKind::Comma), T(TokenKind::Var), T(TokenKind::RParen),
       T(TokenKind::Arrow), kExpr},
      {T(TokenKind::LBrace), T(TokenKind::Left), T(TokenKind::Var), T(TokenKind::Arrow), kExpr, T(TokenKind::Semi),
       T(TokenKind::Right), T(TokenKind::Var), T(TokenKind::Arrow), kExpr, T(TokenKind::RBrace)},
  };
  static const std::vector<Production> none;
  switch (nt) {
    case kExpr: return expr;
    case kAExpr: return aexpr;
    case kAppTail: return app_tail;
    case kParenRest: return paren_rest;
    case kAlts: return alts;
    default: return none;
  }
}

// Shortest terminal string derivable from a symbol.
void min_yield(Sym s, std::vector<Sym>& out) {
  if (is_terminal(s)) {
    out.push_back(s);
    return;
  }
  switch (s) {
    case kExpr:
    case kAExpr: out.push_back(T(TokenKind::Var)); return;
    case kAppTail: return;
    case kParenRest: out.push_back(T(TokenKind::RParen)); return;
    case kAlts:
      for (Sym t : productions(kAlts)[0]) min_yield(t, out);
      return;
    default: return;
  }
}

const std::string kInsertedVar = "x0";

// Emitted-prefix list node.
struct Prefix {
  int parent;      // -1 for the empty prefix
  std::int32_t token;  // >= 0: input index of a matched token; < 0: -(kind+1) of an inserted token
  std::uint32_t length;
};

struct Entry {
  std::uint32_t cost;
  std::uint32_t len;
  int prefix;
  std::uint32_t pos;
  std::vector<Sym> stack;  // top at back
  std::uint64_t seq;       // push order, for a stable heap
};

class RepairSearch {
 public:
  RepairSearch(const TokenSeq& input, const RepairOptions& opts) : in_(input), opts_(opts) {}

  RepairResult run() {
    push(0, 0, -1, 0, {kExpr});
    int best_partial = -1;  // index into popped_ for the fallback
    std::size_t popped = 0;
    while (!heap_.empty()) {
      std::size_t idx = heap_.top();
      heap_.pop();
      Entry e = std::move(entries_[idx]);
      std::string key = state_key(e);
      if (!visited_.insert(std::move(key)).second) continue;
      ++popped;
      if (e.stack.empty() && e.pos == in_.size()) return finish(e, popped, false);
      if (best_partial < 0 || better_partial(e, fallback_)) {
        fallback_ = e;
        best_partial = 0;
      }
      if (popped >= opts_.max_states) break;
      successors(e);
    }
    // Budget exhausted: complete the most advanced partial repair.
    Entry e = fallback_;
    e.cost += static_cast<std::uint32_t>(in_.size() - e.pos);
    e.pos = static_cast<std::uint32_t>(in_.size());
    std::vector<Sym> rest;
    for (std::size_t i = e.stack.size(); i-- > 0;) min_yield(e.stack[i], rest);
    for (Sym s : rest) {
      e.prefix = emit(e.prefix, -(static_cast<std::int32_t>(s) + 1));
      ++e.cost;
      ++e.len;
    }
    e.stack.clear();
    return finish(e, popped, true);
  }

 private:
  struct HeapCmp {
    RepairSearch* self;
    bool operator()(std::size_t a, std::size_t b) const { return self->less(b, a); }
  };

  bool less(std::size_t ia, std::size_t ib) const {
    const Entry& a = entries_[ia];
    const Entry& b = entries_[ib];
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.len != b.len) return a.len < b.len;
    int c = compare_prefix(a.prefix, b.prefix);
    if (c != 0) return c < 0;
    return a.seq < b.seq;
  }

  static bool better_partial(const Entry& a, const Entry& b) {
    if (a.pos != b.pos) return a.pos > b.pos;
    return a.cost < b.cost;
  }

  Token token_of(std::int32_t code) const {
    if (code >= 0) return in_[static_cast<std::size_t>(code)];
    auto kind = static_cast<TokenKind>(-code - 1);
    if (kind == TokenKind::Var) return Token::var(kInsertedVar);
    return Token::of(kind);
  }

  // Lexicographic comparison of two equal-length prefixes.
  int compare_prefix(int a, int b) const {
    int verdict = 0;
    while (a != b && a >= 0 && b >= 0) {
      const Prefix& pa = prefixes_[static_cast<std::size_t>(a)];
      const Prefix& pb = prefixes_[static_cast<std::size_t>(b)];
      Token ta = token_of(pa.token), tb = token_of(pb.token);
      if (ta != tb) verdict = token_less(ta, tb) ? -1 : 1;
      a = pa.parent;
      b = pb.parent;
    }
    return verdict;
  }

  int emit(int parent, std::int32_t token) {
    std::uint32_t len = parent < 0 ? 1 : prefixes_[static_cast<std::size_t>(parent)].length + 1;
    prefixes_.push_back({parent, token, len});
    return static_cast<int>(prefixes_.size()) - 1;
  }

  void push(std::uint32_t cost, std::uint32_t len, int prefix, std::uint32_t pos, std::vector<Sym> stack) {
    entries_.push_back({cost, len, prefix, pos, std::move(stack), seq_++});
    heap_.push(entries_.size() - 1);
  }

  std::string state_key(const Entry& e) const {
    std::string k(e.stack.begin(), e.stack.end());
    k += '|';
    k += std::to_string(e.pos);
    return k;
  }

  bool matches(Sym terminal, const Token& t) const { return static_cast<Sym>(t.kind) == terminal; }

  void successors(const Entry& e) {
    if (e.pos < in_.size()) push(e.cost + 1, e.len, e.prefix, e.pos + 1, e.stack);
    if (e.stack.empty()) return;
    Sym top = e.stack.back();
    if (is_terminal(top)) {
      std::vector<Sym> rest(e.stack.begin(), e.stack.end() - 1);
      if (e.pos < in_.size() && matches(top, in_[e.pos]))
        push(e.cost, e.len + 1, emit(e.prefix, static_cast<std::int32_t>(e.pos)), e.pos + 1, rest);
      push(e.cost + 1, e.len + 1, emit(e.prefix, -(static_cast<std::int32_t>(top) + 1)), e.pos, std::move(rest));
      return;
    }
    for (const auto& prod : productions(top)) {
      std::vector<Sym> next(e.stack.begin(), e.stack.end() - 1);
      for (std::size_t i = prod.size(); i-- > 0;) next.push_back(prod[i]);
      push(e.cost, e.len, e.prefix, e.pos, std::move(next));
    }
  }

  RepairResult finish(const Entry& e, std::size_t popped, bool budget) {
    TokenSeq out;
    for (int p = e.prefix; p >= 0; p = prefixes_[static_cast<std::size_t>(p)].parent)
      out.push_back(token_of(prefixes_[static_cast<std::size_t>(p)].token));
    std::reverse(out.begin(), out.end());
    RepairResult r;
    r.term = parse_term(out);
    r.tokens = std::move(out);
    r.distance = e.cost;
    r.budget_exceeded = budget;
    r.states_explored = popped;
    return r;
  }

  const TokenSeq& in_;
  RepairOptions opts_;
  std::vector<Entry> entries_;
  std::vector<Prefix> prefixes_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, HeapCmp> heap_{HeapCmp{this}};
  std::unordered_set<std::string> visited_;
  Entry fallback_{};
  std::uint64_t seq_ = 0;
};

}  // namespace

RepairResult nearest_term(const TokenSeq& s, const RepairOptions& opts) {
  RepairSearch search(s, opts);
  return search.run();
}

}  // namespace proofsynth
