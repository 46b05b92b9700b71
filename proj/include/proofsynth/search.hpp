#pragma once

// Candidate generation by shallow contexts and the guided best-first proof
// search.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "proofsynth/guide_client.hpp"
#include "proofsynth/repair.hpp"
#include "proofsynth/term.hpp"
#include "proofsynth/tree_edit.hpp"

namespace proofsynth {

// Depth-one templates used to fill a hole.
struct ShallowContext {
  enum class Kind : std::uint8_t { UseVar, Lam, App, Pair, CasePair, InjL, InjR, CaseSum };
  Kind kind;
  std::string x;  // UseVar: the variable; binders: the first binder
  std::string y;  // second binder of CasePair/CaseSum

  Term instantiate() const;
};

// Every context for a hole with `scope` in scope (outermost first; shadowed
// names appear once). New binders are x<next>, x<next+1>.
std::vector<ShallowContext> shallow_contexts(const std::vector<std::string>& scope, long next);

struct GenOptions {
  std::size_t max_candidate_size = 12;
};

// Fills the leftmost-outermost hole of n with every shallow context, drops
// βη-redexes, ill-typed terms and terms over the size bound, and removes
// α-duplicates. Order: variables in scope (outermost first), then λ, app,
// pair, pair case, Left, Right, sum case. Throws std::invalid_argument if n
// has no hole.
std::vector<Term> gen_candidates(const Term& n, const TypeExpr& goal, const GenOptions& opts = {});

// Min-heap on (cost, insertion order).
class CandidateQueue {
 public:
  void push(std::size_t cost, Term t);
  struct Item {
    std::size_t cost;
    std::uint64_t order;
    Term term;
  };
  Item pop();
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      return a.cost != b.cost ? a.cost > b.cost : a.order > b.order;
    }
  };
  std::priority_queue<Item, std::vector<Item>, Later> heap_;
  std::uint64_t next_ = 0;
};

enum class Outcome : std::uint8_t {
  Proved,
  BudgetExceeded,  // pop limit reached, or the size-bounded space ran out
};

const char* to_string(Outcome o);

struct SearchLimits {
  std::size_t max_pops = 100'000;
  std::size_t max_candidate_size = 12;
  bool record_trace = false;
};

struct TraceEntry {
  std::size_t cost;
  std::string key;  // canonical_key of the popped term
};

struct SearchResult {
  Outcome outcome = Outcome::BudgetExceeded;
  std::optional<Term> proof;
  std::size_t pops = 0;
  std::size_t pushes = 0;
  bool frontier_exhausted = false;
  std::vector<TraceEntry> trace;
};

using CostFn = std::function<std::size_t(const Term&)>;

// Best-first search from the hole, ordered by `cost`.
SearchResult best_first_search(const TypeExpr& goal, const CostFn& cost, const SearchLimits& limits);

struct GuideSpec {
  enum class Kind : std::uint8_t { Null, Fixed, CorruptedOracle, External };
  Kind kind = Kind::Null;
  Term fixed;             // Fixed
  std::size_t edits = 0;  // CorruptedOracle
  std::string command;    // External

  static GuideSpec null() { return {}; }
  static GuideSpec fixed_term(Term t) { return {Kind::Fixed, std::move(t), 0, {}}; }
  static GuideSpec corrupted(std::size_t k) { return {Kind::CorruptedOracle, {}, k, {}}; }
  static GuideSpec external(std::string cmd) { return {Kind::External, {}, 0, std::move(cmd)}; }
};

// Applies k random single edits to t, each at tree edit distance one from
// its input: rename a variable occurrence, swap Left and Right, wrap a
// subterm in Left or Right, or unwrap a Left/Right node.
Term corrupt(const Term& t, std::size_t k, std::uint64_t seed);

struct GuideOutcome {
  Term guide;
  std::size_t repair_distance = 0;  // tokens edited by NearestTerm (External)
  bool repaired = false;
};

// Null: hole. Fixed: the term. CorruptedOracle: corrupt(reference, k, seed).
// External: asks the guide (spawning one from spec.command unless `client`
// is given) and repairs the reply; NONE yields the hole. The result is
// renamed to canonical binder names. Throws std::invalid_argument when a
// corrupted oracle has no reference, GuideError when the guide fails.
GuideOutcome make_guide(const TypeExpr& goal, const GuideSpec& spec, const std::optional<Term>& reference,
                        std::uint64_t seed, GuideClient* client = nullptr);

struct SynthesisConfig {
  CostKind cost_kind = CostKind::BF;
  std::size_t max_pops = 100'000;
  std::size_t max_candidate_size = 12;
  std::uint64_t seed = 0;
  GuideSpec guide;
  std::optional<Term> reference;  // for CorruptedOracle
  bool ignore_names = false;
  bool record_trace = false;
};

struct SynthesisResult {
  Outcome outcome = Outcome::BudgetExceeded;
  std::optional<Term> proof;
  Term guide;
  std::size_t guide_repair_distance = 0;
  std::optional<std::size_t> guide_distance;  // EditDist(guide, proof)
  std::size_t pops = 0;
  std::size_t pushes = 0;
  bool frontier_exhausted = false;
  double wall_ms = 0;
  std::vector<TraceEntry> trace;
};

SynthesisResult synthesize(const TypeExpr& goal, const SynthesisConfig& config, GuideClient* client = nullptr);

}  // namespace proofsynth
