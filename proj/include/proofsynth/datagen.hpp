#pragma once

// Counting, enumeration and uniform sampling of closed well-typed terms by
// size; training and test dataset construction; evaluation of guide outputs.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "proofsynth/term.hpp"
#include "proofsynth/tokens.hpp"

namespace proofsynth {

using Count = std::uint64_t;

// The set of closed, hole-free terms (one per α-class, binders named x0, x1,
// ... in order of introduction) that are typable at some type, or at a
// fixed goal type whose atoms are rigid. Optionally restricted to
// βη-normal terms. Counts are memoized per instance; an instance is not
// safe to share between threads.
class TermSpace {
 public:
  explicit TermSpace(bool normal_only, std::optional<TypeExpr> goal = std::nullopt);
  ~TermSpace();
  TermSpace(TermSpace&&) noexcept;
  TermSpace& operator=(TermSpace&&) noexcept;

  // Number of terms with exactly s nodes. Throws std::overflow_error past
  // 2^64.
  Count count(std::size_t s);
  // The index-th term of size s in a fixed order; index < count(s).
  Term unrank(std::size_t s, Count index);
  // Uniform over the terms of size s. Throws std::invalid_argument if there
  // are none.
  Term sample(std::size_t s, std::mt19937_64& rng);
  // Visits the terms of size s in unrank order until `visit` returns false.
  // Returns false if stopped early.
  bool enumerate(std::size_t s, const std::function<bool(const Term&)>& visit);

  bool normal_only() const;
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Shared per-thread spaces over all types.
Count count_terms(std::size_t s, bool normal_only);
Term sample_term(std::size_t s, bool normal_only, std::mt19937_64& rng);
Term sample_term(std::size_t s, bool normal_only, std::uint64_t seed);

struct DatasetEntry {
  TypeExpr goal_type;
  Term proof;
  std::string type_tokens;
  std::string term_tokens;
};

DatasetEntry make_entry(const TypeExpr& type, const Term& proof);

struct DatasetOptions {
  bool normal_only = false;
  std::size_t min_size = 2;
  std::size_t max_size = 9;
  std::size_t max_atoms = 3;    // sampled principal types with more atoms are redrawn
  std::size_t max_draws = 0;    // 0: 2000 * n + 100000
};

struct SampleRecord {
  TypeExpr type;
  Term proof;
};

// Draws sizes uniformly from [min_size, max_size], samples a term, keys it
// by its principal type (atoms renamed a, b, ...) and keeps the smaller
// proof per type, until n distinct types are held. Entries come in order of
// first appearance of their type. `trace`, if given, receives every accepted
// draw. Throws std::runtime_error when max_draws is exceeded.
std::vector<DatasetEntry> training_dataset(std::size_t n, std::uint64_t seed, const DatasetOptions& opts = {},
                                           std::vector<SampleRecord>* trace = nullptr);

// n distinct types from the same sampler, none equal up to atom renaming to
// a type in `exclude`; each comes with the sampled proof as a witness.
std::vector<DatasetEntry> test_dataset(std::size_t n, const std::vector<TypeExpr>& exclude, std::uint64_t seed,
                                       const DatasetOptions& opts = {});

// JSON lines: a header {"generator", "seed", "n", "normal_only"} then one
// {"type_tokens", "term_tokens", "size", "normal_only"} object per entry.
struct DatasetHeader {
  std::string generator = "proofsynth-datagen/1";
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool normal_only = false;
};

void write_dataset(std::ostream& out, const DatasetHeader& header, const std::vector<DatasetEntry>& entries);
// Throws std::runtime_error with the line number on malformed input.
std::vector<DatasetEntry> read_dataset(std::istream& in, DatasetHeader* header = nullptr);

// Closed hole-free proofs of `goal` with at most max_size nodes, one per
// α-class, binders named canonically; at most `cap` of them.
struct ProofSet {
  std::vector<Term> proofs;
  bool complete = true;  // false when the cap or the time limit cut the enumeration short
};

ProofSet enumerate_proofs(const TypeExpr& goal, std::size_t max_size, std::size_t cap = 200'000,
                          double time_limit_ms = 20'000);

struct CaseReport {
  bool parsable = false;  // the raw output parses as a term
  bool repaired = false;  // NearestTerm changed it
  bool typable = false;   // the repaired term proves the goal
  std::size_t repair_distance = 0;
  std::size_t size = 0;                 // of the repaired term
  std::optional<std::size_t> distance;  // min tree edit distance to a proof; none if no proof known
  bool approximate = false;             // the proof set was truncated
  std::string term_tokens;              // repaired term
};

struct EvalReport {
  std::size_t n_total = 0;
  std::size_t n_parsable = 0;
  std::size_t n_typable = 0;
  std::size_t n_scored = 0;  // cases contributing to closeness
  double closeness = 0;      // mean of distance / size over scored cases
  std::vector<CaseReport> cases;
};

struct EvalOptions {
  std::size_t max_proof_size = 9;
  std::size_t proof_cap = 200'000;
  double time_limit_ms = 20'000;
};

EvalReport evaluate_outputs(const std::vector<std::pair<TypeExpr, TokenSeq>>& cases, const EvalOptions& opts = {});

}  // namespace proofsynth
