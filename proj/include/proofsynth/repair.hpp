#pragma once

// Sequence edit distance (insert/delete only) and NearestTerm: repairing a
// possibly ill-formed token sequence into the closest parsable term.

#include <cstddef>
#include <vector>

#include "proofsynth/term.hpp"
#include "proofsynth/tokens.hpp"

namespace proofsynth {

struct EditOp {
  enum class Kind : std::uint8_t { Keep, Insert, Delete };
  Kind kind;
  Token token;           // Keep/Insert: the token; Delete: the removed token
  std::size_t position;  // Keep/Delete: index in the source; Insert: index in the target
};

using EditScript = std::vector<EditOp>;

struct SeqDiff {
  std::size_t distance;
  EditScript script;
};

// Myers' O((N+M)D) greedy algorithm. distance = #Insert + #Delete.
SeqDiff seq_edit_distance(const TokenSeq& a, const TokenSeq& b);

// Applies the script to `a`. Throws std::invalid_argument if the Keep/Delete
// operations do not walk `a` in order.
TokenSeq apply_script(const TokenSeq& a, const EditScript& script);

struct RepairOptions {
  std::size_t max_states = 1'000'000;
};

struct RepairResult {
  Term term;
  TokenSeq tokens;  // γ-form of the repaired sequence (as produced, before re-rendering)
  std::size_t distance = 0;
  bool budget_exceeded = false;
  std::size_t states_explored = 0;
};

// Closest sequence (insertions and deletions of tokens) in the hole-free term
// language. Among minimal repairs, prefers fewer tokens, then the
// lexicographically smallest token sequence (token_less). Inserted variables
// are named x0. Tokens outside the term grammar can only be deleted. If the
// state budget runs out, the best partial repair is completed and flagged.
RepairResult nearest_term(const TokenSeq& s, const RepairOptions& opts = {});

}  // namespace proofsynth
