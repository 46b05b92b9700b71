#pragma once

// Benchmark records for BF/ED/IM runs and their aggregation into a table
// of mean times per guide-distance bucket.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proofsynth/search.hpp"
#include "proofsynth/tree_edit.hpp"

namespace proofsynth {

struct BenchRecord {
  std::size_t case_index = 0;
  std::string goal_tokens;
  CostKind procedure = CostKind::BF;
  std::optional<std::size_t> guide_distance;  // EditDist(guide, proof) when proved
  std::size_t pops = 0;
  std::size_t pushes = 0;
  double wall_ms = 0;
  Outcome outcome = Outcome::BudgetExceeded;
  std::string proof_tokens;  // empty unless proved
};

// Guide-distance bucket of a record: none for BF (it has no guide) and for
// runs without a proof.
std::optional<std::size_t> ed_bucket(const BenchRecord& r);

struct BenchRow {
  CostKind procedure = CostKind::BF;
  std::size_t runs = 0;
  std::size_t proved = 0;
  std::vector<std::optional<double>> bucket_mean_ms;  // index = distance; none when empty
  std::vector<std::size_t> bucket_runs;
  std::size_t beyond_runs = 0;  // proved with distance past the last bucket
  double sum_ms = 0;            // over all runs of the procedure
  double median_pops = 0;
};

struct BenchSummary {
  std::size_t buckets = 0;
  std::vector<BenchRow> rows;  // in order of first appearance
};

BenchSummary summarize(const std::vector<BenchRecord>& records, std::size_t buckets = 5);

// Aligned text table; empty buckets and all BF buckets print "N/A".
std::string format_summary(const BenchSummary& s);

double median(std::vector<double> xs);

}  // namespace proofsynth
