#include "proofsynth/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace proofsynth {

std::optional<std::size_t> ed_bucket(const BenchRecord& r) {
  if (r.procedure == CostKind::BF || r.outcome != Outcome::Proved) return std::nullopt;
  return r.guide_distance;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2;
}

BenchSummary summarize(const std::vector<BenchRecord>& records, std::size_t buckets) {
  BenchSummary out;
  out.buckets = buckets;
  std::vector<std::vector<double>> pops;
  std::vector<std::vector<double>> sums;  // per row, per bucket
  for (const auto& r : records) {
    auto it = std::find_if(out.rows.begin(), out.rows.end(), [&](const BenchRow& row) { return row.procedure == r.procedure; });
    if (it == out.rows.end()) {
      BenchRow row;
      row.procedure = r.procedure;
      row.bucket_runs.assign(buckets, 0);
      out.rows.push_back(std::move(row));
      pops.emplace_back();
      sums.emplace_back(buckets, 0.0);
      it = out.rows.end() - 1;
    }
    std::size_t i = static_cast<std::size_t>(it - out.rows.begin());
    ++it->runs;
    it->proved += r.outcome == Outcome::Proved;
    it->sum_ms += r.wall_ms;
    pops[i].push_back(static_cast<double>(r.pops));
    if (auto b = ed_bucket(r)) {
      if (*b < buckets) {
        ++it->bucket_runs[*b];
        sums[i][*b] += r.wall_ms;
      } else {
        ++it->beyond_runs;
      }
    }
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    auto& row = out.rows[i];
    row.median_pops = median(pops[i]);
    for (std::size_t b = 0; b < buckets; ++b)
      row.bucket_mean_ms.push_back(row.bucket_runs[b] ? std::optional(sums[i][b] / static_cast<double>(row.bucket_runs[b]))
                                                      : std::nullopt);
  }
  return out;
}

std::string format_summary(const BenchSummary& s) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"procedure"};
  for (std::size_t b = 0; b < s.buckets; ++b) head.push_back("ED-" + std::to_string(b));
  for (const char* h : {"sum ms", "proved", "median pops"}) head.emplace_back(h);
  cells.push_back(head);
  char buf[64];
  for (const auto& row : s.rows) {
    std::vector<std::string> line = {std::string("synthesis-") + to_string(row.procedure)};
    for (const auto& m : row.bucket_mean_ms) {
      if (m) {
        std::snprintf(buf, sizeof buf, "%.2f", *m);
        line.emplace_back(buf);
      } else {
        line.emplace_back("N/A");
      }
    }
    std::snprintf(buf, sizeof buf, "%.2f", row.sum_ms);
    line.emplace_back(buf);
    line.push_back(std::to_string(row.proved) + "/" + std::to_string(row.runs));
    std::snprintf(buf, sizeof buf, "%.1f", row.median_pops);
    line.emplace_back(buf);
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      if (c == 0)
        out << line[c] << std::string(width[c] - line[c].size(), ' ');
      else
        out << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace proofsynth
