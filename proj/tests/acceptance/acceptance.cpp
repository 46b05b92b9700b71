// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Every workload is seeded so a rerun reproduces the same verdicts.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lcs_oracle.hpp"
#include "metrics_fixture.hpp"
#include "proofsynth/bench.hpp"
#include "proofsynth/datagen.hpp"
#include "proofsynth/repair.hpp"
#include "proofsynth/search.hpp"
#include "proofsynth/tokens.hpp"
#include "proofsynth/tree_edit.hpp"
#include "proofsynth/typecheck.hpp"
#include "repair_oracle.hpp"
#include "ted_oracle.hpp"
#include "term_gen.hpp"
#include "term_oracle.hpp"

using namespace proofsynth;
using namespace proofsynth::testing;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double median_of(std::vector<std::size_t> v) {
  std::vector<double> d(v.begin(), v.end());
  return proofsynth::median(d);
}

// Proofs from bf, ed and im on 100 seeded test types must check, be
// hole-free and βη-normal. Budget: 10 minutes.
Verdict soundness() {
  auto t0 = Clock::now();
  auto tests = test_dataset(100, {}, 2024);
  std::size_t proofs = 0, bad = 0, runs = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (CostKind k : {CostKind::BF, CostKind::ED, CostKind::IM}) {
      SynthesisConfig cfg;
      cfg.cost_kind = k;
      cfg.max_pops = 20000;
      cfg.seed = i;
      if (k != CostKind::BF) cfg.guide = GuideSpec::corrupted(1);
      cfg.reference = tests[i].proof;
      auto r = synthesize(tests[i].goal_type, cfg);
      ++runs;
      if (!r.proof) continue;
      ++proofs;
      const Term& p = *r.proof;
      if (!check_partial(p, tests[i].goal_type) || has_hole(p) || find_beta_eta_redex(p)) {
        ++bad;
        if (first_bad.empty()) first_bad = tests[i].type_tokens + " : " + term_text(p);
      }
    }
  }
  double s = seconds_since(t0);
  bool pass = bad == 0 && proofs > 0 && s <= 600;
  std::string d = std::to_string(proofs) + "/" + std::to_string(runs) + " runs proved, " + std::to_string(bad) +
                  " unsound, " + fmt("%.1fs", s) + " (limit 600s)";
  if (!first_bad.empty()) d += "; first: " + first_bad;
  return {pass, d};
}

// Zhang-Shasha against the exhaustive mapping oracle on every ordered tree
// pair with at most 5 nodes over labels {a, b}.
Verdict ted_oracle_equivalence() {
  std::vector<LabeledTree> trees;
  for (std::size_t n = 1; n <= 5; ++n) {
    auto t = all_trees(n, {"a", "b"});
    trees.insert(trees.end(), t.begin(), t.end());
  }
  std::vector<PostorderTree> prepared;
  std::vector<Flat> flat;
  for (const auto& t : trees) {
    prepared.emplace_back(t);
    flat.push_back(flatten(t));
  }
  std::size_t pairs = 0, mismatches = 0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = 0; j < trees.size(); ++j) {
      ++pairs;
      if (tree_edit_distance(prepared[i], prepared[j]) != MappingOracle(flat[i], flat[j]).distance()) ++mismatches;
    }
  return {mismatches == 0 && trees.size() == 550,
          std::to_string(trees.size()) + " trees, " + std::to_string(pairs) + " pairs, " +
              std::to_string(mismatches) + " mismatches"};
}

// Myers against the quadratic LCS table on 1000 random pairs.
Verdict sequence_distance() {
  std::mt19937_64 rng(31);
  const auto& alphabet = repair_alphabet();
  std::size_t mismatches = 0, bad_scripts = 0;
  for (int i = 0; i < 1000; ++i) {
    auto gen = [&] {
      TokenSeq s(std::uniform_int_distribution<std::size_t>(0, 40)(rng));
      // a narrow alphabet for half the pairs makes long common runs likely
      std::size_t width = i % 2 ? alphabet.size() : 3;
      for (auto& t : s) t = alphabet[std::uniform_int_distribution<std::size_t>(0, width - 1)(rng)];
      return s;
    };
    TokenSeq a = gen(), b = gen();
    auto d = seq_edit_distance(a, b);
    if (d.distance != dp_distance(a, b)) ++mismatches;
    if (apply_script(a, d.script) != b) ++bad_scripts;
  }
  return {mismatches == 0 && bad_scripts == 0,
          "1000 pairs, " + std::to_string(mismatches) + " distance mismatches, " + std::to_string(bad_scripts) +
              " bad scripts"};
}

// nearest_term against breadth-first search over edit scripts on 200
// sequences at most 2 token edits away from a term of size ≤ 7.
Verdict repair_minimality() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(57);
  std::size_t mismatches = 0, changed = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    Term m = random_term(rng, 1 + i % 7, {"x0", "x1", "x2"});
    TokenSeq s = corrupt_tokens(rng, tokenize_term(m), 1 + i % 2);
    auto r = nearest_term(s);
    auto o = oracle_repair(s, 2);
    changed += o.distance > 0;
    if (r.distance != o.distance || r.budget_exceeded) {
      ++mismatches;
      if (first.empty()) first = to_text(s);
    }
  }
  double secs = seconds_since(t0);
  std::string d = "200 cases (" + std::to_string(changed) + " needing repair), " + std::to_string(mismatches) +
                  " mismatches, " + fmt("%.1fs", secs) + " (limit 120s)";
  if (!first.empty()) d += "; first: " + first;
  return {mismatches == 0 && secs <= 120, d};
}

// 10,000 draws per size against the enumerated α-classes; each size must
// pass the chi-square test at 0.01.
Verdict sampler_uniformity() {
  bool pass = true;
  std::string d;
  for (std::size_t s : {3u, 4u, 5u}) {
    auto classes = oracle_terms(s, false);
    std::set<std::string> keys;
    for (const auto& t : classes) keys.insert(canonical_key(t));
    std::mt19937_64 rng(9000 + s);
    std::map<std::string, std::size_t> seen;
    std::size_t outside = 0;
    const std::size_t draws = 10000;
    for (std::size_t i = 0; i < draws; ++i) {
      auto k = canonical_key(sample_term(s, false, rng));
      if (!keys.count(k)) ++outside;
      ++seen[k];
    }
    double stat = chi_square_uniform(seen, keys.size(), draws);
    double p = chi_square_p(stat, static_cast<double>(keys.size() - 1));
    pass = pass && outside == 0 && p > 0.01 && count_terms(s, false) == keys.size();
    if (!d.empty()) d += "; ";
    d += "s=" + std::to_string(s) + ": " + std::to_string(keys.size()) + " classes, chi2=" + fmt("%.1f", stat) +
         " p=" + fmt("%.3f", p);
    if (outside) d += " (" + std::to_string(outside) + " draws outside)";
  }
  return {pass, d};
}

// Corrupted-oracle guides on provable goals: ED with an exact guide must
// need at most a fifth of BF's median pops, and more corruption must not
// lower the median. The oracle is the proof BF finds (βη-normal, so
// reachable by the search); the sampled witness may not be.
Verdict guide_effectiveness() {
  auto tests = test_dataset(80, {}, 77);
  std::vector<std::size_t> bf;
  std::vector<std::vector<std::size_t>> ed(4);
  std::map<std::size_t, std::vector<double>> ratio_by_size;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    SynthesisConfig base;
    base.max_pops = 100000;
    base.seed = 100 + i;
    auto b = synthesize(tests[i].goal_type, base);
    if (!b.proof) continue;
    base.reference = b.proof;
    std::vector<std::size_t> row;
    bool all = true;
    for (std::size_t k = 0; k < 4 && all; ++k) {
      SynthesisConfig c = base;
      c.cost_kind = CostKind::ED;
      c.guide = GuideSpec::corrupted(k);
      auto r = synthesize(tests[i].goal_type, c);
      all = r.proof.has_value();
      row.push_back(r.pops);
    }
    if (!all) continue;
    bf.push_back(b.pops);
    for (std::size_t k = 0; k < 4; ++k) ed[k].push_back(row[k]);
    ratio_by_size[size(*b.proof)].push_back(static_cast<double>(row[0]) / static_cast<double>(b.pops));
  }
  double mb = median_of(bf);
  std::vector<double> m;
  for (const auto& v : ed) m.push_back(median_of(v));
  bool monotone = std::is_sorted(m.begin(), m.end());
  bool fast = m[0] <= 0.2 * mb;
  std::string d = std::to_string(bf.size()) + " goals; median pops bf=" + fmt("%.1f", mb);
  for (std::size_t k = 0; k < 4; ++k) d += " ed" + std::to_string(k) + "=" + fmt("%.1f", m[k]);
  d += "; ed0/bf=" + fmt("%.3f", mb > 0 ? m[0] / mb : 0) + " (limit 0.2); nondecreasing=" + (monotone ? "yes" : "no");
  d += "; median ed0/bf by proof size:";
  for (const auto& [sz, v] : ratio_by_size)
    d += " " + std::to_string(sz) + "->" + fmt("%.2f", median(v)) + "(n=" + std::to_string(v.size()) + ")";
  return {bf.size() >= 50 && fast && monotone, d};
}

Verdict metrics_fixture_check() {
  std::vector<std::pair<TypeExpr, TokenSeq>> cases;
  for (const auto& c : metrics_fixture()) cases.emplace_back(parse_type_text(c.type), lex_term(c.output));
  auto rep = evaluate_outputs(cases);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    const auto& w = metrics_fixture()[i];
    const auto& g = rep.cases[i];
    wrong += g.parsable != w.parsable || g.typable != w.typable || g.distance != w.distance || g.size != w.size;
  }
  // the swap guide: parsable, not typable, at least one edit from a proof
  const auto& swap = rep.cases[1];
  bool swap_ok = swap.parsable && !swap.typable && swap.distance && *swap.distance >= 1;
  bool pass = wrong == 0 && swap_ok && rep.n_total == 10 && rep.n_parsable == kFixtureParsable &&
              rep.n_typable == kFixtureTypable && rep.n_scored == kFixtureScored &&
              rep.closeness == kFixtureCloseness;
  return {pass, "parsable " + std::to_string(rep.n_parsable) + "/10, typable " + std::to_string(rep.n_typable) +
                    "/10, closeness " + fmt("%.6f", rep.closeness) + " (expected " + fmt("%.6f", kFixtureCloseness) +
                    "), " + std::to_string(wrong) + " case mismatches"};
}

Verdict swap_end_to_end() {
  SynthesisConfig c;
  c.cost_kind = CostKind::ED;
  c.guide = GuideSpec::fixed_term(parse_term_text("( λ x0 . ( case x0 of ( x1 , x2 ) -> ( x1 , x1 ) ) )"));
  auto r = synthesize(parse_type_text("a1 * a2 -> a2 * a1"), c);
  Term want = parse_term_text("λx0. case x0 of (x1, x2) -> (x2, x1)");
  bool pass = r.proof && alpha_eq(*r.proof, want);
  return {pass, (r.proof ? term_text(*r.proof) : std::string("no proof")) + " after " + std::to_string(r.pops) + " pops"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"soundness", soundness},
      {"tree-edit-oracle", ted_oracle_equivalence},
      {"sequence-distance-oracle", sequence_distance},
      {"repair-minimality", repair_minimality},
      {"sampler-uniformity", sampler_uniformity},
      {"guide-effectiveness", guide_effectiveness},
      {"metrics-fixture", metrics_fixture_check},
      {"swap-end-to-end", swap_end_to_end},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed ? 1 : 0;
}
