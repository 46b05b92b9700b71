#include "proofsynth/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "proofsynth/bench.hpp"
#include "proofsynth/datagen.hpp"
#include "proofsynth/guide_client.hpp"
#include "proofsynth/repair.hpp"
#include "proofsynth/tokens.hpp"
#include "proofsynth/typecheck.hpp"

namespace proofsynth {

using nlohmann::json;

GuideSpec parse_guide_spec(std::string_view s) {
  auto after = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (s.substr(0, prefix.size()) == prefix) return s.substr(prefix.size());
    return std::nullopt;
  };
  if (s == "null") return GuideSpec::null();
  if (auto rest = after("fixed:")) return GuideSpec::fixed_term(parse_term_text(*rest));
  if (auto rest = after("corrupt:")) {
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(rest->data(), rest->data() + rest->size(), k);
    if (ec != std::errc() || p != rest->data() + rest->size() || rest->empty())
      throw std::invalid_argument("corrupt:<k> needs a natural number");
    return GuideSpec::corrupted(k);
  }
  if (auto rest = after("exec:")) {
    if (rest->empty()) throw std::invalid_argument("exec:<command> needs a command");
    return GuideSpec::external(std::string(*rest));
  }
  throw std::invalid_argument("unknown guide '" + std::string(s) + "'");
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("PROOFSYNTH_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("PROOFSYNTH_SEED is not a number: ") + env);
  }
}

CostKind cost_kind(const std::string& s) {
  auto k = parse_cost_kind(s);
  if (!k) throw UsageError("unknown cost '" + s + "' (expected bf, ed or im)");
  return *k;
}

std::vector<DatasetEntry> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_dataset(in);
}

// Writes to `path`, or to `out` for "-".
template <class F>
void with_output(const std::string& path, std::ostream& out, F&& f) {
  if (path == "-") {
    f(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  f(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed: " + path);
}

json result_json(const SynthesisResult& r) {
  json j = {{"outcome", to_string(r.outcome)},
            {"pops", r.pops},
            {"pushes", r.pushes},
            {"wall_ms", r.wall_ms},
            {"guide", term_text(r.guide)},
            {"frontier_exhausted", r.frontier_exhausted}};
  j["proof"] = r.proof ? json(term_text(*r.proof)) : json(nullptr);
  j["guide_distance"] = r.guide_distance ? json(*r.guide_distance) : json(nullptr);
  return j;
}

json record_json(const BenchRecord& r) {
  json j = {{"case", r.case_index},
            {"goal", r.goal_tokens},
            {"procedure", to_string(r.procedure)},
            {"pops", r.pops},
            {"pushes", r.pushes},
            {"wall_ms", r.wall_ms},
            {"outcome", to_string(r.outcome)}};
  j["guide_distance"] = r.guide_distance ? json(*r.guide_distance) : json(nullptr);
  auto b = ed_bucket(r);
  j["ed_bucket"] = b ? json(*b) : json(nullptr);
  j["proof"] = r.proof_tokens.empty() ? json(nullptr) : json(r.proof_tokens);
  return j;
}

json summary_json(const BenchSummary& s) {
  json rows = json::array();
  for (const auto& row : s.rows) {
    json means = json::array();
    for (const auto& m : row.bucket_mean_ms) means.push_back(m ? json(*m) : json("N/A"));
    rows.push_back({{"procedure", to_string(row.procedure)},
                    {"runs", row.runs},
                    {"proved", row.proved},
                    {"ed_mean_ms", means},
                    {"ed_runs", row.bucket_runs},
                    {"beyond_runs", row.beyond_runs},
                    {"sum_ms", row.sum_ms},
                    {"median_pops", row.median_pops}});
  }
  return {{"buckets", s.buckets}, {"rows", rows}};
}

// ----------------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  bool normal_only = false;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string exclude;
  std::size_t min_size = 2, max_size = 9, max_atoms = 3;
};

int cmd_gen_dataset(const GenArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("-n must be at least 1");
  DatasetOptions opts;
  opts.normal_only = a.normal_only;
  opts.min_size = a.min_size;
  opts.max_size = a.max_size;
  opts.max_atoms = a.max_atoms;
  std::vector<DatasetEntry> entries;
  if (a.exclude.empty()) {
    entries = training_dataset(a.n, a.seed, opts);
  } else {
    std::vector<TypeExpr> ex;
    for (const auto& e : load_dataset(a.exclude)) ex.push_back(e.goal_type);
    entries = test_dataset(a.n, ex, a.seed, opts);
  }
  DatasetHeader h;
  h.seed = a.seed;
  h.n = a.n;
  h.normal_only = a.normal_only;
  with_output(a.out, out, [&](std::ostream& o) { write_dataset(o, h, entries); });
  return 0;
}

struct SynthArgs {
  std::string type;
  std::string cost = "bf";
  std::string guide = "null";
  std::string reference;
  std::size_t max_pops = 100'000;
  std::size_t max_size = 12;
  std::uint64_t seed = 0;
  bool json_out = false;
};

int cmd_synthesize(const SynthArgs& a, std::ostream& out) {
  TypeExpr goal = parse_type_text(a.type);
  SynthesisConfig cfg;
  cfg.cost_kind = cost_kind(a.cost);
  cfg.guide = parse_guide_spec(a.guide);
  cfg.max_pops = a.max_pops;
  cfg.max_candidate_size = a.max_size;
  cfg.seed = a.seed;
  if (!a.reference.empty()) {
    Term ref = parse_term_text(a.reference);
    if (!check_partial(ref, goal) || has_hole(ref)) throw UsageError("--reference is not a proof of the goal");
    cfg.reference = ref;
  } else if (cfg.guide.kind == GuideSpec::Kind::CorruptedOracle) {
    // No reference given: corrupt the breadth-first proof.
    SynthesisConfig bf = cfg;
    bf.cost_kind = CostKind::BF;
    bf.guide = GuideSpec::null();
    auto r = synthesize(goal, bf);
    if (!r.proof) throw std::runtime_error("no reference proof found for the corrupted guide within the budget");
    cfg.reference = r.proof;
  }
  auto r = synthesize(goal, cfg);
  if (a.json_out) {
    json j = result_json(r);
    j["goal"] = type_text(goal);
    j["cost"] = to_string(cfg.cost_kind);
    out << j.dump() << '\n';
  } else {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << "outcome: " << to_string(r.outcome) << '\n';
    if (r.proof) out << "proof: " << term_text(*r.proof) << '\n';
    out << "guide: " << term_text(r.guide) << '\n';
    if (r.guide_distance) out << "guide distance: " << *r.guide_distance << '\n';
    out << "pops: " << r.pops << '\n' << "pushes: " << r.pushes << '\n' << "time ms: " << ms << '\n';
  }
  return r.outcome == Outcome::Proved ? 0 : 2;
}

int cmd_check(const std::string& term, const std::string& type, std::ostream& out) {
  Term t = parse_term_text(term);
  if (type.empty()) {
    auto inferred = infer_type(t);
    if (!inferred) {
      out << "untypable\n";
      return 1;
    }
    out << type_text(*inferred) << '\n';
    return 0;
  }
  TypeExpr goal = parse_type_text(type);
  bool ok = check_partial(t, goal);
  // with holes, "ok" only says they can still be filled consistently
  out << (ok ? (has_hole(t) ? "ok (partial)\n" : "ok\n") : "rejected\n");
  return ok ? 0 : 1;
}

int cmd_repair(const std::string& text, bool json_out, std::ostream& out) {
  TokenSeq s = lex_term(text);
  auto r = nearest_term(s);
  if (json_out) {
    out << json{{"input", to_text(s)},
                {"term", term_text(r.term)},
                {"distance", r.distance},
                {"budget_exceeded", r.budget_exceeded}}
               .dump()
        << '\n';
  } else {
    out << term_text(r.term) << '\n' << "distance: " << r.distance << '\n';
    if (r.budget_exceeded) out << "note: state budget exhausted, repair may not be minimal\n";
  }
  return 0;
}

// One output per line: canonical tokens, or a raw guide reply ("TERM ...",
// "NONE"). Blank lines and NONE stand for an empty output.
std::vector<TokenSeq> load_outputs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<TokenSeq> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("TERM ", 0) == 0 || line == "NONE") {
      auto reply = parse_guide_reply(line);
      out.push_back(reply.kind == GuideReply::Kind::Term ? reply.tokens : TokenSeq{});
    } else {
      out.push_back(lex_term(line));
    }
  }
  return out;
}

struct EvalArgs {
  std::string outputs, testset;
  std::size_t max_proof_size = 9;
  bool json_out = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  auto outputs = load_outputs(a.outputs);
  auto tests = load_dataset(a.testset);
  if (outputs.size() != tests.size())
    throw std::runtime_error("outputs has " + std::to_string(outputs.size()) + " lines but the test set has " +
                             std::to_string(tests.size()) + " entries");
  std::vector<std::pair<TypeExpr, TokenSeq>> cases;
  for (std::size_t i = 0; i < tests.size(); ++i) cases.emplace_back(tests[i].goal_type, outputs[i]);
  EvalOptions opts;
  opts.max_proof_size = a.max_proof_size;
  auto rep = evaluate_outputs(cases, opts);
  if (a.json_out) {
    json per = json::array();
    for (const auto& c : rep.cases) {
      json j = {{"parsable", c.parsable},         {"repaired", c.repaired}, {"typable", c.typable},
                {"repair_distance", c.repair_distance}, {"size", c.size},         {"approximate", c.approximate},
                {"term", c.term_tokens}};
      j["distance"] = c.distance ? json(*c.distance) : json(nullptr);
      per.push_back(j);
    }
    out << json{{"n_total", rep.n_total},     {"n_parsable", rep.n_parsable}, {"n_typable", rep.n_typable},
                {"n_scored", rep.n_scored},   {"closeness", rep.closeness},   {"cases", per}}
               .dump()
        << '\n';
    return 0;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", rep.closeness);
  auto row = [&](const std::string& k, const std::string& v) {
    out << k << std::string(26 - k.size(), ' ') << v << '\n';
  };
  row("cases", std::to_string(rep.n_total));
  row("# of parsable", std::to_string(rep.n_parsable));
  row("# of typable", std::to_string(rep.n_typable));
  row("scored for closeness", std::to_string(rep.n_scored));
  row("closeness per AST node", buf);
  std::size_t unscored = rep.n_total - rep.n_scored, approx = 0;
  for (const auto& c : rep.cases) approx += c.approximate;
  if (unscored) out << "note: " << unscored << " case(s) have no proof of size <= " << a.max_proof_size << '\n';
  if (approx) out << "note: " << approx << " case(s) scored against a truncated proof set\n";
  return 0;
}

struct BenchArgs {
  std::string testset;
  std::string procedures = "bf,ed,im";
  std::string guide = "corrupt:0";
  std::size_t max_pops = 100'000;
  std::size_t max_size = 12;
  std::size_t buckets = 5;
  std::size_t limit = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool json_out = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<CostKind> procs;
  {
    std::stringstream ss(a.procedures);
    for (std::string p; std::getline(ss, p, ',');) procs.push_back(cost_kind(p));
    if (procs.empty()) throw UsageError("no procedures given");
  }
  GuideSpec spec = parse_guide_spec(a.guide);
  auto tests = load_dataset(a.testset);
  if (a.limit && tests.size() > a.limit) tests.erase(tests.begin() + static_cast<std::ptrdiff_t>(a.limit), tests.end());
  std::unique_ptr<GuideClient> client;
  if (spec.kind == GuideSpec::Kind::External) client = std::make_unique<GuideClient>(spec.command);

  std::vector<BenchRecord> records;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (CostKind k : procs) {
      SynthesisConfig cfg;
      cfg.cost_kind = k;
      cfg.guide = k == CostKind::BF ? GuideSpec::null() : spec;
      cfg.max_pops = a.max_pops;
      cfg.max_candidate_size = a.max_size;
      cfg.seed = a.seed + i;
      if (!has_hole(tests[i].proof)) cfg.reference = tests[i].proof;
      auto r = synthesize(tests[i].goal_type, cfg, client.get());
      BenchRecord rec;
      rec.case_index = i;
      rec.goal_tokens = tests[i].type_tokens;
      rec.procedure = k;
      rec.guide_distance = r.guide_distance;
      rec.pops = r.pops;
      rec.pushes = r.pushes;
      rec.wall_ms = r.wall_ms;
      rec.outcome = r.outcome;
      if (r.proof) rec.proof_tokens = term_text(*r.proof);
      records.push_back(std::move(rec));
    }
  }
  if (!a.out.empty())
    with_output(a.out, out, [&](std::ostream& o) {
      for (const auto& r : records) o << record_json(r).dump() << '\n';
    });
  auto summary = summarize(records, a.buckets);
  if (a.json_out)
    out << summary_json(summary).dump() << '\n';
  else
    out << format_summary(summary);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof synthesis for negation-free intuitionistic propositional logic"};
  app.name(args.empty() ? "proofsynth" : args.front());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::uint64_t seed = 0;
  std::string seed_error;
  try {
    seed = default_seed();
  } catch (const UsageError& e) {
    seed_error = e.what();
  }

  GenArgs gen;
  gen.seed = seed;
  auto* g = app.add_subcommand("gen-dataset", "Sample a training set, or a test set with --exclude");
  g->add_option("-n", gen.n, "Number of distinct types")->required();
  g->add_flag("--normal-only", gen.normal_only, "Only βη-normal proofs");
  g->add_option("--seed", gen.seed, "Random seed (default $PROOFSYNTH_SEED or 0)");
  g->add_option("-o,--out", gen.out, "Output file, - for standard output");
  g->add_option("--exclude", gen.exclude, "Dataset whose types the new set must avoid");
  g->add_option("--min-size", gen.min_size, "Smallest term size drawn")->check(CLI::PositiveNumber);
  g->add_option("--max-size", gen.max_size, "Largest term size drawn")->check(CLI::PositiveNumber);
  g->add_option("--max-atoms", gen.max_atoms, "Most distinct atoms per type");

  SynthArgs syn;
  syn.seed = seed;
  auto* s = app.add_subcommand("synthesize", "Search for a proof of a type");
  s->add_option("type", syn.type, "Goal type, e.g. \"a * b -> b * a\"")->required();
  s->add_option("--cost", syn.cost, "bf, ed or im");
  s->add_option("--guide", syn.guide, "null, fixed:<term>, corrupt:<k> or exec:<command>");
  s->add_option("--reference", syn.reference, "Proof that corrupt:<k> starts from");
  s->add_option("--max-pops", syn.max_pops, "Search budget in queue pops");
  s->add_option("--max-size", syn.max_size, "Largest candidate term size");
  s->add_option("--seed", syn.seed, "Random seed (default $PROOFSYNTH_SEED or 0)");
  s->add_flag("--json", syn.json_out, "Print one JSON object");

  std::string check_term, check_type;
  auto* c = app.add_subcommand("check", "Type-check a term, or infer its principal type");
  c->add_option("term", check_term, "Term")->required();
  c->add_option("type", check_type, "Goal type");

  std::string repair_text;
  bool repair_json = false;
  auto* r = app.add_subcommand("repair", "Repair a token sequence into the nearest term");
  r->add_option("tokens", repair_text, "Space-separated tokens")->required();
  r->add_flag("--json", repair_json, "Print one JSON object");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score guide outputs against a test set");
  e->add_option("--outputs", ev.outputs, "One output per line, aligned with the test set")->required();
  e->add_option("--testset", ev.testset, "Test set (JSON lines)")->required();
  e->add_option("--max-proof-size", ev.max_proof_size, "Largest proof compared against");
  e->add_flag("--json", ev.json_out, "Print JSON instead of a table");

  BenchArgs be;
  be.seed = seed;
  auto* b = app.add_subcommand("bench", "Compare bf, ed and im over a test set");
  b->add_option("--testset", be.testset, "Test set (JSON lines)")->required();
  b->add_option("--procedures", be.procedures, "Comma-separated subset of bf,ed,im");
  b->add_option("--guide", be.guide, "Guide for ed and im");
  b->add_option("--max-pops", be.max_pops, "Search budget in queue pops");
  b->add_option("--max-size", be.max_size, "Largest candidate term size");
  b->add_option("--buckets", be.buckets, "Number of ED-n columns");
  b->add_option("--limit", be.limit, "Use only the first N test cases");
  b->add_option("--seed", be.seed, "Random seed (default $PROOFSYNTH_SEED or 0)");
  b->add_option("-o,--out", be.out, "Write one JSON record per run here");
  b->add_flag("--json", be.json_out, "Print the summary as JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& ex) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }

  try {
    if (!seed_error.empty()) throw UsageError(seed_error);
    if (*g) return cmd_gen_dataset(gen, out);
    if (*s) return cmd_synthesize(syn, out);
    if (*c) return cmd_check(check_term, check_type, out);
    if (*r) return cmd_repair(repair_text, repair_json, out);
    if (*e) return cmd_eval(ev, out);
    if (*b) return cmd_bench(be, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace proofsynth
