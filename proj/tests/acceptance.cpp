// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include "maf/corpus.hpp"
#include "maf/fitch.hpp"
#include "maf/oracle.hpp"
#include "maf/rmaf.hpp"
#include "maf/split_core.hpp"
#include "support.hpp"

using namespace maf;

namespace {

constexpr double kTimeLimitSeconds = 300.0;
constexpr std::size_t kEquivalencePairs = 300;
constexpr std::size_t kSampledCoreCases = 200;
constexpr int kLabelingsPerShape = 100;
constexpr std::size_t kTidyInstances = 200;
constexpr std::size_t kBenchPairsPerKind = 40;
constexpr std::size_t kBenchLeaves = 50;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Gate {
 public:
  template <class F>
  void run(int id, const std::string& name, F&& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed_ += o.pass ? 0 : 1;
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

// Shared across criteria: the audit and witness checks look at every search
// run by the other criteria.
struct Ledger {
  SearchStats stats;
  std::size_t witnesses = 0;
  std::size_t bad_witnesses = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Outcome equivalence(TreeKind kind, std::size_t n_min, std::uint64_t seed, Ledger& ledger) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_verify(CorpusSpec{kind, kEquivalencePairs, n_min, 9, 0, 4, seed}, 9, thread_count());
  const double secs = seconds_since(start);
  std::size_t mismatches = 0;
  std::string first;
  for (const auto& r : rows) {
    ledger.stats.merge(r.stats);
    ledger.witnesses += 2;
    if (!r.witnesses_valid) ++ledger.bad_witnesses;
    if (r.mismatch() || !r.oracle) {
      if (mismatches++ == 0) first = " first at seed " + std::to_string(r.item.seed) + (r.error.empty() ? "" : " (" + r.error + ")");
    }
  }
  std::ostringstream out;
  out << rows.size() << " pairs, " << mismatches << " mismatches" << first << ", " << secs << " s of "
      << kTimeLimitSeconds << " allowed";
  return {rows.size() == kEquivalencePairs && mismatches == 0 && secs < kTimeLimitSeconds, out.str()};
}

struct CoreTally {
  std::size_t cases = 0;
  std::size_t heavy = 0;
  std::size_t uncovered = 0;
};

void check_core(const PhyloTree& t, const TaxonSet& y, const TaxonSet& z, CoreTally& tally) {
  ++tally.cases;
  const auto core = build_core(t, y, z);
  if (!core.weight_within_half()) ++tally.heavy;
  for (const auto& cut : enumerate_splitting_cuts(t, y, z, 4)) {
    bool covered = false;
    for (const auto& k : core.cuts) covered = covered || refines(t, cut, k);
    if (!covered) ++tally.uncovered;
  }
}

Outcome splitting_core() {
  CoreTally tally;
  for (int n = 2; n <= 6; ++n) {
    const auto shapes = n < 3 ? std::vector<std::string>{"(x0,x1);"} : test::unrooted_shapes(n);
    for (const auto& shape : shapes) {
      TaxonTable table;
      const auto t = parse_newick(shape, TreeKind::unrooted, table);
      for (const auto& [y, z] : test::bipartitions(t)) check_core(t, y, z, tally);
    }
  }
  const std::size_t exhaustive = tally.cases;
  for (std::uint64_t s = 0; s < kSampledCoreCases; ++s) {
    Rng rng(70000 + s);
    const auto g = generate_pair(7 + rng.below(2), 0, 70000 + s, TreeKind::unrooted);
    const auto parts = test::bipartitions(g.first);
    const auto& [y, z] = parts[rng.below(parts.size())];
    check_core(g.first, y, z, tally);
  }
  std::ostringstream out;
  out << exhaustive << " exhaustive + " << tally.cases - exhaustive << " sampled cases, " << tally.heavy
      << " cores above 1/2, " << tally.uncovered << " uncovered cuts of size <= 4";
  return {tally.heavy == 0 && tally.uncovered == 0, out.str()};
}

Outcome fitch() {
  std::size_t cases = 0, wrong = 0;
  std::vector<std::pair<std::string, TreeKind>> shapes;
  for (int n = 2; n <= 8; ++n) {
    for (const auto& s : test::rooted_shapes(n)) shapes.push_back({s, TreeKind::rooted});
    if (n >= 3)
      for (const auto& s : test::unrooted_shapes(n)) shapes.push_back({s, TreeKind::unrooted});
  }
  Rng rng(80000);
  for (const auto& [shape, kind] : shapes) {
    TaxonTable table;
    const auto t = parse_newick(shape, kind, table);
    for (int l = 0; l < kLabelingsPerShape; ++l) {
      const auto alphabet = 2 + rng.below(3);
      StateLabeling states;
      for (const auto& tx : t.taxon_list()) states[tx] = static_cast<int>(rng.below(alphabet));
      const auto r = fitch_min_cuts(t, states);
      bool ok = r.changes == test::min_monochrome_cut(t, states) && static_cast<int>(r.cut.size()) == r.changes;
      for (const auto& piece : split_by_edges(t, r.cut)) {
        std::set<int> seen;
        for (const auto& tx : t.taxon_list())
          if (tx.subset_of(piece)) seen.insert(states.at(tx));
        ok = ok && seen.size() == 1;
      }
      ++cases;
      wrong += ok ? 0 : 1;
    }
  }
  std::ostringstream out;
  out << shapes.size() << " shapes x " << kLabelingsPerShape << " labelings, " << wrong << " of " << cases
      << " differ from the exhaustive minimum";
  return {wrong == 0, out.str()};
}

Outcome tidy_invariance() {
  std::size_t changed = 0;
  for (std::uint64_t seed = 0; seed < kTidyInstances; ++seed) {
    const auto kind = seed % 2 ? TreeKind::rooted : TreeKind::unrooted;
    Rng rng(90000 + seed);
    const auto g = generate_pair(5 + rng.below(4), static_cast<int>(rng.below(4)), 90000 + seed, kind);
    auto inst = Instance::tree_pair(g.first, g.second, 8);
    for (int c = static_cast<int>(rng.below(3)); c > 0; --c) {
      auto& comps = inst.forest.components;
      const auto i = static_cast<std::size_t>(rng.below(comps.size()));
      if (comps[i].edge_count() == 0) continue;
      const int e = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(comps[i].edge_count())));
      inst = cut(inst, i, comps[i].edge_ref(e));
    }
    const int before = test::forest_optimum(inst);
    if (test::forest_optimum(tidied(inst)) != before) ++changed;
    if (inst.forest.components.size() == 1 && before != *brute_maf(g.first, g.second, 8).cuts) ++changed;
  }
  return {changed == 0, std::to_string(kTidyInstances) + " instances, " + std::to_string(changed) + " changed optimum"};
}

std::string show(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Outcome rule_shapes(Ledger& ledger) {
  struct Fixture {
    TreeKind kind;
    Algo algo;
    const char* rule;
    std::vector<int> expected;
    const char* a;
    const char* b;
  };
  const std::vector<Fixture> fixtures{
      {TreeKind::unrooted, Algo::improved, "chen_t3", {1, 1, 2, 2, 2}, "(t01,(t02,t05),(t03,t04));",
       "(t01,(t02,t03),(t04,t05));"},
      {TreeKind::rooted, Algo::baseline, "whidden", {1, 1, 2}, "((a,b),(c,d));", "((a,c),(b,d));"},
      {TreeKind::rooted, Algo::improved, "whidden_t2", {1, 1, 2}, "(((((t01,t04),(t02,t06)),t03),t05),t07);",
       "((((((t01,t04),t05),t06),t03),t02),t07);"},
      {TreeKind::rooted, Algo::improved, "twohomeoroot_case2", {2, 2, 2, 2, 2},
       "(((t01,(t02,((t05,t06),t07))),t03),t04);", "((((((t01,t04),t05),t03),t06),t02),t07);"},
  };
  std::vector<std::string> problems;
  for (const auto& f : fixtures) {
    const auto p = test::make_pair(f.a, f.b, f.kind);
    SearchStats stats;
    const auto r = Solver(f.kind, f.algo, stats).solve_min(p.first, p.second, 10);
    ledger.stats.merge(stats);
    ++ledger.witnesses;
    if (!is_agreement_forest(p.first, p.second, r.forest)) ++ledger.bad_witnesses;
    const auto it = stats.first_charges.find(f.rule);
    if (it == stats.first_charges.end()) problems.push_back(std::string(f.rule) + " did not fire");
    else if (it->second != f.expected)
      problems.push_back(std::string(f.rule) + " gave " + show(it->second) + ", expected " + show(f.expected));
  }
  std::ostringstream out;
  std::uint64_t firings = 0;
  for (const auto& [rule, n] : ledger.stats.fired) firings += n;
  out << firings << " rule firings over all corpora, " << ledger.stats.violations.size() << " profile violations";
  if (!ledger.stats.violations.empty()) out << " (first: " << ledger.stats.violations.front() << ")";
  out << "; fixtures:";
  for (const auto& f : fixtures) out << " " << f.rule << show(f.expected);
  for (const auto& p : problems) out << "; " << p;
  return {problems.empty() && ledger.stats.violations.empty(), out.str()};
}

std::string bench_digest(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) out << r.item.seed << ',' << to_string(r.algo) << ',' << r.cuts << ',' << r.nodes << '\n';
  for (const auto& m : bench_medians(rows)) out << to_string(m.algo) << ',' << (m.k ? *m.k : -1) << ',' << m.median_nodes << '\n';
  return out.str();
}

Outcome bench(Ledger& ledger) {
  const std::vector<Algo> algos{Algo::improved, Algo::baseline};
  bool pass = true;
  std::ostringstream out;
  for (const auto& [kind, seed] : {std::pair{TreeKind::unrooted, 3000ULL}, std::pair{TreeKind::rooted, 4000ULL}}) {
    const CorpusSpec spec{kind, kBenchPairsPerKind, kBenchLeaves, kBenchLeaves, 4, 10, seed};
    const auto rows = run_bench(spec, algos, thread_count());
    const auto again = run_bench(spec, algos, 1);
    const bool deterministic = bench_digest(rows) == bench_digest(again);
    double med[2] = {0, 0};
    for (const auto& m : bench_medians(rows))
      if (!m.k) med[m.algo == Algo::improved ? 0 : 1] = m.median_nodes;
    for (const auto& r : rows) {
      ++ledger.witnesses;  // run_bench throws on an invalid witness
      ledger.stats.nodes += r.nodes;
      for (const auto& [rule, n] : r.fired) ledger.stats.fired[rule] += n;
      ledger.stats.violations.insert(ledger.stats.violations.end(), r.violations.begin(), r.violations.end());
    }
    pass = pass && deterministic && med[0] <= med[1];
    out << to_string(kind) << ": median nodes improved " << med[0] << " vs baseline " << med[1]
        << (deterministic ? ", report reproducible" : ", report NOT reproducible") << "; ";
  }
  return {pass, out.str() + "n=" + std::to_string(kBenchLeaves) + ", moves 4..10, " +
                    std::to_string(kBenchPairsPerKind) + " pairs per kind"};
}

}  // namespace

int main() {
  Gate gate;
  Ledger ledger;
  std::printf("threads: %u\n", thread_count());
  gate.run(1, "unrooted oracle equivalence", [&] { return equivalence(TreeKind::unrooted, 4, 1000, ledger); });
  gate.run(2, "rooted oracle equivalence", [&] { return equivalence(TreeKind::rooted, 3, 2000, ledger); });
  gate.run(3, "splitting-core soundness", splitting_core);
  gate.run(4, "Fitch correctness", fitch);
  gate.run(5, "tidy-up invariance", tidy_invariance);
  // Bench runs before the audit so its firings are audited too.
  Outcome bench_outcome;
  gate.run(8, "bench: improved median <= baseline median", [&] { return bench_outcome = bench(ledger); });
  gate.run(6, "rule-shape audit", [&] { return rule_shapes(ledger); });
  gate.run(7, "witness validity", [&] {
    return Outcome{ledger.bad_witnesses == 0 && ledger.witnesses > 0,
                   std::to_string(ledger.witnesses - ledger.bad_witnesses) + " of " + std::to_string(ledger.witnesses) +
                       " witness forests are agreement forests of the raw inputs"};
  });
  std::printf("rule firings:");
  for (const auto& [rule, n] : ledger.stats.fired) std::printf(" %s=%llu", rule.c_str(), static_cast<unsigned long long>(n));
  std::printf("\n%s\n", gate.failed() ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return gate.failed() ? 1 : 0;
}
