#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maf/generate.hpp"
#include "maf/search.hpp"

namespace maf {

struct CorpusSpec {
  TreeKind kind = TreeKind::unrooted;
  std::size_t count = 0;
  std::size_t n_min = 4;
  std::size_t n_max = 9;
  int moves_min = 0;
  int moves_max = 4;
  std::uint64_t seed = 0;
};

struct CorpusItem {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // reproduces the pair via `gen`
  std::size_t n = 0;
  int moves = 0;
};

// Item i draws its size and move count from Rng(spec.seed + i) and uses
// spec.seed + i as its generation seed.
std::vector<CorpusItem> corpus_items(const CorpusSpec& spec);
GeneratedPair corpus_pair(const CorpusItem& item, TreeKind kind);

// MAF_THREADS if set and positive, otherwise the hardware concurrency.
unsigned thread_count();
// Runs f(0..count-1) on a pool; callers write results by index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f);

// Optimum by a given algorithm with iterative deepening, witness checked
// against the raw pair.
struct AlgoRun {
  std::optional<int> cuts;
  std::vector<TaxonSet> forest;
  SearchStats stats;
  bool witness_valid = false;
};
AlgoRun run_algo(const PhyloTree& t1, const PhyloTree& t2, Algo algo, int max_k);

struct VerifyRow {
  CorpusItem item;
  std::optional<int> improved;
  std::optional<int> baseline;
  std::optional<int> oracle;  // absent when n exceeds the oracle limit
  bool witnesses_valid = false;
  SearchStats stats;  // both algorithms merged
  std::string error;

  bool mismatch() const;
};

std::vector<VerifyRow> run_verify(const CorpusSpec& spec, std::size_t oracle_max_n, unsigned threads);

struct BenchRow {
  CorpusItem item;
  Algo algo = Algo::improved;
  int cuts = 0;
  std::uint64_t nodes = 0;
  std::map<std::string, std::uint64_t> fired;
  std::vector<std::string> violations;
};

std::vector<BenchRow> run_bench(const CorpusSpec& spec, const std::vector<Algo>& algos, unsigned threads);

struct MedianRow {
  Algo algo = Algo::improved;
  std::optional<int> k;  // absent for the whole-corpus row
  std::size_t count = 0;
  double median_nodes = 0;
};

// Per-algorithm medians for each optimum k, then one overall row per algorithm.
std::vector<MedianRow> bench_medians(const std::vector<BenchRow>& rows);

}  // namespace maf
