#include "maf/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "maf/oracle.hpp"

namespace maf {

std::vector<CorpusItem> corpus_items(const CorpusSpec& spec) {
  if (spec.n_min > spec.n_max || spec.moves_min > spec.moves_max || spec.moves_min < 0)
    throw std::invalid_argument("empty size or move range");
  std::vector<CorpusItem> out;
  for (std::size_t i = 0; i < spec.count; ++i) {
    CorpusItem item{i, spec.seed + i, 0, 0};
    Rng rng(item.seed);
    item.n = spec.n_min + rng.below(spec.n_max - spec.n_min + 1);
    item.moves = spec.moves_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.moves_max - spec.moves_min + 1)));
    out.push_back(item);
  }
  return out;
}

GeneratedPair corpus_pair(const CorpusItem& item, TreeKind kind) {
  return generate_pair(item.n, item.moves, item.seed, kind);
}

unsigned thread_count() {
  if (const char* env = std::getenv("MAF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

AlgoRun run_algo(const PhyloTree& t1, const PhyloTree& t2, Algo algo, int max_k) {
  AlgoRun run;
  const auto r = Solver(t1.kind(), algo, run.stats).solve_min(t1, t2, max_k);
  run.cuts = r.cuts;
  run.forest = r.forest;
  run.witness_valid = r.feasible() && static_cast<int>(r.forest.size()) == *r.cuts + 1 &&
                      is_agreement_forest(t1, t2, r.forest);
  return run;
}

bool VerifyRow::mismatch() const {
  if (!error.empty() || !witnesses_valid || improved != baseline) return true;
  return oracle && oracle != improved;
}

std::vector<VerifyRow> run_verify(const CorpusSpec& spec, std::size_t oracle_max_n, unsigned threads) {
  const auto items = corpus_items(spec);
  std::vector<VerifyRow> rows(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    auto& row = rows[i];
    row.item = items[i];
    try {
      const auto g = corpus_pair(items[i], spec.kind);
      const int max_k = static_cast<int>(items[i].n);
      const auto imp = run_algo(g.first, g.second, Algo::improved, max_k);
      const auto base = run_algo(g.first, g.second, Algo::baseline, max_k);
      row.improved = imp.cuts;
      row.baseline = base.cuts;
      row.witnesses_valid = imp.witness_valid && base.witness_valid;
      row.stats = imp.stats;
      row.stats.merge(base.stats);
      if (items[i].n <= oracle_max_n) row.oracle = brute_maf(g.first, g.second, max_k).cuts;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

std::vector<BenchRow> run_bench(const CorpusSpec& spec, const std::vector<Algo>& algos, unsigned threads) {
  const auto items = corpus_items(spec);
  std::vector<BenchRow> rows(items.size() * algos.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const auto& item = items[i / algos.size()];
    const auto g = corpus_pair(item, spec.kind);
    const auto run = run_algo(g.first, g.second, algos[i % algos.size()], static_cast<int>(item.n));
    if (!run.witness_valid) throw std::logic_error("bench: invalid witness for seed " + std::to_string(item.seed));
    rows[i] = BenchRow{item, algos[i % algos.size()], *run.cuts, run.stats.nodes, run.stats.fired, run.stats.violations};
  });
  return rows;
}

namespace {

double median(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? static_cast<double>(v[m]) : (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2;
}

}  // namespace

std::vector<MedianRow> bench_medians(const std::vector<BenchRow>& rows) {
  std::map<std::pair<Algo, int>, std::vector<std::uint64_t>> by_k;
  std::map<Algo, std::vector<std::uint64_t>> overall;
  for (const auto& r : rows) {
    by_k[{r.algo, r.cuts}].push_back(r.nodes);
    overall[r.algo].push_back(r.nodes);
  }
  std::vector<MedianRow> out;
  for (const auto& [key, nodes] : by_k) out.push_back({key.first, key.second, nodes.size(), median(nodes)});
  for (const auto& [algo, nodes] : overall) out.push_back({algo, std::nullopt, nodes.size(), median(nodes)});
  return out;
}

}  // namespace maf
