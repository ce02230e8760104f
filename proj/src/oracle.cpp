#include "maf/oracle.hpp"

#include <cmath>

namespace maf {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

SolveResult brute_maf(const PhyloTree& t1, const PhyloTree& t2, OracleBudget budget) {
  if (t1.kind() != t2.kind()) throw ForestError("trees of different kinds");
  if (t1.taxa() != t2.taxa()) throw ForestError("trees on different taxon sets");
  if (budget.max_cuts < 0) return SolveResult::infeasible();
  if (t1.empty()) return SolveResult{0, {}};

  const auto edges = t2.edges();
  const int m = static_cast<int>(edges.size());
  std::uint64_t visited = 0;
  for (int k = 0; k <= std::min(budget.max_cuts, m); ++k) {
    visited += binomial(m, k);
    if (visited > budget.node_limit) throw OracleLimit("brute_maf: node limit exceeded");
    SolveResult found;
    for_each_subset(m, k, [&](const std::vector<int>& pick) {
      std::vector<int> cut;
      cut.reserve(pick.size());
      for (int i : pick) cut.push_back(edges[static_cast<std::size_t>(i)]);
      auto blocks = split_by_edges(t2, cut);
      if (static_cast<int>(blocks.size()) != k + 1) return true;  // a redundant cut; seen at smaller k
      if (!is_agreement_forest(t1, t2, blocks)) return true;
      found = SolveResult{k, std::move(blocks)};
      return false;
    });
    if (found.feasible()) return found;
  }
  return SolveResult::infeasible();
}

SolveResult depth_limited_solve(const PhyloTree& t1, const PhyloTree& t2, int depth) {
  if (depth == 0) {
    if (t1.taxa() != t2.taxa()) throw ForestError("trees on different taxon sets");
    if (same_topology(t1, t2)) return SolveResult{0, t1.empty() ? std::vector<TaxonSet>{} : std::vector<TaxonSet>{t1.taxa()}};
    return SolveResult::infeasible();
  }
  return brute_maf(t1, t2, depth);
}

bool splits(const PhyloTree& t, const std::vector<int>& cut, const TaxonSet& y, const TaxonSet& z) {
  for (const auto& piece : split_by_edges(t, cut))
    if (piece.intersects(y) && piece.intersects(z)) return false;
  return true;
}

std::vector<std::vector<int>> enumerate_splitting_cuts(const PhyloTree& t, const TaxonSet& y,
                                                       const TaxonSet& z, int max_size) {
  std::vector<std::vector<int>> out;
  const auto edges = t.edges();
  const int m = static_cast<int>(edges.size());
  for (int k = 1; k <= std::min(max_size, m); ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& pick) {
      std::vector<int> cut;
      for (int i : pick) cut.push_back(edges[static_cast<std::size_t>(i)]);
      if (splits(t, cut, y, z)) out.push_back(std::move(cut));
      return true;
    });
  }
  return out;
}

bool refines(const PhyloTree& t, const std::vector<int>& k1, const std::vector<int>& k2) {
  const auto fine = split_by_edges(t, k1);
  const auto coarse = split_by_edges(t, k2);
  for (const auto& p : fine) {
    bool inside = false;
    for (const auto& q : coarse) inside = inside || p.subset_of(q);
    if (!inside) return false;
  }
  return true;
}

}  // namespace maf
