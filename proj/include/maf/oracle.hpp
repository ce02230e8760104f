#pragma once

#include <cstdint>
#include <vector>

#include "maf/forest.hpp"

namespace maf {

class OracleLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  int max_cuts = 0;
  std::uint64_t node_limit = 50'000'000;
};

// Exhaustive: tries edge subsets of the second tree by increasing size and
// returns the first that yields an agreement forest. Throws OracleLimit when
// more than node_limit subsets would be needed.
SolveResult brute_maf(const PhyloTree& t1, const PhyloTree& t2, OracleBudget budget);
inline SolveResult brute_maf(const PhyloTree& t1, const PhyloTree& t2, int kmax) {
  return brute_maf(t1, t2, OracleBudget{kmax});
}

// brute_maf truncated at a small constant depth.
SolveResult depth_limited_solve(const PhyloTree& t1, const PhyloTree& t2, int depth);

// True iff no piece of t minus `cut` holds taxa from both y and z.
bool splits(const PhyloTree& t, const std::vector<int>& cut, const TaxonSet& y, const TaxonSet& z);

// All edge sets of size 1..max_size that split (y, z), as sorted lower-node lists.
std::vector<std::vector<int>> enumerate_splitting_cuts(const PhyloTree& t, const TaxonSet& y,
                                                       const TaxonSet& z, int max_size);

// k1 refines k2: labels connected after deleting k1 stay connected after deleting k2.
bool refines(const PhyloTree& t, const std::vector<int>& k1, const std::vector<int>& k2);

// Calls f on every k-subset of {0..n-1} in lexicographic order; stops early
// when f returns false. Returns false iff stopped early.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return true;
  for (;;) {
    if (!f(static_cast<const std::vector<int>&>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace maf
