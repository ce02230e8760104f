#pragma once

#include <algorithm>
#include <climits>

#include "maf/oracle.hpp"
#include "maf/search.hpp"
#include "support.hpp"

namespace maf::test {

inline SolveResult solve(TreeKind kind, Algo algo, const PhyloTree& a, const PhyloTree& b, int k = 30) {
  SearchStats stats;
  return Solver(kind, algo, stats).solve_min(a, b, k);
}

inline Instance tidied_pair(const Pair& p) { return tidied(Instance::tree_pair(p.first, p.second, 30)); }

// A branching is safe when its best child reaches the instance optimum.
inline bool keeps_optimum(const Instance& inst, const Branching& br) {
  int via = INT_MAX;
  for (const auto& c : br.children) via = std::min(via, c.charge + forest_optimum(c.instance));
  return via == forest_optimum(inst);
}

inline std::vector<int> charges(const Branching& br) {
  std::vector<int> out;
  for (const auto& c : br.children) out.push_back(c.charge);
  return out;
}

}  // namespace maf::test
