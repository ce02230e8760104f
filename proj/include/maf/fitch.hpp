#pragma once

#include <map>
#include <vector>

#include "maf/phylo_tree.hpp"

namespace maf {

// State per leaf taxon of the tree.
using StateLabeling = std::map<TaxonSet, int>;

struct FitchResult {
  int changes = 0;
  std::vector<int> cut;  // lower nodes of edges whose endpoint states differ
};

// Small parsimony: bottom-up state sets (intersection, else union), top-down
// assignment, then cut every edge with differing endpoint states. Throws
// std::invalid_argument if some leaf has no state.
FitchResult fitch_min_cuts(const PhyloTree& t, const StateLabeling& states);

}  // namespace maf
