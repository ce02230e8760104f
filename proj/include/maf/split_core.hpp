#pragma once

#include <vector>

#include "maf/forest.hpp"

namespace maf {

// A set of cuts over one tree such that every cut separating y from z
// refines at least one of them. Cuts are sorted lists of lower nodes.
struct SplittingCore {
  std::vector<std::vector<int>> cuts;

  // Sum of 2^-|K| compared with 1/2 in exact integer arithmetic.
  bool weight_within_half() const;
  // The sum as a reduced fraction "p/q".
  std::string weight_string() const;
};

// Recursive construction over a binary tree (rooted trees are treated as
// undirected). Throws std::invalid_argument when (y, z) is not a non-trivial
// bipartition of the tree's taxa.
SplittingCore build_core(const PhyloTree& t, const TaxonSet& y, const TaxonSet& z);

struct SplitChild {
  Instance instance;
  int charge = 0;            // pieces added to the forest
  std::vector<int> cut;      // the core cut applied, for auditing
};

struct SplitBranching {
  int shared_edge = -1;
  std::vector<SplitChild> children;
  bool cores_within_half = true;
};

// Branches on which of two overlapping components keeps a shared host edge;
// the other component is split along a splitting core. A cut is charged the
// pieces it actually creates; children whose charge exceeds the budget are
// dropped. Children are not tidied.
SplitBranching split_branches(const Instance& inst, const OverlapPair& pair);

}  // namespace maf
