#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maf/phylo_tree.hpp"

namespace maf {

// Components obtained by cutting the second tree. Each component tree is the
// restriction of that tree to the component's block.
struct Forest {
  TreeKind kind = TreeKind::rooted;
  std::vector<PhyloTree> components;

  std::vector<TaxonSet> blocks() const;
  // Index of the component holding the leaf with this taxon, -1 if none.
  int component_of(const TaxonSet& taxon) const;
};

// A state of the branching search: host tree, forest, remaining budget and
// the blocks already certified as final components.
struct Instance {
  PhyloTree host;
  Forest forest;
  int budget = 0;
  std::vector<TaxonSet> finalized;

  static Instance tree_pair(const PhyloTree& host, const PhyloTree& other, int budget);
};

// Either infeasible within the budget (no value) or the minimum number of
// further cuts, with one witness forest over original taxa.
struct SolveResult {
  std::optional<int> cuts;
  std::vector<TaxonSet> forest;

  bool feasible() const { return cuts.has_value(); }
  static SolveResult infeasible() { return {}; }
};

class ForestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pieces of `t` after deleting the given edges, as restricted trees.
std::vector<PhyloTree> cut_tree(const PhyloTree& t, const std::vector<int>& edge_nodes);

// Splits one component along an edge and charges one cut. No tidy-up.
Instance cut(const Instance& inst, std::size_t component, const EdgeRef& edge);

// Singleton deletion, then common-cherry collapse, repeated until stable.
// Degree-2 suppression is implicit in tree construction.
void tidy(Instance& inst);
Instance tidied(Instance inst);

// Conditions (1) and (2) of an agreement forest. Throws ForestError when
// `blocks` is not a partition of the taxa.
bool is_agreement_forest(const PhyloTree& t1, const PhyloTree& t2, const std::vector<TaxonSet>& blocks);

// Marks, per node of t, whether the node lies on the embedding of s.
std::vector<char> embedding_vertices(const PhyloTree& t, const TaxonSet& s);

struct OverlapPair {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<int> shared_edges;  // lower nodes in the host
};

struct OverlapReport {
  bool disjoint = true;
  std::vector<OverlapPair> pairs;
};

OverlapReport overlap_analysis(const Instance& inst);
// True iff the embeddings of the blocks in t are pairwise vertex-disjoint.
bool embeddings_disjoint(const PhyloTree& t, const std::vector<TaxonSet>& blocks);

// The a-b path inside the component holding a and b, with the edges hanging
// off it. For rooted components only arcs with their tail strictly below the
// top of the path count.
struct CherryPath {
  bool same_component = false;
  int component = -1;
  int t = 0;
  std::vector<int> edges;      // lower nodes in the component tree, ordered from a to b
  std::vector<TaxonSet> beyond;  // taxa separated from the path by each edge
};

CherryPath cherry_path_edges(const Instance& inst, const TaxonSet& a, const TaxonSet& b);
// Same, directly on a tree holding both leaves.
CherryPath path_edges(const PhyloTree& t, const TaxonSet& a, const TaxonSet& b);

}  // namespace maf
