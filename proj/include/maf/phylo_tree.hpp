#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maf/taxon_set.hpp"

namespace maf {

enum class TreeKind { rooted, unrooted };

const char* to_string(TreeKind kind);

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An edge named by the taxa it separates. For rooted trees this is the
// cluster below the arc; for unrooted trees it is the side that does not
// contain the smallest taxon. The name survives suppression of degree-2
// vertices, so cuts can be replayed on restricted trees.
struct EdgeRef {
  TaxonSet side;

  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend bool operator<(const EdgeRef& a, const EdgeRef& b) { return a.side < b.side; }
};

// Binary leaf-labelled tree, rooted or unrooted. Immutable once built.
//
// Both kinds share one storage layout: every node but the root has a parent
// edge, and an edge is addressed by its lower endpoint. Unrooted trees are
// stored hanging from the leaf with the smallest taxon, so that leaf is the
// root node with a single child and every internal node has two children.
class PhyloTree {
 public:
  struct Node {
    int parent = -1;
    std::array<int, 2> child{-1, -1};
    TaxonSet taxon;    // non-empty exactly for leaves
    TaxonSet cluster;  // taxa at or below this node
  };

  // Nodes of an arbitrary-arity rooted sketch, used by builders.
  struct RawNode {
    std::vector<int> children;
    TaxonSet taxon;
  };

  PhyloTree() = default;
  explicit PhyloTree(TreeKind kind) : kind_(kind) {}

  // Builds from a rooted sketch: unary nodes are suppressed, the root chain is
  // contracted. For kind=unrooted the sketch root may have 2 or 3 children.
  // Throws TreeError on multifurcations or unlabelled leaves.
  static PhyloTree from_sketch(TreeKind kind, const std::vector<RawNode>& sketch, int root);

  // Builds an unrooted tree from undirected adjacency. Degree-2 vertices are
  // suppressed; every degree-1 vertex must carry a taxon.
  static PhyloTree from_adjacency(const std::vector<std::vector<int>>& adj,
                                  const std::vector<TaxonSet>& taxon);

  TreeKind kind() const { return kind_; }
  bool rooted() const { return kind_ == TreeKind::rooted; }
  bool empty() const { return nodes_.empty(); }
  int root() const { return nodes_.empty() ? -1 : 0; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  int parent(int v) const { return node(v).parent; }
  const TaxonSet& cluster(int v) const { return node(v).cluster; }
  bool is_leaf(int v) const { return !node(v).taxon.empty(); }

  const TaxonSet& taxa() const;
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  // Leaf nodes in canonical taxon order.
  const std::vector<int>& leaves() const { return leaves_; }
  // Live taxa in canonical order.
  std::vector<TaxonSet> taxon_list() const;

  // Leaf whose taxon contains original index i; -1 if absent.
  int leaf_with(std::size_t i) const;
  int leaf_of(const TaxonSet& taxon) const { return taxon.empty() ? -1 : leaf_with(taxon.first()); }

  // All edges, addressed by their lower node, in node order.
  std::vector<int> edges() const;
  int edge_count() const { return std::max(0, node_count() - 1); }
  // Edge attaching a leaf; for the stored root leaf this is its child's edge.
  int leaf_edge(int leaf) const;

  EdgeRef edge_ref(int v) const { return EdgeRef{cluster(v)}; }
  // Lower node of the edge with this name, -1 if absent.
  int find_edge(const EdgeRef& e) const;

  // Neighbours in the undirected sense (parent first).
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;

 private:
  void finalize();

  TreeKind kind_ = TreeKind::rooted;
  std::vector<Node> nodes_;
  std::vector<int> leaves_;
};

// ---------------------------------------------------------------------------
// Structural queries.

struct Embedding {
  std::vector<int> vertices;  // sorted node ids
  std::vector<int> edges;     // lower nodes of embedding edges, sorted

  bool has_vertex(int v) const;
  bool has_edge(int v) const;
};

// Checks that `s` is a non-empty union of whole leaf taxa of `t`.
void check_taxon_subset(const PhyloTree& t, const TaxonSet& s);

// T|S: restriction with degree-2 / in1-out1 vertices suppressed.
PhyloTree restrict_tree(const PhyloTree& t, const TaxonSet& s);

// True iff t1 = t2 with identity on taxa. Throws on differing taxon sets.
bool is_homeomorphic(const PhyloTree& t1, const PhyloTree& t2);
// Same, but returns false instead of throwing when taxa differ.
bool same_topology(const PhyloTree& t1, const PhyloTree& t2);

// Non-trivial clusters (rooted) / splits (unrooted, side without the smallest
// taxon), sorted. Equal vectors iff homeomorphic.
std::vector<TaxonSet> cluster_signature(const PhyloTree& t);

// Pairs of leaves adjacent to a common vertex, canonical order.
std::vector<std::pair<TaxonSet, TaxonSet>> cherries(const PhyloTree& t);

// X* can be detached by deleting a single edge (rooted: X* is a cluster of a
// non-root node).
bool is_pendant(const PhyloTree& t, const TaxonSet& part);

enum class CommonMode { ignoring_rooting, including_rooting };

struct PendancyReport {
  bool pendant_in_first = false;
  bool pendant_in_second = false;
  bool common = false;
};

PendancyReport pendancy_and_common(const PhyloTree& t1, const PhyloTree& t2, const TaxonSet& part,
                                   CommonMode mode);

Embedding embed(const PhyloTree& t, const TaxonSet& s);
// Edge-membership test for T[S] without materializing the embedding.
bool embedding_has_edge(const PhyloTree& t, const TaxonSet& s, int v);

// Root of T[S] in a rooted tree.
int lca(const PhyloTree& t, const TaxonSet& s);

// Number of edges on the path between two leaves.
int leaf_distance(const PhyloTree& t, int leaf_a, int leaf_b);

// Vertices of the leaf-to-leaf path, in order from a to b.
std::vector<int> leaf_path(const PhyloTree& t, int leaf_a, int leaf_b);

// Leaf `drop` is removed and leaf `keep` absorbs its taxa; the pair must be a
// cherry. Used to reduce common cherries to one composite taxon.
PhyloTree collapse_cherry(const PhyloTree& t, const TaxonSet& keep, const TaxonSet& drop);

// Every taxon set that is pendant in t, i.e. separable by one edge.
std::vector<TaxonSet> pendant_sets(const PhyloTree& t);

// Connected pieces (as taxon sets) left after deleting the given edges.
// Pieces without taxa are not reported.
std::vector<TaxonSet> split_by_edges(const PhyloTree& t, const std::vector<int>& edge_nodes);

}  // namespace maf
