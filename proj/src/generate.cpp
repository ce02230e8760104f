#include "maf/generate.hpp"

#include <stdexcept>

namespace maf {

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

std::vector<std::string> generated_labels(std::size_t n) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n).size());
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) {
    auto s = std::to_string(i);
    out.push_back("t" + std::string(width - s.size(), '0') + s);
  }
  return out;
}

namespace {

// Rooted binary tree under mutation. Leaves are nodes 0..n-1 carrying
// taxon i; internal nodes follow.
struct Shape {
  std::vector<int> parent;
  std::vector<std::array<int, 2>> child;
  int root = 0;

  int add_node() {
    parent.push_back(-1);
    child.push_back({-1, -1});
    return static_cast<int>(parent.size()) - 1;
  }

  void replace_child(int p, int from, int to) {
    auto& ch = child[static_cast<std::size_t>(p)];
    (ch[0] == from ? ch[0] : ch[1]) = to;
  }

  // Inserts `mid` on the arc above `below` (or above the root).
  void attach_above(int below, int mid, int leaf) {
    const int p = parent[static_cast<std::size_t>(below)];
    parent[static_cast<std::size_t>(mid)] = p;
    if (p < 0) root = mid;
    else replace_child(p, below, mid);
    child[static_cast<std::size_t>(mid)] = {below, leaf};
    parent[static_cast<std::size_t>(below)] = mid;
    parent[static_cast<std::size_t>(leaf)] = mid;
  }

  bool in_subtree(int v, int top) const {
    for (; v >= 0; v = parent[static_cast<std::size_t>(v)])
      if (v == top) return true;
    return false;
  }

  std::vector<int> live() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v)
      if (v == root || parent[static_cast<std::size_t>(v)] >= 0) out.push_back(v);
    return out;
  }

  // Prunes the subtree at a random non-root node and regrafts it onto a
  // random arc outside it, possibly above the root.
  void spr(Rng& rng) {
    std::vector<int> nodes;
    for (int v : live())
      if (v != root) nodes.push_back(v);
    const int v = nodes[rng.below(nodes.size())];
    const int p = parent[static_cast<std::size_t>(v)];
    const auto& pc = child[static_cast<std::size_t>(p)];
    const int sib = pc[0] == v ? pc[1] : pc[0];
    const int gp = parent[static_cast<std::size_t>(p)];
    parent[static_cast<std::size_t>(sib)] = gp;
    if (gp < 0) root = sib;
    else replace_child(gp, p, sib);
    parent[static_cast<std::size_t>(p)] = -1;
    child[static_cast<std::size_t>(p)] = {-1, -1};

    std::vector<int> targets;
    for (int u : live())
      if (u != p && !in_subtree(u, v)) targets.push_back(u);
    attach_above(targets[rng.below(targets.size())], p, v);
  }

  std::vector<PhyloTree::RawNode> sketch() const {
    std::vector<PhyloTree::RawNode> out(parent.size());
    for (std::size_t v = 0; v < parent.size(); ++v) {
      if (child[v][0] >= 0) out[v].children = {child[v][0], child[v][1]};
      else out[v].taxon = TaxonSet::single(v);
    }
    return out;
  }
};

Shape random_shape(std::size_t n, Rng& rng) {
  Shape s;
  for (std::size_t i = 0; i < n; ++i) s.add_node();
  s.root = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto nodes = s.live();
    const int below = nodes[rng.below(nodes.size())];
    s.attach_above(below, s.add_node(), static_cast<int>(i));
  }
  return s;
}

}  // namespace

GeneratedPair generate_pair(std::size_t n, int moves, std::uint64_t seed, TreeKind kind) {
  if (n < 2) throw std::invalid_argument("need at least two taxa");
  if (n > TaxonSet::kCapacity) throw std::invalid_argument("too many taxa");
  if (moves < 0) throw std::invalid_argument("moves must be non-negative");
  Rng rng(seed);
  Shape first = random_shape(n, rng);
  Shape second = first;
  for (int m = 0; m < moves; ++m) second.spr(rng);
  GeneratedPair out{TaxonTable::from_labels(generated_labels(n)), {}, {}};
  out.first = PhyloTree::from_sketch(kind, first.sketch(), first.root);
  out.second = PhyloTree::from_sketch(kind, second.sketch(), second.root);
  return out;
}

}  // namespace maf
