#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "maf/forest.hpp"
#include "maf/newick.hpp"
#include "maf/phylo_tree.hpp"

namespace maf::test {

struct Pair {
  TaxonTable table;
  PhyloTree first;
  PhyloTree second;
};

inline Pair make_pair(const std::string& a, const std::string& b, TreeKind kind) {
  Pair p;
  p.first = parse_newick(a, kind, p.table);
  p.second = to_tree(parse_newick_raw(b), kind, p.table);
  return p;
}

inline TaxonSet taxa(const TaxonTable& table, std::initializer_list<const char*> labels) {
  TaxonSet s;
  for (const char* l : labels) s.insert(table.index(l));
  return s;
}

// Unlabelled rooted shapes on n leaves as Newick skeletons with "@" leaves.
inline std::vector<std::string> rooted_skeletons(int n) {
  static std::map<int, std::vector<std::string>> memo;
  if (n == 1) return {"@"};
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<std::string> out;
  for (int i = 1; 2 * i <= n; ++i) {
    const auto left = rooted_skeletons(i), right = rooted_skeletons(n - i);
    for (std::size_t x = 0; x < left.size(); ++x)
      for (std::size_t y = (2 * i == n ? x : 0); y < right.size(); ++y)
        out.push_back("(" + left[x] + "," + right[y] + ")");
  }
  return memo[n] = out;
}

inline std::string label_skeleton(std::string s) {
  int next = 0;
  std::string out;
  for (char ch : s) {
    if (ch == '@') out += "x" + std::to_string(next++);
    else out += ch;
  }
  return out + ";";
}

// Every rooted shape on n leaves, labelled x0.. left to right.
inline std::vector<std::string> rooted_shapes(int n) {
  std::vector<std::string> out;
  for (const auto& s : rooted_skeletons(n)) out.push_back(label_skeleton(s));
  return out;
}

// Every unrooted shape on n >= 3 leaves (with repeats): a leaf joined to the
// root of each rooted shape on n-1 leaves.
inline std::vector<std::string> unrooted_shapes(int n) {
  std::vector<std::string> out;
  for (const auto& s : rooted_skeletons(n - 1)) {
    if (s == "@") continue;
    out.push_back(label_skeleton("(@," + s.substr(1)));
  }
  return out;
}

// Every bipartition of the taxa with both sides non-empty, each listed once.
inline std::vector<std::pair<TaxonSet, TaxonSet>> bipartitions(const PhyloTree& t) {
  const auto list = t.taxon_list();
  std::vector<std::pair<TaxonSet, TaxonSet>> out;
  const std::size_t n = list.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    if (mask & 1) continue;  // fix the first taxon on the Z side
    TaxonSet y;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) y |= list[i];
    out.push_back({y, t.taxa() - y});
  }
  return out;
}

// Exhaustive minimum number of edges whose removal leaves every piece
// single-coloured. Written against the node layout only.
inline int min_monochrome_cut(const PhyloTree& t, const std::map<TaxonSet, int>& colour) {
  const int m = t.node_count();
  std::vector<int> edges;
  for (int v = 1; v < m; ++v) edges.push_back(v);
  std::vector<int> pick;
  std::function<bool(std::size_t, int)> search = [&](std::size_t from, int left) -> bool {
    if (left == 0) {
      std::vector<int> root(static_cast<std::size_t>(m));
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int x) { return root[static_cast<std::size_t>(x)] == x ? x : root[static_cast<std::size_t>(x)] = find(root[static_cast<std::size_t>(x)]); };
      std::vector<char> cut(static_cast<std::size_t>(m), 0);
      for (int e : pick) cut[static_cast<std::size_t>(e)] = 1;
      for (int v = 1; v < m; ++v)
        if (!cut[static_cast<std::size_t>(v)]) root[static_cast<std::size_t>(find(v))] = find(t.parent(v));
      std::map<int, int> seen;
      for (int leaf : t.leaves()) {
        const int c = colour.at(t.node(leaf).taxon);
        auto [it, fresh] = seen.emplace(find(leaf), c);
        if (!fresh && it->second != c) return false;
      }
      return true;
    }
    for (std::size_t i = from; i < edges.size(); ++i) {
      pick.push_back(edges[i]);
      const bool ok = search(i + 1, left - 1);
      pick.pop_back();
      if (ok) return true;
    }
    return false;
  };
  for (int k = 0;; ++k)
    if (search(0, k)) return k;
}

// Fewest further cuts turning a tree-forest instance into an agreement
// forest, by trying every edge subset of the forest in increasing size.
inline int forest_optimum(const Instance& inst) {
  if (inst.host.empty()) return 0;
  std::vector<std::pair<std::size_t, int>> edges;
  const auto& comps = inst.forest.components;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v = 1; v < comps[c].node_count(); ++v) edges.push_back({c, v});
  std::vector<std::size_t> pick;
  auto agrees = [&] {
    std::vector<std::vector<int>> per(comps.size());
    for (auto i : pick) per[edges[i].first].push_back(edges[i].second);
    std::vector<TaxonSet> blocks;
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (const auto& piece : cut_tree(comps[c], per[c])) {
        if (!same_topology(piece, restrict_tree(inst.host, piece.taxa()))) return false;
        blocks.push_back(piece.taxa());
      }
    return embeddings_disjoint(inst.host, blocks);
  };
  std::function<bool(std::size_t, int)> search = [&](std::size_t from, int left) -> bool {
    if (left == 0) return agrees();
    for (std::size_t i = from; i < edges.size(); ++i) {
      pick.push_back(i);
      const bool ok = search(i + 1, left - 1);
      pick.pop_back();
      if (ok) return true;
    }
    return false;
  };
  for (int k = 0;; ++k)
    if (search(0, k)) return k;
}

}  // namespace maf::test
