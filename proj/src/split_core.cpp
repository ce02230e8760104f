#include "maf/split_core.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace maf {

namespace {

using boost::multiprecision::cpp_int;

cpp_int weight_numerator(const std::vector<std::vector<int>>& cuts, std::size_t& denom_log) {
  denom_log = 1;
  for (const auto& k : cuts) denom_log = std::max(denom_log, k.size());
  cpp_int num = 0;
  for (const auto& k : cuts) num += cpp_int(1) << (denom_log - k.size());
  return num;
}

// Undirected view of a subtree: alive vertices, with the edge set implied by
// the tree's parent links restricted to alive endpoints.
class CoreBuilder {
 public:
  CoreBuilder(const PhyloTree& t, const TaxonSet& y, const TaxonSet& z) : t_(t), y_(y), z_(z) {}

  std::vector<std::vector<int>> run() {
    std::vector<char> alive(static_cast<std::size_t>(t_.node_count()), 1);
    return build(alive);
  }

 private:
  bool edge_alive(const std::vector<char>& alive, int v) const {
    return v > 0 && alive[static_cast<std::size_t>(v)] && alive[static_cast<std::size_t>(t_.parent(v))];
  }

  // Vertices reachable from `from` without crossing `blocked` (an edge id).
  std::vector<char> reach(const std::vector<char>& alive, int from, int blocked) const {
    std::vector<char> seen(alive.size(), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : t_.neighbors(u)) {
        if (!alive[static_cast<std::size_t>(w)] || seen[static_cast<std::size_t>(w)]) continue;
        const int e = t_.parent(w) == u ? w : u;
        if (e == blocked) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
    return seen;
  }

  TaxonSet labels(const std::vector<char>& part) const {
    TaxonSet s;
    for (int v : t_.leaves())
      if (part[static_cast<std::size_t>(v)]) s |= t_.node(v).taxon;
    return s;
  }

  std::vector<std::vector<int>> build(const std::vector<char>& alive) {
    const TaxonSet here = labels(alive);
    const TaxonSet ys = here & y_, zs = here & z_;

    // Pendant case: one edge has exactly the y labels on one side.
    for (int v = 1; v < t_.node_count(); ++v) {
      if (!edge_alive(alive, v)) continue;
      const TaxonSet side = labels(reach(alive, v, v));
      if (side == ys || side == zs) return {{v}};
    }

    for (int u = 0; u < t_.node_count(); ++u) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      std::vector<int> inc;
      for (int w : t_.neighbors(u))
        if (alive[static_cast<std::size_t>(w)]) inc.push_back(t_.parent(w) == u ? w : u);
      if (inc.size() != 3) continue;
      int pure_y = -1, pure_z = -1, mixed = -1;
      for (int e : inc) {
        const int far = e == u ? t_.parent(u) : e;
        const TaxonSet side = labels(reach(alive, far, e));
        if (side.empty()) continue;
        if (side.subset_of(y_)) pure_y = pure_y < 0 ? e : pure_y;
        else if (side.subset_of(z_)) pure_z = pure_z < 0 ? e : pure_z;
        else mixed = e;
      }
      if (pure_y < 0 || pure_z < 0 || mixed < 0) continue;
      std::vector<std::vector<int>> out;
      for (int e : {pure_y, pure_z}) {
        const auto keep = reach(alive, u, e);
        std::vector<char> sub(alive.size(), 0);
        for (std::size_t v = 0; v < alive.size(); ++v) sub[v] = alive[v] && keep[v];
        for (auto k : build(sub)) {
          k.push_back(e);
          std::sort(k.begin(), k.end());
          out.push_back(std::move(k));
        }
      }
      return out;
    }
    throw std::logic_error("build_core: no splitting vertex found");
  }

  const PhyloTree& t_;
  TaxonSet y_, z_;
};

}  // namespace

bool SplittingCore::weight_within_half() const {
  std::size_t d = 0;
  const cpp_int num = weight_numerator(cuts, d);
  return num * 2 <= (cpp_int(1) << d);
}

std::string SplittingCore::weight_string() const {
  std::size_t d = 0;
  cpp_int num = weight_numerator(cuts, d);
  cpp_int den = cpp_int(1) << d;
  while (num != 0 && num % 2 == 0 && den > 1) {
    num /= 2;
    den /= 2;
  }
  if (num == 0) den = 1;
  return num.str() + "/" + den.str();
}

SplittingCore build_core(const PhyloTree& t, const TaxonSet& y, const TaxonSet& z) {
  if (y.empty() || z.empty() || y.intersects(z) || (y | z) != t.taxa())
    throw std::invalid_argument("build_core: not a non-trivial bipartition of the tree's taxa");
  return SplittingCore{CoreBuilder(t, y, z).run()};
}

SplitBranching split_branches(const Instance& inst, const OverlapPair& pair) {
  if (pair.shared_edges.empty()) throw std::invalid_argument("split_branches: components share no edge");
  SplitBranching out;
  const auto& host = inst.host;
  // Canonical choice: the shared edge with the smallest bipartition name.
  int e = pair.shared_edges.front();
  for (int v : pair.shared_edges)
    if (host.edge_ref(v) < host.edge_ref(e)) e = v;
  out.shared_edge = e;

  for (std::size_t idx : {pair.first, pair.second}) {
    const auto& comp = inst.forest.components[idx];
    const TaxonSet y = comp.taxa() & host.cluster(e);
    const TaxonSet z = comp.taxa() - host.cluster(e);
    const auto core = build_core(comp, y, z);
    out.cores_within_half = out.cores_within_half && core.weight_within_half();
    for (const auto& k : core.cuts) {
      auto pieces = cut_tree(comp, k);
      SplitChild child;
      child.charge = static_cast<int>(pieces.size()) - 1;
      if (child.charge > inst.budget) continue;
      child.instance = inst;
      auto& comps = child.instance.forest.components;
      comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(idx));
      comps.insert(comps.end(), pieces.begin(), pieces.end());
      child.instance.budget -= child.charge;
      child.cut = k;
      out.children.push_back(std::move(child));
    }
  }
  return out;
}

}  // namespace maf
