#include "maf/forest.hpp"

#include <algorithm>

namespace maf {

std::vector<TaxonSet> Forest::blocks() const {
  std::vector<TaxonSet> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.taxa());
  return out;
}

int Forest::component_of(const TaxonSet& taxon) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].taxa().intersects(taxon)) return static_cast<int>(i);
  return -1;
}

Instance Instance::tree_pair(const PhyloTree& host, const PhyloTree& other, int budget) {
  if (host.kind() != other.kind()) throw ForestError("trees of different kinds");
  if (host.taxa() != other.taxa()) throw ForestError("trees on different taxon sets");
  Instance inst;
  inst.host = host;
  inst.forest.kind = host.kind();
  if (!other.empty()) inst.forest.components.push_back(other);
  inst.budget = budget;
  return inst;
}

std::vector<PhyloTree> cut_tree(const PhyloTree& t, const std::vector<int>& edge_nodes) {
  std::vector<PhyloTree> out;
  for (const auto& piece : split_by_edges(t, edge_nodes)) out.push_back(restrict_tree(t, piece));
  return out;
}

Instance cut(const Instance& inst, std::size_t component, const EdgeRef& edge) {
  if (inst.budget < 1) throw ForestError("cut with exhausted budget");
  if (component >= inst.forest.components.size()) throw ForestError("no such component");
  const auto& tree = inst.forest.components[component];
  const int v = tree.find_edge(edge);
  if (v < 0) throw ForestError("edge does not belong to the component");
  Instance out = inst;
  auto pieces = cut_tree(tree, {v});
  auto& comps = out.forest.components;
  comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(component));
  comps.insert(comps.begin() + static_cast<std::ptrdiff_t>(component), pieces.begin(), pieces.end());
  out.budget -= 1;
  return out;
}

namespace {

bool leaves_form_cherry(const PhyloTree& t, int x, int y) {
  if (x < 0 || y < 0 || x == y) return false;
  if (t.parent(x) >= 0 && t.parent(x) == t.parent(y)) return true;
  if (t.rooted()) return false;
  if (y == t.root()) std::swap(x, y);
  if (x != t.root()) return false;
  // x is the stored root leaf: its neighbour is node 1.
  return t.parent(y) == 1 || (y == 1 && t.node_count() == 2);
}

}  // namespace

void tidy(Instance& inst) {
  for (;;) {
    bool changed = false;

    TaxonSet removed;
    auto& comps = inst.forest.components;
    for (std::size_t i = 0; i < comps.size();) {
      if (comps[i].leaf_count() == 1) {
        inst.finalized.push_back(comps[i].taxa());
        removed |= comps[i].taxa();
        comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    if (!removed.empty()) {
      changed = true;
      const auto rest = inst.host.taxa() - removed;
      inst.host = rest.empty() ? PhyloTree(inst.host.kind()) : restrict_tree(inst.host, rest);
    }

    if (!inst.host.empty()) {
      for (const auto& [x, y] : cherries(inst.host)) {
        const int c = inst.forest.component_of(x);
        if (c < 0) continue;
        auto& comp = comps[static_cast<std::size_t>(c)];
        if (!leaves_form_cherry(comp, comp.leaf_of(x), comp.leaf_of(y))) continue;
        inst.host = collapse_cherry(inst.host, x, y);
        comp = collapse_cherry(comp, x, y);
        changed = true;
        break;
      }
    }
    if (!changed) return;
  }
}

Instance tidied(Instance inst) {
  tidy(inst);
  return inst;
}

std::vector<char> embedding_vertices(const PhyloTree& t, const TaxonSet& s) {
  std::vector<char> mark(static_cast<std::size_t>(t.node_count()), 0);
  bool any = false;
  for (int v = 1; v < t.node_count(); ++v) {
    if (!embedding_has_edge(t, s, v)) continue;
    mark[static_cast<std::size_t>(v)] = 1;
    mark[static_cast<std::size_t>(t.parent(v))] = 1;
    any = true;
  }
  if (!any) {
    const int leaf = t.leaf_of(s);
    if (leaf >= 0) mark[static_cast<std::size_t>(leaf)] = 1;
  }
  return mark;
}

bool embeddings_disjoint(const PhyloTree& t, const std::vector<TaxonSet>& blocks) {
  std::vector<char> used(static_cast<std::size_t>(t.node_count()), 0);
  for (const auto& b : blocks) {
    const auto mark = embedding_vertices(t, b);
    for (std::size_t v = 0; v < mark.size(); ++v) {
      if (!mark[v]) continue;
      if (used[v]) return false;
      used[v] = 1;
    }
  }
  return true;
}

bool is_agreement_forest(const PhyloTree& t1, const PhyloTree& t2, const std::vector<TaxonSet>& blocks) {
  if (t1.taxa() != t2.taxa()) throw ForestError("trees on different taxon sets");
  TaxonSet seen;
  for (const auto& b : blocks) {
    if (b.empty()) throw ForestError("empty block");
    if (b.intersects(seen)) throw ForestError("blocks overlap");
    seen |= b;
    try {
      check_taxon_subset(t1, b);
    } catch (const TreeError& e) {
      throw ForestError(e.what());
    }
  }
  if (seen != t1.taxa()) throw ForestError("blocks do not cover the taxa");
  for (const auto& b : blocks)
    if (!same_topology(restrict_tree(t1, b), restrict_tree(t2, b))) return false;
  return embeddings_disjoint(t1, blocks) && embeddings_disjoint(t2, blocks);
}

OverlapReport overlap_analysis(const Instance& inst) {
  OverlapReport report;
  const auto& host = inst.host;
  const auto& comps = inst.forest.components;
  std::vector<std::vector<char>> vert(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) vert[i] = embedding_vertices(host, comps[i].taxa());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      bool meet = false;
      for (std::size_t v = 0; v < vert[i].size() && !meet; ++v) meet = vert[i][v] && vert[j][v];
      if (!meet) continue;
      OverlapPair pair{i, j, {}};
      for (int v = 1; v < host.node_count(); ++v)
        if (embedding_has_edge(host, comps[i].taxa(), v) && embedding_has_edge(host, comps[j].taxa(), v))
          pair.shared_edges.push_back(v);
      report.pairs.push_back(std::move(pair));
    }
  }
  report.disjoint = report.pairs.empty();
  return report;
}

CherryPath path_edges(const PhyloTree& t, const TaxonSet& a, const TaxonSet& b) {
  CherryPath out;
  const int la = t.leaf_of(a), lb = t.leaf_of(b);
  if (la < 0 || lb < 0) return out;
  out.same_component = true;
  const auto path = leaf_path(t, la, lb);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const int u = path[i], prev = path[i - 1], next = path[i + 1];
    for (int w : t.neighbors(u)) {
      if (w == prev || w == next) continue;
      if (w == t.parent(u)) {
        if (t.rooted()) continue;
        out.edges.push_back(u);
        out.beyond.push_back(t.taxa() - t.cluster(u));
      } else {
        out.edges.push_back(w);
        out.beyond.push_back(t.cluster(w));
      }
    }
  }
  out.t = static_cast<int>(out.edges.size());
  return out;
}

CherryPath cherry_path_edges(const Instance& inst, const TaxonSet& a, const TaxonSet& b) {
  const int ha = inst.host.leaf_of(a), hb = inst.host.leaf_of(b);
  if (ha < 0 || hb < 0 || inst.host.node(ha).taxon != a || inst.host.node(hb).taxon != b)
    throw ForestError("cherry taxa are not live in the host");
  const auto& ch = cherries(inst.host);
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  if (std::find(ch.begin(), ch.end(), key) == ch.end()) throw ForestError("not a cherry of the host");
  const int ca = inst.forest.component_of(a), cb = inst.forest.component_of(b);
  if (ca < 0 || ca != cb) return CherryPath{};
  auto out = path_edges(inst.forest.components[static_cast<std::size_t>(ca)], a, b);
  out.component = ca;
  return out;
}

}  // namespace maf
