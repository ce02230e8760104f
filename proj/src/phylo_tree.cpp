#include "maf/phylo_tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace maf {

const char* to_string(TreeKind kind) { return kind == TreeKind::rooted ? "rooted" : "unrooted"; }

// ---------------------------------------------------------------------------
// TaxonTable

TaxonTable TaxonTable::from_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() > TaxonSet::kCapacity)
    throw std::invalid_argument("too many taxa (capacity " + std::to_string(TaxonSet::kCapacity) + ")");
  TaxonTable table;
  for (auto& l : labels) {
    if (l.empty()) throw std::invalid_argument("empty taxon label");
    table.index_.emplace(l, table.names_.size());
    table.names_.push_back(std::move(l));
  }
  return table;
}

bool TaxonTable::contains(std::string_view label) const {
  return index_.find(std::string(label)) != index_.end();
}

std::size_t TaxonTable::index(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw std::invalid_argument("unknown taxon '" + std::string(label) + "'");
  return it->second;
}

TaxonSet TaxonTable::set_of(const std::vector<std::string>& labels) const {
  TaxonSet s;
  for (const auto& l : labels) s.insert(index(l));
  return s;
}

std::vector<std::string> TaxonTable::labels(const TaxonSet& s) const {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) {
    out.push_back(i < names_.size() ? names_[i] : "#" + std::to_string(i));
  });
  return out;
}

std::string TaxonTable::format(const TaxonSet& s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& l : labels(s)) {
    if (!first) out += ',';
    out += l;
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// PhyloTree construction

namespace {

const TaxonSet kEmptySet{};

}  // namespace

void PhyloTree::finalize() {
  for (int v = node_count() - 1; v >= 0; --v) {
    auto& n = nodes_[static_cast<std::size_t>(v)];
    n.cluster = n.taxon;
    for (int c : n.child)
      if (c >= 0) n.cluster |= nodes_[static_cast<std::size_t>(c)].cluster;
  }
  leaves_.clear();
  for (int v = 0; v < node_count(); ++v)
    if (is_leaf(v)) leaves_.push_back(v);
  std::sort(leaves_.begin(), leaves_.end(),
            [&](int a, int b) { return node(a).taxon.first() < node(b).taxon.first(); });
}

PhyloTree PhyloTree::from_sketch(TreeKind kind, const std::vector<RawNode>& sketch, int root) {
  if (sketch.empty() || root < 0) return PhyloTree(kind);

  if (kind == TreeKind::unrooted) {
    std::vector<std::vector<int>> adj(sketch.size());
    std::vector<TaxonSet> taxon(sketch.size());
    for (std::size_t v = 0; v < sketch.size(); ++v) {
      taxon[v] = sketch[v].taxon;
      for (int c : sketch[v].children) {
        adj[v].push_back(c);
        adj[static_cast<std::size_t>(c)].push_back(static_cast<int>(v));
      }
    }
    return from_adjacency(adj, taxon);
  }

  // Count labelled leaves below each sketch node.
  std::vector<int> alive(sketch.size(), 0);
  std::function<int(int)> count = [&](int v) {
    const auto& n = sketch[static_cast<std::size_t>(v)];
    int c = n.children.empty() ? (n.taxon.empty() ? 0 : 1) : 0;
    if (!n.children.empty() && !n.taxon.empty()) throw TreeError("labelled internal vertex");
    for (int ch : n.children) c += count(ch);
    alive[static_cast<std::size_t>(v)] = c;
    return c;
  };
  if (count(root) == 0) return PhyloTree(kind);

  PhyloTree t(kind);
  std::function<void(int, int, int)> emit = [&](int v, int parent, int slot) {
    for (;;) {
      const auto& n = sketch[static_cast<std::size_t>(v)];
      if (n.children.empty()) break;
      int live = 0, last = -1;
      for (int ch : n.children)
        if (alive[static_cast<std::size_t>(ch)] > 0) ++live, last = ch;
      if (live != 1) break;
      v = last;
    }
    const auto& n = sketch[static_cast<std::size_t>(v)];
    const int id = t.node_count();
    Node node;
    node.parent = parent;
    node.taxon = n.taxon;
    t.nodes_.push_back(node);
    if (parent >= 0) t.nodes_[static_cast<std::size_t>(parent)].child[static_cast<std::size_t>(slot)] = id;
    if (n.children.empty()) {
      if (n.taxon.empty()) throw TreeError("unlabelled leaf");
      return;
    }
    int s = 0;
    for (int ch : n.children) {
      if (alive[static_cast<std::size_t>(ch)] == 0) continue;
      if (s == 2) throw TreeError("vertex with more than two children in a rooted tree");
      emit(ch, id, s++);
    }
  };
  emit(root, -1, 0);
  t.finalize();
  return t;
}

PhyloTree PhyloTree::from_adjacency(const std::vector<std::vector<int>>& adj,
                                    const std::vector<TaxonSet>& taxon) {
  PhyloTree t(TreeKind::unrooted);
  if (adj.empty()) return t;

  int start = -1;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (taxon[v].empty()) continue;
    if (adj[v].size() > 1) throw TreeError("labelled internal vertex");
    if (start < 0 || taxon[v].first() < taxon[static_cast<std::size_t>(start)].first()) start = static_cast<int>(v);
  }
  if (start < 0) throw TreeError("tree without labelled leaves");

  std::function<void(int, int, int, int)> emit = [&](int v, int from, int parent, int slot) {
    for (;;) {
      if (!taxon[static_cast<std::size_t>(v)].empty()) break;
      int next = -1, others = 0;
      for (int w : adj[static_cast<std::size_t>(v)])
        if (w != from) ++others, next = w;
      if (others != 1) break;
      from = v;
      v = next;
    }
    const int id = t.node_count();
    Node node;
    node.parent = parent;
    node.taxon = taxon[static_cast<std::size_t>(v)];
    t.nodes_.push_back(node);
    if (parent >= 0) t.nodes_[static_cast<std::size_t>(parent)].child[static_cast<std::size_t>(slot)] = id;
    if (!node.taxon.empty()) return;
    int s = 0;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (w == from) continue;
      if (s == 2) throw TreeError("vertex of degree greater than 3 in an unrooted tree");
      emit(w, v, id, s++);
    }
    if (s == 0) throw TreeError("unlabelled leaf");
  };

  Node r;
  r.taxon = taxon[static_cast<std::size_t>(start)];
  t.nodes_.push_back(r);
  if (!adj[static_cast<std::size_t>(start)].empty()) emit(adj[static_cast<std::size_t>(start)][0], start, 0, 0);
  t.finalize();
  return t;
}

const TaxonSet& PhyloTree::taxa() const { return nodes_.empty() ? kEmptySet : nodes_[0].cluster; }

std::vector<TaxonSet> PhyloTree::taxon_list() const {
  std::vector<TaxonSet> out;
  out.reserve(leaves_.size());
  for (int v : leaves_) out.push_back(node(v).taxon);
  return out;
}

int PhyloTree::leaf_with(std::size_t i) const {
  auto it = std::upper_bound(leaves_.begin(), leaves_.end(), i,
                             [&](std::size_t x, int v) { return x < node(v).taxon.first(); });
  if (it == leaves_.begin()) return -1;
  --it;
  return node(*it).taxon.contains(i) ? *it : -1;
}

std::vector<int> PhyloTree::edges() const {
  std::vector<int> out;
  for (int v = 1; v < node_count(); ++v) out.push_back(v);
  return out;
}

int PhyloTree::leaf_edge(int leaf) const {
  if (leaf != root()) return leaf;
  return node(leaf).child[0];
}

int PhyloTree::find_edge(const EdgeRef& e) const {
  for (int v = 1; v < node_count(); ++v) {
    if (cluster(v) == e.side) return v;
    if (!rooted() && taxa() - cluster(v) == e.side) return v;
  }
  return -1;
}

std::vector<int> PhyloTree::neighbors(int v) const {
  std::vector<int> out;
  if (parent(v) >= 0) out.push_back(parent(v));
  for (int c : node(v).child)
    if (c >= 0) out.push_back(c);
  return out;
}

int PhyloTree::degree(int v) const {
  int d = parent(v) >= 0 ? 1 : 0;
  for (int c : node(v).child) d += c >= 0 ? 1 : 0;
  return d;
}

// ---------------------------------------------------------------------------
// Queries

bool Embedding::has_vertex(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
bool Embedding::has_edge(int v) const { return std::binary_search(edges.begin(), edges.end(), v); }

void check_taxon_subset(const PhyloTree& t, const TaxonSet& s) {
  if (s.empty()) throw TreeError("empty taxon subset");
  if (!s.subset_of(t.taxa())) throw TreeError("taxon subset contains unknown taxa");
  for (int v : t.leaves()) {
    const auto& x = t.node(v).taxon;
    if (x.intersects(s) && !x.subset_of(s)) throw TreeError("taxon subset splits a composite taxon");
  }
}

PhyloTree restrict_tree(const PhyloTree& t, const TaxonSet& s) {
  check_taxon_subset(t, s);
  if (s == t.taxa()) return t;

  if (!t.rooted() && !t.node(t.root()).taxon.subset_of(s)) {
    // The stored root leaf is dropped; rebuild from the embedding so the
    // result hangs from its own smallest leaf.
    const int n = t.node_count();
    std::vector<int> id(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> adj;
    std::vector<TaxonSet> taxon;
    auto vid = [&](int v) {
      auto& slot = id[static_cast<std::size_t>(v)];
      if (slot < 0) {
        slot = static_cast<int>(adj.size());
        adj.emplace_back();
        taxon.push_back(t.is_leaf(v) ? t.node(v).taxon : TaxonSet{});
      }
      return slot;
    };
    if (const int leaf = t.leaf_of(s); t.node(leaf).taxon == s) {
      vid(leaf);
      return PhyloTree::from_adjacency(adj, taxon);
    }
    for (int v = 1; v < n; ++v) {
      if (!embedding_has_edge(t, s, v)) continue;
      int a = vid(v), b = vid(t.parent(v));
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return PhyloTree::from_adjacency(adj, taxon);
  }

  // Walk the stored orientation, keeping nodes whose cluster meets s.
  std::vector<PhyloTree::RawNode> sketch;
  std::vector<int> map(static_cast<std::size_t>(t.node_count()), -1);
  for (int v = 0; v < t.node_count(); ++v) {
    if (!t.cluster(v).intersects(s)) continue;
    map[static_cast<std::size_t>(v)] = static_cast<int>(sketch.size());
    PhyloTree::RawNode rn;
    if (t.is_leaf(v)) rn.taxon = t.node(v).taxon;
    sketch.push_back(rn);
    if (t.parent(v) >= 0) sketch[static_cast<std::size_t>(map[static_cast<std::size_t>(t.parent(v))])].children.push_back(map[static_cast<std::size_t>(v)]);
  }
  if (t.rooted()) return PhyloTree::from_sketch(TreeKind::rooted, sketch, 0);
  // Unrooted with the root leaf kept: the stored root is a leaf that may have
  // one child in the sketch; build via adjacency.
  std::vector<std::vector<int>> adj(sketch.size());
  std::vector<TaxonSet> taxon(sketch.size());
  for (std::size_t v = 0; v < sketch.size(); ++v) {
    taxon[v] = sketch[v].taxon;
    for (int c : sketch[v].children) {
      adj[v].push_back(c);
      adj[static_cast<std::size_t>(c)].push_back(static_cast<int>(v));
    }
  }
  return PhyloTree::from_adjacency(adj, taxon);
}

std::vector<TaxonSet> cluster_signature(const PhyloTree& t) {
  std::vector<TaxonSet> sig;
  for (int v = t.rooted() ? 1 : 2; v < t.node_count(); ++v)
    if (!t.is_leaf(v)) sig.push_back(t.cluster(v));
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool same_topology(const PhyloTree& t1, const PhyloTree& t2) {
  if (t1.kind() != t2.kind() || t1.taxa() != t2.taxa()) return false;
  if (t1.node_count() != t2.node_count()) return false;
  if (t1.leaf_count() <= (t1.rooted() ? 2 : 3)) return true;
  return cluster_signature(t1) == cluster_signature(t2);
}

bool is_homeomorphic(const PhyloTree& t1, const PhyloTree& t2) {
  if (t1.kind() != t2.kind()) throw TreeError("comparing rooted with unrooted tree");
  if (t1.taxa() != t2.taxa()) throw TreeError("comparing trees on different taxa");
  return same_topology(t1, t2);
}

std::vector<std::pair<TaxonSet, TaxonSet>> cherries(const PhyloTree& t) {
  std::vector<std::pair<TaxonSet, TaxonSet>> out;
  auto add = [&](int a, int b) {
    auto x = t.node(a).taxon, y = t.node(b).taxon;
    if (y < x) std::swap(x, y);
    out.emplace_back(x, y);
  };
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    const auto [c0, c1] = t.node(v).child;
    if (c0 >= 0 && c1 >= 0 && t.is_leaf(c0) && t.is_leaf(c1)) add(c0, c1);
  }
  if (!t.rooted() && t.node_count() > 1) {
    const int u = t.node(0).child[0];
    if (t.is_leaf(u)) {
      add(0, u);
    } else {
      for (int c : t.node(u).child)
        if (t.is_leaf(c)) add(0, c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_pendant(const PhyloTree& t, const TaxonSet& part) {
  if (part.empty() || !part.subset_of(t.taxa()) || part == t.taxa()) return false;
  for (int v = 1; v < t.node_count(); ++v) {
    if (t.cluster(v) == part) return true;
    if (!t.rooted() && t.taxa() - t.cluster(v) == part) return true;
  }
  return false;
}

PendancyReport pendancy_and_common(const PhyloTree& t1, const PhyloTree& t2, const TaxonSet& part,
                                   CommonMode mode) {
  if (t1.taxa() != t2.taxa()) throw TreeError("pendancy query on trees with different taxa");
  if (part == t1.taxa()) throw TreeError("pendancy is undefined for the full taxon set");
  check_taxon_subset(t1, part);
  PendancyReport r;
  r.pendant_in_first = is_pendant(t1, part);
  r.pendant_in_second = is_pendant(t2, part);
  if (!r.pendant_in_first || !r.pendant_in_second) return r;
  TaxonSet probe = part;
  if (mode == CommonMode::including_rooting) {
    const auto rest = t1.taxa() - part;
    probe |= t1.node(t1.leaf_with(rest.first())).taxon;
  }
  r.common = same_topology(restrict_tree(t1, probe), restrict_tree(t2, probe));
  return r;
}

bool embedding_has_edge(const PhyloTree& t, const TaxonSet& s, int v) {
  const auto& below = t.cluster(v);
  return below.intersects(s) && !s.subset_of(below);
}

Embedding embed(const PhyloTree& t, const TaxonSet& s) {
  check_taxon_subset(t, s);
  Embedding e;
  for (int v = 1; v < t.node_count(); ++v) {
    if (!embedding_has_edge(t, s, v)) continue;
    e.edges.push_back(v);
    e.vertices.push_back(v);
    e.vertices.push_back(t.parent(v));
  }
  if (e.edges.empty()) e.vertices.push_back(t.leaf_of(s));
  std::sort(e.vertices.begin(), e.vertices.end());
  e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
  return e;
}

int lca(const PhyloTree& t, const TaxonSet& s) {
  if (!t.rooted()) throw TreeError("lca requires a rooted tree");
  check_taxon_subset(t, s);
  int v = t.leaf_with(s.first());
  while (!s.subset_of(t.cluster(v))) v = t.parent(v);
  return v;
}

std::vector<int> leaf_path(const PhyloTree& t, int a, int b) {
  std::vector<int> up_a;
  for (int v = a; v >= 0; v = t.parent(v)) up_a.push_back(v);
  std::vector<int> up_b;
  int meet = b;
  while (std::find(up_a.begin(), up_a.end(), meet) == up_a.end()) {
    up_b.push_back(meet);
    meet = t.parent(meet);
  }
  std::vector<int> path;
  for (int v : up_a) {
    path.push_back(v);
    if (v == meet) break;
  }
  path.insert(path.end(), up_b.rbegin(), up_b.rend());
  return path;
}

int leaf_distance(const PhyloTree& t, int a, int b) {
  return static_cast<int>(leaf_path(t, a, b).size()) - 1;
}

std::vector<TaxonSet> split_by_edges(const PhyloTree& t, const std::vector<int>& edge_nodes) {
  if (t.empty()) return {};
  std::vector<char> cut(static_cast<std::size_t>(t.node_count()), 0);
  for (int v : edge_nodes) cut[static_cast<std::size_t>(v)] = 1;
  std::vector<int> comp(static_cast<std::size_t>(t.node_count()), 0);
  int next = 1;
  for (int v = 1; v < t.node_count(); ++v)
    comp[static_cast<std::size_t>(v)] = cut[static_cast<std::size_t>(v)] ? next++ : comp[static_cast<std::size_t>(t.parent(v))];
  std::vector<TaxonSet> pieces(static_cast<std::size_t>(next));
  for (int v : t.leaves()) pieces[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] |= t.node(v).taxon;
  std::erase_if(pieces, [](const TaxonSet& p) { return p.empty(); });
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

}  // namespace maf

namespace maf {

PhyloTree collapse_cherry(const PhyloTree& t, const TaxonSet& keep, const TaxonSet& drop) {
  const int x = t.leaf_of(keep), y = t.leaf_of(drop);
  if (x < 0 || y < 0 || t.node(x).taxon != keep || t.node(y).taxon != drop)
    throw TreeError("collapse_cherry: unknown leaf");
  const bool siblings = t.parent(x) >= 0 && t.parent(x) == t.parent(y);
  const int away = x == t.root() ? y : x;
  const bool at_root = !t.rooted() && (x == t.root() || y == t.root()) && (t.parent(away) == 1 || away == 1);
  if (x == y || !(siblings || at_root)) throw TreeError("collapse_cherry: leaves do not form a cherry");
  std::vector<PhyloTree::RawNode> sketch(static_cast<std::size_t>(t.node_count()));
  for (int v = 0; v < t.node_count(); ++v) {
    auto& rn = sketch[static_cast<std::size_t>(v)];
    rn.taxon = t.node(v).taxon;
    for (int c : t.node(v).child)
      if (c >= 0 && c != y) rn.children.push_back(c);
  }
  sketch[static_cast<std::size_t>(x)].taxon = keep | drop;
  if (y == t.root()) {
    // The stored root leaf goes away; hang the tree from x instead.
    std::vector<std::vector<int>> adj(sketch.size());
    std::vector<TaxonSet> taxon(sketch.size());
    for (std::size_t v = 1; v < sketch.size(); ++v) {
      taxon[v] = sketch[v].taxon;
      const int p = t.parent(static_cast<int>(v));
      if (p > 0) {
        adj[v].push_back(p);
        adj[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
      }
    }
    return PhyloTree::from_adjacency(adj, taxon);
  }
  sketch[static_cast<std::size_t>(y)].taxon = TaxonSet{};
  return PhyloTree::from_sketch(t.kind(), sketch, 0);
}

std::vector<TaxonSet> pendant_sets(const PhyloTree& t) {
  std::vector<TaxonSet> out;
  for (int v = 1; v < t.node_count(); ++v) {
    out.push_back(t.cluster(v));
    if (!t.rooted()) out.push_back(t.taxa() - t.cluster(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace maf
