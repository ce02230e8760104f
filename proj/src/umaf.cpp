#include "maf/umaf.hpp"

#include <unordered_set>

namespace maf {
namespace {

// A cherry of `p` together with its path in `q`; children cut `q`.
struct Candidate {
  const PhyloTree* p = nullptr;
  const PhyloTree* q = nullptr;
  TaxonSet a, b;
  CherryPath path;
};

std::vector<Candidate> candidates(const Instance& tt) {
  const PhyloTree& host = tt.host;
  const PhyloTree& other = tt.forest.components.front();
  std::vector<Candidate> out;
  for (auto [p, q] : {std::pair{&host, &other}, std::pair{&other, &host}})
    for (const auto& [a, b] : cherries(*p)) out.push_back({p, q, a, b, path_edges(*q, a, b)});
  return out;
}

std::vector<int> all_but(const std::vector<int>& edges, std::size_t skip) {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (i != skip) out.push_back(edges[i]);
  return out;
}

// Cut a, cut b, and every way of keeping one pendant set on the path,
// except the kept set `drop` when given.
Branching chen_general(const Candidate& c, const std::vector<TaxonSet>& fin, const char* rule,
                       std::optional<std::size_t> drop = std::nullopt) {
  const auto& e = c.path.edges;
  const int t = c.path.t;
  Branching br{rule, {}, {}, std::nullopt};
  br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.a)}, fin));
  br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.b)}, fin));
  br.profile = {ChargeRange::exactly(1), ChargeRange::exactly(1)};
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (drop && *drop == j) continue;
    br.children.push_back(cut_child(*c.q, *c.p, all_but(e, j), fin));
    br.profile.push_back(ChargeRange::exactly(t - 1));
  }
  return br;
}

// X' pendant in both trees with identical restrictions: finalize it.
std::optional<Branching> subtree_rule(const Instance& tt) {
  const PhyloTree& host = tt.host;
  const PhyloTree& other = tt.forest.components.front();
  const TaxonSet all = host.taxa();
  for (const auto& s : pendant_sets(host)) {
    if (s == all || live_count(host, s) < 2 || !is_pendant(other, s)) continue;
    if (!same_topology(restrict_tree(host, s), restrict_tree(other, s))) continue;
    const TaxonSet rest = all - s;
    Child c;
    c.instance.host = restrict_tree(host, rest);
    c.instance.forest.kind = host.kind();
    c.instance.forest.components.push_back(restrict_tree(other, rest));
    c.instance.finalized = tt.finalized;
    c.instance.finalized.push_back(s);
    c.charge = 1;
    return Branching{"subtree", {std::move(c)}, {ChargeRange::exactly(1)}, std::nullopt};
  }
  return std::nullopt;
}

// Blocks A, B, C where B and C are sides of the second tree, A and C are
// sides of the first, B is not a side of the first and A not of the second.
std::optional<Branching> three_blocks_rule(const Instance& tt) {
  const PhyloTree& host = tt.host;
  const PhyloTree& other = tt.forest.components.front();
  const TaxonSet all = host.taxa();
  for (auto [t, u] : {std::pair{&host, &other}, std::pair{&other, &host}}) {
    const auto t_list = pendant_sets(*t);
    const std::unordered_set<TaxonSet, TaxonSetHash> t_sides(t_list.begin(), t_list.end());
    const auto u_list = pendant_sets(*u);
    const std::unordered_set<TaxonSet, TaxonSetHash> u_sides(u_list.begin(), u_list.end());
    for (const auto& b : u_list) {
      if (t_sides.count(b) || live_count(*u, b) < 2) continue;
      for (const auto& c : u_list) {
        if (c.intersects(b) || !t_sides.count(c)) continue;
        const TaxonSet a = all - b - c;
        if (a.empty() || !t_sides.count(a) || u_sides.count(a) || live_count(*u, a) < 2) continue;
        const std::vector<TaxonSet> blocks{a, b, c};
        if (!embeddings_disjoint(*t, blocks) || !embeddings_disjoint(*u, blocks)) continue;
        if (!same_topology(restrict_tree(*t, b), restrict_tree(*u, b))) continue;
        Branching br{"three_blocks", {}, {ChargeRange::exactly(1), ChargeRange::exactly(1)}, std::nullopt};
        br.children.push_back(cut_child(*t, *u, {edge_with_side(*t, a)}, tt.finalized));
        br.children.push_back(cut_child(*t, *u, {edge_with_side(*t, c)}, tt.finalized));
        return br;
      }
    }
  }
  return std::nullopt;
}

// Index of the pendant set whose keep-branch may be dropped when two of the
// three sets are single taxa and one of them sits next to the cherry.
std::optional<std::size_t> two_singletons(const Candidate& c) {
  const auto& x = c.path.beyond;
  std::vector<std::size_t> single;
  for (std::size_t i = 0; i < 3; ++i)
    if (live_count(*c.q, x[i]) == 1) single.push_back(i);
  if (single.size() != 2) return std::nullopt;
  const PhyloTree& p = *c.p;
  auto other_single = [&](std::size_t i) { return single[0] == i ? single[1] : single[0]; };
  if (single[0] == 0 && leaf_distance(p, p.leaf_of(c.a), p.leaf_of(x[0])) == 4) return other_single(0);
  if (single[1] == 2 && leaf_distance(p, p.leaf_of(c.b), p.leaf_of(x[2])) == 4) return other_single(2);
  return std::nullopt;
}

}  // namespace

Branching chen_step(const Instance& inst) {
  const auto [a, b] = cherries(inst.host).front();
  const int ca = inst.forest.component_of(a), cb = inst.forest.component_of(b);
  const auto& comps = inst.forest.components;
  const auto one = ChargeRange::exactly(1);
  if (ca != cb) {
    Branching br{"different_components", {}, {one, one}, std::nullopt};
    br.children.push_back(cut_component(inst, static_cast<std::size_t>(ca), {leaf_cut(comps[ca], a)}));
    br.children.push_back(cut_component(inst, static_cast<std::size_t>(cb), {leaf_cut(comps[cb], b)}));
    return br;
  }
  const auto ci = static_cast<std::size_t>(ca);
  const auto& comp = comps[ci];
  const auto path = path_edges(comp, a, b);
  Branching br{path.t == 2 ? "chen_t2" : "chen", {}, {}, std::nullopt};
  br.children.push_back(cut_component(inst, ci, {leaf_cut(comp, a)}));
  br.profile.push_back(one);
  if (path.t != 2) {
    br.children.push_back(cut_component(inst, ci, {leaf_cut(comp, b)}));
    br.profile.push_back(one);
  }
  for (std::size_t j = 0; j < path.edges.size(); ++j) {
    br.children.push_back(cut_component(inst, ci, all_but(path.edges, j)));
    br.profile.push_back(ChargeRange::exactly(path.t - 1));
  }
  return br;
}

std::optional<Branching> umaf_step(const Instance& tt, const RuleEnv&) {
  if (auto br = subtree_rule(tt)) return br;
  const auto cands = candidates(tt);
  const auto fin = tt.finalized;
  bool any_t2 = false;
  for (const auto& c : cands) any_t2 = any_t2 || c.path.t == 2;
  if (!any_t2)
    if (auto br = three_blocks_rule(tt)) return br;

  for (const auto& c : cands) {
    if (c.path.t != 2) continue;
    const auto one = ChargeRange::exactly(1);
    Branching br{"chen_t2_strong", {}, {one, one}, std::nullopt};
    br.children.push_back(cut_child(*c.q, *c.p, {c.path.edges[0]}, fin));
    br.children.push_back(cut_child(*c.q, *c.p, {c.path.edges[1]}, fin));
    return br;
  }
  for (const auto& c : cands)
    if (c.path.t >= 4) return chen_general(c, fin, "chen_t_ge4");
  for (const auto& c : cands)
    if (c.path.t == 3)
      if (auto drop = two_singletons(c)) return chen_general(c, fin, "chen_t3_two_singletons", drop);
  for (const auto& c : cands)
    if (c.path.t == 3) return chen_general(c, fin, "chen_t3");
  return std::nullopt;
}

SolveResult solve_umaf(const PhyloTree& t1, const PhyloTree& t2, int k, Algo algo, SearchStats& stats) {
  return Solver(TreeKind::unrooted, algo, stats).solve(t1, t2, k);
}

}  // namespace maf
