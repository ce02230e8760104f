#include "maf/rmaf.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

#include "maf/fitch.hpp"
#include "maf/oracle.hpp"

namespace maf {
namespace {

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

bool homeomorphic_on(const PhyloTree& p, const PhyloTree& q, const TaxonSet& s) {
  return same_topology(restrict_tree(p, s), restrict_tree(q, s));
}

int sibling(const PhyloTree& t, int v) {
  const auto& ch = t.node(t.parent(v)).child;
  return ch[0] == v ? ch[1] : ch[0];
}

bool are_siblings(const PhyloTree& t, const TaxonSet& x, const TaxonSet& y) {
  const int u = lca(t, x), v = lca(t, y);
  return u != t.root() && v != t.root() && t.parent(u) == t.parent(v);
}

// Arcs hanging off the path from `from` up to (not including) `top`.
std::vector<int> hanging_arcs(const PhyloTree& t, int from, int top) {
  std::vector<int> out;
  for (int u = from; t.parent(u) != top && t.parent(u) >= 0; u = t.parent(u)) out.push_back(sibling(t, u));
  return out;
}

Branching whidden_t2(const Candidate& c, const std::vector<TaxonSet>& fin, const char* rule) {
  const auto one = ChargeRange::exactly(1);
  Branching br{rule, {}, {one, one, ChargeRange::exactly(2)}, std::nullopt};
  br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.a)}, fin));
  br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.b)}, fin));
  br.children.push_back(cut_child(*c.q, *c.p, c.path.edges, fin));
  br.children.back().after_whidden_t2 = true;
  return br;
}

// X1 = {c} sibling to a in q (or X2 sibling to b, with a and b swapped).
std::optional<Branching> unify_rule(const Candidate& c, const std::vector<TaxonSet>& fin) {
  const PhyloTree& p = *c.p;
  const PhyloTree& q = *c.q;
  const auto& x = c.path.beyond;
  TaxonSet a = c.a, single;
  if (live_count(q, x[0]) == 1 && are_siblings(q, x[0], c.a)) {
    single = x[0];
  } else if (live_count(q, x[1]) == 1 && are_siblings(q, x[1], c.b)) {
    a = c.b;
    single = x[1];
  } else {
    return std::nullopt;
  }
  const int top = lca(p, a | single);
  auto arcs = hanging_arcs(p, p.leaf_of(a), top);
  const auto more = hanging_arcs(p, p.leaf_of(single), top);
  arcs.insert(arcs.end(), more.begin(), more.end());
  if (arcs.size() < 2) throw std::logic_error("unify: fewer than two arcs hang off the path");

  Branching br{"unify", {}, {ChargeRange::exactly(2), ChargeRange::exactly(1), ChargeRange::at_least(2)},
               std::nullopt};
  br.children.push_back(cut_child(q, p, c.path.edges, fin));
  br.children.push_back(cut_child(q, p, {leaf_cut(q, a)}, fin));
  br.children.push_back(cut_child(p, q, arcs, fin));
  return br;
}

Branching pair_hitting(const Candidate& c, const TaxonSet& x, const TaxonSet& y, const std::vector<TaxonSet>& fin,
                       const char* rule) {
  const PhyloTree& p = *c.p;
  const PhyloTree& q = *c.q;
  Branching br{rule, {}, std::vector<ChargeRange>(5, ChargeRange::exactly(2)), std::nullopt};
  br.children.push_back(cut_child(q, p, c.path.edges, fin));
  for (const auto& u : {x, y})
    for (const auto& v : {c.a, c.b}) br.children.push_back(cut_child(q, p, {leaf_cut(q, u), leaf_cut(q, v)}, fin));
  return br;
}

std::vector<TaxonSet> live_taxa(const PhyloTree& t, const TaxonSet& s) {
  std::vector<TaxonSet> out;
  for (int leaf : t.leaves())
    if (t.node(leaf).taxon.subset_of(s)) out.push_back(t.node(leaf).taxon);
  return out;
}

SolveResult exact_small(const PhyloTree& p, const PhyloTree& q, const TaxonSet& s) {
  auto r = brute_maf(restrict_tree(p, s), restrict_tree(q, s), 2);
  if (!r.feasible()) throw std::logic_error("twohomeoroot: side instance needs more than two cuts");
  return r;
}

// X_j forms a common split: solve it on its own, with and without a
// representative of the rest, and decide whether one block may straddle.
SolveResult common_split(const Candidate& c, const TaxonSet& xj, const TaxonSet& outside, const Instance& tt,
                         const RuleEnv& env) {
  const PhyloTree& p = *c.p;
  const PhyloTree& q = *c.q;
  const int k = env.budget;
  const auto y = env.solve_pair(restrict_tree(p, xj), restrict_tree(q, xj), k - 1);
  if (!y.feasible()) return SolveResult::infeasible();
  const TaxonSet with_rep = xj | outside;
  const auto yr = env.solve_pair(restrict_tree(p, with_rep), restrict_tree(q, with_rep), k - 1);
  const TaxonSet rest = p.taxa() - xj;
  const auto z = exact_small(p, q, rest);

  SolveResult out;
  auto finish = [&](int cuts) {
    if (cuts > k) return SolveResult::infeasible();
    out.cuts = cuts;
    out.forest.insert(out.forest.begin(), tt.finalized.begin(), tt.finalized.end());
    return out;
  };
  auto separate = [&] {
    out.forest = y.forest;
    out.forest.insert(out.forest.end(), z.forest.begin(), z.forest.end());
    return finish(*y.cuts + *z.cuts + 1);
  };
  if (!yr.feasible() || *y.cuts < *yr.cuts) return separate();

  const TaxonSet g = live_taxa(p, xj).front();
  const auto zg = exact_small(p, q, rest | g);
  if (*z.cuts < *zg.cuts) return separate();

  TaxonSet merged;
  for (const auto& blk : yr.forest) {
    if (blk.intersects(outside)) merged |= blk - outside;
    else out.forest.push_back(blk);
  }
  for (const auto& blk : zg.forest) {
    if (blk.intersects(g)) merged |= blk - g;
    else out.forest.push_back(blk);
  }
  out.forest.push_back(merged);
  return finish(*y.cuts + *z.cuts);
}

struct Incidence {
  bool incoming = false;
  std::vector<int> outgoing;
};

Incidence incidence(const PhyloTree& t, const TaxonSet& s) {
  const auto on = embedding_vertices(t, s);
  Incidence inc;
  inc.incoming = lca(t, s) != t.root();
  for (int v = 0; v < t.node_count(); ++v) {
    if (!on[static_cast<std::size_t>(v)] || t.is_leaf(v)) continue;
    for (int w : t.node(v).child)
      if (!on[static_cast<std::size_t>(w)]) inc.outgoing.push_back(w);
  }
  return inc;
}

// Two homeomorphic blocks out of X1, X2 and S+{a,b}, all disjoint in p.
std::optional<Branching> twohomeoroot_rule(const Candidate& c, const Instance& tt, const RuleEnv& env) {
  const PhyloTree& p = *c.p;
  const PhyloTree& q = *c.q;
  const auto& fin = tt.finalized;
  const std::array<TaxonSet, 2> x{c.path.beyond[0], c.path.beyond[1]};
  const TaxonSet y = p.taxa() - x[0] - x[1];
  if (!embeddings_disjoint(p, {x[0], x[1], y})) return std::nullopt;
  const std::array<bool, 2> hx{homeomorphic_on(p, q, x[0]), homeomorphic_on(p, q, x[1])};
  const bool hy = homeomorphic_on(p, q, y);
  const int count = hx[0] + hx[1] + hy;
  if (count < 2) return std::nullopt;
  if (count == 3) return whidden_t2(c, fin, "twohomeoroot_all_homeomorphic");

  for (std::size_t j = 0; j < 2; ++j)
    if (hx[j] && live_count(p, x[j]) >= 3) {
      Branching br{"twohomeoroot_case1", {}, {ChargeRange::exactly(2)}, std::nullopt};
      br.children.push_back(cut_child(q, p, c.path.edges, fin));
      return br;
    }
  for (std::size_t j = 0; j < 2; ++j)
    if (hx[j] && live_count(p, x[j]) == 2) {
      const auto pq = live_taxa(p, x[j]);
      return pair_hitting(c, pq[0], pq[1], fin, "twohomeoroot_case2");
    }

  const std::size_t j = hx[0] ? 1 : 0;
  const std::size_t i = 1 - j;
  if (!hy || hx[j] || live_count(p, x[i]) != 1)
    throw std::logic_error("twohomeoroot: unexpected block configuration");
  const TaxonSet xj = x[j], cc = x[i];

  for (const auto& [u, v] : cherries(restrict_tree(p, y)))
    if (!u.intersects(c.a | c.b) && !v.intersects(c.a | c.b))
      return pair_hitting(c, u, v, fin, "twohomeoroot_case3_cherry");

  const auto inc = incidence(p, xj);
  const std::size_t arcs = inc.outgoing.size() + (inc.incoming ? 1 : 0);
  if (arcs == 1) {
    Branching br{"twohomeoroot_case3_1", {}, {}, common_split(c, xj, cc, tt, env)};
    return br;
  }
  if (arcs != 2) throw std::logic_error("twohomeoroot: more than two arcs at the non-homeomorphic block");

  TaxonSet a = c.a, b = c.b;
  if (!are_siblings(q, xj, a)) {
    if (!are_siblings(q, xj, b)) throw std::logic_error("twohomeoroot: block is not sibling to the cherry");
    std::swap(a, b);
  }
  std::vector<TaxonSet> out;
  for (int w : inc.outgoing) out.push_back(p.cluster(w));
  const auto two = ChargeRange::exactly(2), one = ChargeRange::exactly(1);

  if (inc.incoming && out.size() == 1 && out[0] == cc) {
    Branching br{"twohomeoroot_case3_2_1", {}, {two, one}, std::nullopt};
    br.children.push_back(cut_child(q, p, c.path.edges, fin));
    br.children.push_back(cut_child(q, p, {leaf_cut(q, a)}, fin));
    return br;
  }
  if (inc.incoming && out.size() == 1 && out[0] == y) {
    const int top = lca(p, xj);
    if (p.parent(top) != p.root() || p.cluster(sibling(p, top)) != cc)
      throw std::logic_error("twohomeoroot: unexpected placement of the single taxon");
    Branching br{"twohomeoroot_case3_2_3", {}, {two, one}, std::nullopt};
    br.children.push_back(cut_child(q, p, c.path.edges, fin));
    br.children.push_back(cut_child(q, p, {leaf_cut(q, b)}, fin));
    return br;
  }
  if (!inc.incoming && out.size() == 2 && ((out[0] == cc && out[1] == y) || (out[0] == y && out[1] == cc))) {
    Branching br{"twohomeoroot_case3_2_2", {}, {two, one}, std::nullopt};
    br.children.push_back(cut_child(q, p, c.path.edges, fin));
    br.children.push_back(cut_child(q, p, {leaf_cut(q, b)}, fin));
    const int top = lca(p, cc | b);
    const int cut_a = leaf_cut(p, a);
    const auto toward_c = hanging_arcs(p, p.leaf_of(cc), top);
    std::vector<int> toward_b;
    for (int w : hanging_arcs(p, p.leaf_of(b), top))
      if (w != cut_a) toward_b.push_back(w);
    if (toward_c.size() >= 2) {
      for (std::size_t m = 0; m < 2; ++m) {
        br.children.push_back(cut_child(p, q, {cut_a, toward_c[m]}, fin));
        br.profile.push_back(two);
      }
    } else if (!toward_b.empty()) {
      toward_b.push_back(cut_a);
      br.children.push_back(cut_child(p, q, toward_b, fin));
      br.profile.push_back(ChargeRange::at_least(2));
    } else if (top != p.root()) {
      br.children.push_back(cut_child(p, q, {cut_a, top}, fin));
      br.profile.push_back(two);
    } else {
      throw std::logic_error("twohomeoroot: no arc to cut in the third branch");
    }
    return br;
  }
  throw std::logic_error("twohomeoroot: unexpected arcs at the non-homeomorphic block");
}

}  // namespace

Branching whidden_step(const Instance& inst) {
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
  if (path.t == 1) return Branching{"whidden_t1", {cut_component(inst, ci, path.edges)}, {one}, std::nullopt};
  Branching br{"whidden", {}, {one, one, ChargeRange::exactly(path.t)}, std::nullopt};
  br.children.push_back(cut_component(inst, ci, {leaf_cut(comp, a)}));
  br.children.push_back(cut_component(inst, ci, {leaf_cut(comp, b)}));
  br.children.push_back(cut_component(inst, ci, path.edges));
  return br;
}

std::optional<Branching> whidden_t2_followup(const Instance& inst) {
  const auto& comps = inst.forest.components;
  if (inst.host.empty() || comps.size() < 2) return std::nullopt;
  const auto overlap = overlap_analysis(inst);
  if (overlap.disjoint) return std::nullopt;
  const std::size_t n = comps.size();
  std::vector<bool> homeo(n);
  for (std::size_t i = 0; i < n; ++i) homeo[i] = same_topology(restrict_tree(inst.host, comps[i].taxa()), comps[i]);

  auto shared = [&](std::size_t u, std::size_t v) -> const std::vector<int>* {
    for (const auto& pr : overlap.pairs)
      if ((pr.first == u && pr.second == v) || (pr.first == v && pr.second == u)) return &pr.shared_edges;
    return nullptr;
  };

  if (n == 3) {
    std::array<std::size_t, 3> role{0, 1, 2};
    do {
      const auto [ia, ib, ic] = role;
      if (!homeo[ia] || homeo[ib] || !homeo[ic]) continue;
      if (shared(ia, ic) || shared(ib, ic)) continue;
      const auto* ab = shared(ia, ib);
      if (!ab || ab->size() != 1) continue;
      const TaxonSet bset = comps[ib].taxa();
      const TaxonSet b1 = bset & inst.host.cluster(ab->front());
      const TaxonSet b2 = bset - b1;
      int v = edge_with_side(comps[ib], b1);
      if (v < 0) v = edge_with_side(comps[ib], b2);
      if (v < 0) continue;
      return Branching{"weirdoverlap", {cut_component(inst, ib, {v})}, {ChargeRange::exactly(1)}, std::nullopt};
    } while (std::next_permutation(role.begin(), role.end()));
  }

  std::vector<std::size_t> group_of(n);
  std::iota(group_of.begin(), group_of.end(), std::size_t{0});
  auto find = [&](std::size_t u) {
    while (group_of[u] != u) u = group_of[u] = group_of[group_of[u]];
    return u;
  };
  for (const auto& pr : overlap.pairs) group_of[find(pr.first)] = find(pr.second);
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == find(g)) members.push_back(i);
    if (members.front() != g || members.size() < 2) continue;
    bool all_homeo = true;
    for (auto i : members) all_homeo = all_homeo && homeo[i];
    if (!all_homeo) continue;

    TaxonSet joined;
    StateLabeling states;
    for (auto i : members) {
      joined |= comps[i].taxa();
      for (const auto& tx : comps[i].taxon_list()) states[tx] = static_cast<int>(i);
    }
    const auto sub = restrict_tree(inst.host, joined);
    const auto fitch = fitch_min_cuts(sub, states);
    const auto pieces = split_by_edges(sub, fitch.cut);

    Child child;
    child.instance.forest.kind = inst.forest.kind;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) != find(g)) child.instance.forest.components.push_back(comps[i]);
    const TaxonSet rest = inst.host.taxa() - joined;
    child.instance.host = rest.empty() ? PhyloTree(inst.host.kind()) : restrict_tree(inst.host, rest);
    child.instance.finalized = inst.finalized;
    child.instance.finalized.insert(child.instance.finalized.end(), pieces.begin(), pieces.end());
    child.charge = static_cast<int>(pieces.size() - members.size());
    return Branching{"fitch", {std::move(child)}, {ChargeRange::at_least(1)}, std::nullopt};
  }
  return std::nullopt;
}

std::optional<Branching> rmaf_step(const Instance& tt, const RuleEnv& env) {
  const auto cands = candidates(tt);
  const auto& fin = tt.finalized;
  const auto one = ChargeRange::exactly(1);
  for (const auto& c : cands)
    if (c.path.t == 1) return Branching{"whidden_t1", {cut_child(*c.q, *c.p, c.path.edges, fin)}, {one}, std::nullopt};
  for (const auto& c : cands) {
    if (c.path.t < 3) continue;
    Branching br{"whidden_t_ge3", {}, {one, one, ChargeRange::exactly(c.path.t)}, std::nullopt};
    br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.a)}, fin));
    br.children.push_back(cut_child(*c.q, *c.p, {leaf_cut(*c.q, c.b)}, fin));
    br.children.push_back(cut_child(*c.q, *c.p, c.path.edges, fin));
    return br;
  }
  for (const auto& c : cands)
    if (c.path.t == 2)
      if (auto br = unify_rule(c, fin)) return br;
  for (const auto& c : cands)
    if (c.path.t == 2)
      if (auto br = twohomeoroot_rule(c, tt, env)) return br;
  for (const auto& c : cands)
    if (c.path.t == 2) return whidden_t2(c, fin, "whidden_t2");
  return std::nullopt;
}

SolveResult solve_rmaf(const PhyloTree& t1, const PhyloTree& t2, int k, Algo algo, SearchStats& stats) {
  return Solver(TreeKind::rooted, algo, stats).solve(t1, t2, k);
}

}  // namespace maf
