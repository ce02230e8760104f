#include "maf/search.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "maf/oracle.hpp"
#include "maf/rmaf.hpp"
#include "maf/split_core.hpp"
#include "maf/umaf.hpp"

namespace maf {

const char* to_string(Algo algo) { return algo == Algo::improved ? "improved" : "baseline"; }

void SearchStats::merge(const SearchStats& o) {
  nodes += o.nodes;
  for (const auto& [rule, n] : o.fired) fired[rule] += n;
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  for (const auto& [rule, charges] : o.first_charges) first_charges.emplace(rule, charges);
}

Child cut_child(const PhyloTree& cut_side, const PhyloTree& keep_side, const std::vector<int>& edges,
                const std::vector<TaxonSet>& finalized) {
  Child c;
  c.instance.host = keep_side;
  c.instance.forest.kind = keep_side.kind();
  c.instance.forest.components = cut_tree(cut_side, edges);
  c.instance.finalized = finalized;
  c.charge = static_cast<int>(c.instance.forest.components.size()) - 1;
  return c;
}

Child cut_component(const Instance& inst, std::size_t comp, const std::vector<int>& edges) {
  Child c;
  c.instance = inst;
  auto& comps = c.instance.forest.components;
  auto pieces = cut_tree(comps[comp], edges);
  c.charge = static_cast<int>(pieces.size()) - 1;
  comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(comp));
  comps.insert(comps.end(), std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()));
  return c;
}

int edge_with_side(const PhyloTree& t, const TaxonSet& side) {
  for (int v = 1; v < t.node_count(); ++v) {
    if (t.cluster(v) == side) return v;
    if (!t.rooted() && t.taxa() - t.cluster(v) == side) return v;
  }
  return -1;
}

int live_count(const PhyloTree& t, const TaxonSet& s) {
  int n = 0;
  for (int leaf : t.leaves())
    if (t.node(leaf).taxon.subset_of(s)) ++n;
  return n;
}

int leaf_cut(const PhyloTree& t, const TaxonSet& taxon) { return t.leaf_edge(t.leaf_of(taxon)); }

std::optional<std::string> audit_profile(const Branching& b) {
  if (b.profile.empty()) return std::nullopt;
  bool ok = b.profile.size() == b.children.size();
  for (std::size_t i = 0; ok && i < b.children.size(); ++i)
    ok = b.children[i].charge >= b.profile[i].lo && b.children[i].charge <= b.profile[i].hi;
  if (ok) return std::nullopt;
  std::ostringstream os;
  os << b.rule << ": charges (";
  for (std::size_t i = 0; i < b.children.size(); ++i) os << (i ? "," : "") << b.children[i].charge;
  os << ")";
  return os.str();
}

bool forest_is_agreement(const Instance& inst) {
  for (const auto& comp : inst.forest.components)
    if (!same_topology(restrict_tree(inst.host, comp.taxa()), comp)) return false;
  return embeddings_disjoint(inst.host, inst.forest.blocks());
}

SolveResult with_blocks(int cuts, std::vector<TaxonSet> finalized, const std::vector<TaxonSet>& more) {
  finalized.insert(finalized.end(), more.begin(), more.end());
  return SolveResult{cuts, std::move(finalized)};
}

SolveResult Solver::solve(const PhyloTree& t1, const PhyloTree& t2, int k) {
  if (t1.kind() != kind_ || t2.kind() != kind_) throw std::invalid_argument("tree kind does not match solver");
  if (t1.taxa() != t2.taxa()) throw std::invalid_argument("trees are over different taxa");
  if (k < 0) return SolveResult::infeasible();
  SolveResult r = algo_ == Algo::improved ? solve_pair(t1, t2, k) : baseline(Instance::tree_pair(t1, t2, k), k);
  if (!r.feasible()) return r;
  std::sort(r.forest.begin(), r.forest.end());
  if (static_cast<int>(r.forest.size()) != *r.cuts + 1 || !is_agreement_forest(t1, t2, r.forest))
    throw std::logic_error("search produced an invalid witness forest");
  return r;
}

SolveResult Solver::solve_min(const PhyloTree& t1, const PhyloTree& t2, int max_k) {
  for (int k = 0; k <= max_k; ++k)
    if (auto r = solve(t1, t2, k); r.feasible()) return r;
  return SolveResult::infeasible();
}

SolveResult Solver::solve_pair(const PhyloTree& host, const PhyloTree& other, int k) {
  Instance inst = Instance::tree_pair(host, other, k);
  tidy(inst);
  if (inst.host.empty()) return with_blocks(0, inst.finalized, {});
  const auto& comps = inst.forest.components;
  if (comps.size() == 1 && same_topology(inst.host, comps.front()))
    return with_blocks(0, inst.finalized, {comps.front().taxa()});
  if (k == 0) return SolveResult::infeasible();
  auto b = improved_step(inst, k);
  if (!b) throw std::logic_error("no reduction or branching rule applies");
  return branch(std::move(*b), k);
}

std::optional<Branching> Solver::improved_step(const Instance& inst, int k) {
  RuleEnv env{k, [this](const PhyloTree& a, const PhyloTree& b, int kk) { return solve_pair(a, b, kk); }};
  return kind_ == TreeKind::unrooted ? umaf_step(inst, env) : rmaf_step(inst, env);
}

void Solver::post_whidden_t2(Child& child) {
  tidy(child.instance);
  if (auto follow = whidden_t2_followup(child.instance)) {
    stats_.record(follow->rule);
    auto& next = follow->children.front();
    child.charge += next.charge;
    child.instance = std::move(next.instance);
  }
}

SolveResult Solver::branch(Branching b, int k) {
  ++stats_.nodes;
  stats_.record(b.rule);
  if (!stats_.first_charges.contains(b.rule)) {
    auto& charges = stats_.first_charges[b.rule];
    for (const auto& c : b.children) charges.push_back(c.charge);
  }
  if (auto v = audit_profile(b)) stats_.violations.push_back(*v);
  if (b.direct) return std::move(*b.direct);

  SolveResult best;
  for (auto& child : b.children) {
    if (child.after_whidden_t2) post_whidden_t2(child);
    const int cap = best.feasible() ? std::min(k, *best.cuts - 1) : k;
    const int limit = cap - child.charge;
    if (limit < 0) continue;
    auto r = algo_ == Algo::improved ? process_forest(std::move(child.instance), limit)
                                     : baseline(std::move(child.instance), limit);
    if (r.feasible()) best = SolveResult{*r.cuts + child.charge, std::move(r.forest)};
  }
  return best;
}

SolveResult Solver::process_forest(Instance inst, int k) {
  tidy(inst);
  if (inst.host.empty()) return with_blocks(0, inst.finalized, {});
  const auto overlap = overlap_analysis(inst);
  if (overlap.disjoint) return recursion_rule(inst, k);
  if (k == 0) return SolveResult::infeasible();

  inst.budget = k;
  auto split = split_branches(inst, overlap.pairs.front());
  if (!split.cores_within_half) stats_.violations.push_back("split: core weight above 1/2");
  Branching b{"split", {}, {}, std::nullopt};
  for (auto& c : split.children) b.children.push_back(Child{std::move(c.instance), c.charge, false});
  return branch(std::move(b), k);
}

SolveResult Solver::recursion_rule(const Instance& inst, int k) {
  const int depth = kind_ == TreeKind::unrooted ? 0 : 1;
  const auto& comps = inst.forest.components;
  const std::size_t q = comps.size();
  std::vector<PhyloTree> hosts;
  std::vector<SolveResult> part(q);
  std::vector<int> lower(q);
  int total_lower = 0;
  for (std::size_t i = 0; i < q; ++i) {
    hosts.push_back(restrict_tree(inst.host, comps[i].taxa()));
    part[i] = depth_limited_solve(hosts[i], comps[i], depth);
    lower[i] = part[i].feasible() ? *part[i].cuts : depth + 1;
    total_lower += lower[i];
  }
  if (total_lower > k) return SolveResult::infeasible();
  bool recursed = false;
  for (std::size_t i = 0; i < q; ++i) {
    if (part[i].feasible()) continue;
    const int budget = k - (total_lower - lower[i]);
    if (budget < depth + 1) return SolveResult::infeasible();
    if (!recursed) stats_.record("recursion");
    recursed = true;
    part[i] = solve_pair(hosts[i], comps[i], budget);
    if (!part[i].feasible()) return SolveResult::infeasible();
    total_lower += *part[i].cuts - lower[i];
    lower[i] = *part[i].cuts;
    if (total_lower > k) return SolveResult::infeasible();
  }
  SolveResult out{total_lower, inst.finalized};
  for (const auto& p : part) out.forest.insert(out.forest.end(), p.forest.begin(), p.forest.end());
  return out;
}

SolveResult Solver::baseline(Instance inst, int k) {
  tidy(inst);
  if (inst.host.empty()) return with_blocks(0, inst.finalized, {});
  if (forest_is_agreement(inst)) return with_blocks(0, inst.finalized, inst.forest.blocks());
  if (k == 0) return SolveResult::infeasible();
  auto b = kind_ == TreeKind::unrooted ? chen_step(inst) : whidden_step(inst);
  return branch(std::move(b), k);
}

}  // namespace maf
