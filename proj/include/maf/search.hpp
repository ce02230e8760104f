#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maf/forest.hpp"

namespace maf {

enum class Algo { improved, baseline };

const char* to_string(Algo algo);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::map<std::string, std::uint64_t> fired;
  std::vector<std::string> violations;
  // Child charges of the first firing of each branching rule.
  std::map<std::string, std::vector<int>> first_charges;

  void merge(const SearchStats& o);
  void record(const std::string& rule) { ++fired[rule]; }
};

struct Child {
  Instance instance;  // budget field unused; `charge` is what the child costs
  int charge = 0;
  bool after_whidden_t2 = false;
};

// Allowed charge range for one child of a rule.
struct ChargeRange {
  int lo = 0;
  int hi = INT_MAX;
  static ChargeRange exactly(int c) { return {c, c}; }
  static ChargeRange at_least(int c) { return {c, INT_MAX}; }
};

// One rule firing: the children it spawns, the recurrence shape it promises,
// or an outright answer for rules that solve sub-problems themselves.
struct Branching {
  std::string rule;
  std::vector<Child> children;
  std::vector<ChargeRange> profile;
  std::optional<SolveResult> direct;
};

// Children whose cut set is `edges` in `cut_side`; `keep_side` stays whole and
// becomes the host. The charge is the number of pieces added.
Child cut_child(const PhyloTree& cut_side, const PhyloTree& keep_side, const std::vector<int>& edges,
                const std::vector<TaxonSet>& finalized);

// Child of a forest instance in which component `comp` is cut along `edges`.
Child cut_component(const Instance& inst, std::size_t comp, const std::vector<int>& edges);

// Lower node of the edge with `side` on one side of it, -1 if none.
int edge_with_side(const PhyloTree& t, const TaxonSet& side);
// Number of live taxa (leaves) of t inside s.
int live_count(const PhyloTree& t, const TaxonSet& s);
int leaf_cut(const PhyloTree& t, const TaxonSet& taxon);

// Compares children charges against the promised profile; returns a message
// on mismatch.
std::optional<std::string> audit_profile(const Branching& b);

using PairSolver = std::function<SolveResult(const PhyloTree&, const PhyloTree&, int)>;

struct RuleEnv {
  int budget = 0;
  PairSolver solve_pair;
};

class Solver {
 public:
  Solver(TreeKind kind, Algo algo, SearchStats& stats) : kind_(kind), algo_(algo), stats_(stats) {}

  // Minimum cuts turning the pair into an agreement forest if at most k.
  SolveResult solve(const PhyloTree& t1, const PhyloTree& t2, int k);

  // Iterative deepening k = 0, 1, ... up to max_k.
  SolveResult solve_min(const PhyloTree& t1, const PhyloTree& t2, int max_k);

 private:
  SolveResult solve_pair(const PhyloTree& host, const PhyloTree& other, int k);
  SolveResult branch(Branching b, int k);
  SolveResult process_forest(Instance inst, int k);
  SolveResult recursion_rule(const Instance& inst, int k);
  SolveResult baseline(Instance inst, int k);
  std::optional<Branching> improved_step(const Instance& inst, int k);
  void post_whidden_t2(Child& child);

  TreeKind kind_;
  Algo algo_;
  SearchStats& stats_;
};

// All blocks of the instance's forest are homeomorphic to the host's
// restriction and pairwise disjoint in the host.
bool forest_is_agreement(const Instance& inst);

SolveResult with_blocks(int cuts, std::vector<TaxonSet> finalized, const std::vector<TaxonSet>& more);

}  // namespace maf
