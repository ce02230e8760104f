#pragma once

#include <optional>

#include "maf/search.hpp"

namespace maf {

// Baseline step for rooted instances (Whidden's cherry rules).
Branching whidden_step(const Instance& inst);

// Improved step on a tree-tree instance.
std::optional<Branching> rmaf_step(const Instance& tt, const RuleEnv& env);

// Rules tried on the double-cut child of the t=2 branching, after tidy-up.
// Returns a single-child branching when one applies.
std::optional<Branching> whidden_t2_followup(const Instance& inst);

SolveResult solve_rmaf(const PhyloTree& t1, const PhyloTree& t2, int k, Algo algo, SearchStats& stats);

}  // namespace maf
