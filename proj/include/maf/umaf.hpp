#pragma once

#include <optional>

#include "maf/search.hpp"

namespace maf {

// Baseline step for unrooted instances: branch on the first cherry of the
// host (different components, or Chen's path rules).
Branching chen_step(const Instance& inst);

// Improved step on a tree-tree instance: subtree reduction, three-block
// branching, then the strengthened Chen variants.
std::optional<Branching> umaf_step(const Instance& tt, const RuleEnv& env);

SolveResult solve_umaf(const PhyloTree& t1, const PhyloTree& t2, int k, Algo algo, SearchStats& stats);

}  // namespace maf
