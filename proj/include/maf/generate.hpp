#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "maf/phylo_tree.hpp"

namespace maf {

// mt19937_64 with a bounded draw that does not depend on the standard
// library's distribution implementation, so seeds reproduce everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

struct GeneratedPair {
  TaxonTable table;
  PhyloTree first;
  PhyloTree second;
};

// Labels "t01", "t02", ... padded so lexicographic order is numeric order.
std::vector<std::string> generated_labels(std::size_t n);

// Uniform random binary tree on n taxa by leaf insertion, and a copy with
// `moves` random subtree prune-and-regraft moves applied. Unrooted pairs are
// the rooted ones with the root suppressed. Throws std::invalid_argument for
// n < 2 or n above the taxon capacity.
GeneratedPair generate_pair(std::size_t n, int moves, std::uint64_t seed, TreeKind kind);

}  // namespace maf
