#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maf/phylo_tree.hpp"

namespace maf {

class NewickError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Labelled tree as read from text, before taxa are mapped to indices.
struct ParsedTree {
  std::vector<std::vector<int>> children;
  std::vector<std::string> label;  // leaves only; internal labels dropped
  int root = 0;

  std::vector<std::string> leaf_labels() const;
};

// Syntax only: balanced groups, ';' terminator, non-empty unique leaf labels.
// Branch lengths and internal labels are skipped.
ParsedTree parse_newick_raw(std::string_view text);

// Builds the tree over `table`'s indices, checking the degree rules for `kind`.
PhyloTree to_tree(const ParsedTree& parsed, TreeKind kind, const TaxonTable& table);

// Convenience: one tree with its own taxon table.
PhyloTree parse_newick(std::string_view text, TreeKind kind, TaxonTable& table);

// Non-empty, non-comment lines of a Newick file.
std::vector<std::string> read_newick_file(const std::string& path);

// Canonical text: children ordered by smallest taxon. Composite taxa are
// written as their labels joined with '+'.
std::string write_newick(const PhyloTree& t, const TaxonTable& table);

}  // namespace maf
