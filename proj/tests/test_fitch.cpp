#include "doctest.h"
#include "maf/fitch.hpp"
#include <random>
#include <set>

#include "support.hpp"

using namespace maf;
using maf::test::taxa;

TEST_SUITE("fitch") {

TEST_CASE("small labelings") {
  TaxonTable table;
  const auto t = parse_newick("((a,b),(c,d));", TreeKind::rooted, table);
  StateLabeling crossed{{taxa(table, {"a"}), 1}, {taxa(table, {"c"}), 1}, {taxa(table, {"b"}), 2}, {taxa(table, {"d"}), 2}};
  const auto r = fitch_min_cuts(t, crossed);
  CHECK(r.changes == 2);
  CHECK(r.changes == maf::test::min_monochrome_cut(t, crossed));
  CHECK(static_cast<int>(r.cut.size()) == r.changes);

  StateLabeling flat;
  for (const auto& tx : t.taxon_list()) flat[tx] = 0;
  CHECK(fitch_min_cuts(t, flat).changes == 0);

  const auto cherry = parse_newick("(a,b);", TreeKind::rooted, table);
  CHECK(fitch_min_cuts(cherry, {{taxa(table, {"a"}), 1}, {taxa(table, {"b"}), 2}}).changes == 1);

  CHECK_THROWS_AS(fitch_min_cuts(t, {{taxa(table, {"a"}), 1}}), std::invalid_argument);
}

TEST_CASE("cuts leave single-state pieces") {
  for (int n = 2; n <= 8; ++n) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    for (const auto& shape : maf::test::rooted_shapes(n)) {
      TaxonTable table;
      const auto t = parse_newick(shape, TreeKind::rooted, table);
      StateLabeling states;
      for (const auto& tx : t.taxon_list()) states[tx] = static_cast<int>(rng() % 3);
      const auto r = fitch_min_cuts(t, states);
      for (const auto& piece : split_by_edges(t, r.cut)) {
        std::set<int> seen;
        for (const auto& tx : t.taxon_list())
          if (tx.subset_of(piece)) seen.insert(states.at(tx));
        CHECK(seen.size() == 1);
      }
    }
  }
}

}  // TEST_SUITE
