#include "doctest.h"
#include "maf/generate.hpp"
#include "maf/oracle.hpp"
#include "support.hpp"

using namespace maf;
using maf::test::make_pair;
using maf::test::taxa;

TEST_SUITE("oracle") {

TEST_CASE("brute force on small known pairs") {
  const auto same = make_pair("((a,b),(c,d));", "((a,b),(c,d));", TreeKind::unrooted);
  CHECK(*brute_maf(same.first, same.second, 3).cuts == 0);

  // Quartet: no single edge of the second tree leaves two agreeing blocks of
  // size two, but cutting a leaf leaves a 3-taxon block, always agreeing.
  const auto q = make_pair("((a,b),(c,d));", "((a,c),(b,d));", TreeKind::unrooted);
  const auto rq = brute_maf(q.first, q.second, 3);
  CHECK(*rq.cuts == 1);
  CHECK(rq.forest.size() == 2);
  CHECK(is_agreement_forest(q.first, q.second, rq.forest));

  const auto r = make_pair("((a,b),c);", "((b,c),a);", TreeKind::rooted);
  CHECK(*brute_maf(r.first, r.second, 3).cuts == 1);
  CHECK_FALSE(brute_maf(r.first, r.second, 0).feasible());
}

TEST_CASE("depth-limited solve") {
  const auto q = make_pair("((a,b),(c,d));", "((a,c),(b,d));", TreeKind::unrooted);
  CHECK_FALSE(depth_limited_solve(q.first, q.second, 0).feasible());
  CHECK(*depth_limited_solve(q.first, q.second, 1).cuts == 1);
  CHECK(*depth_limited_solve(q.first, q.first, 0).cuts == 0);
  const auto r = make_pair("((a,b),c);", "((b,c),a);", TreeKind::rooted);
  CHECK(*depth_limited_solve(r.first, r.second, 1).cuts == 1);
}

TEST_CASE("node limit is an error, never a wrong answer") {
  const auto g = generate_pair(12, 8, 3, TreeKind::rooted);
  CHECK_THROWS_AS(brute_maf(g.first, g.second, OracleBudget{8, 100}), OracleLimit);
}

TEST_CASE("splitting cut enumeration") {
  TaxonTable table;
  const auto two = parse_newick("(a,b);", TreeKind::unrooted, table);
  const auto c2 = enumerate_splitting_cuts(two, taxa(table, {"a"}), taxa(table, {"b"}), 1);
  CHECK(c2 == std::vector<std::vector<int>>{{1}});

  TaxonTable tq;
  const auto q = parse_newick("((a,b),(c,d));", TreeKind::unrooted, tq);
  const auto y = taxa(tq, {"a", "c"}), z = taxa(tq, {"b", "d"});
  const auto cuts = enumerate_splitting_cuts(q, y, z, 3);
  auto leaf = [&](const char* l) { return q.leaf_edge(q.leaf_of(taxa(tq, {l}))); };
  std::vector<int> ac{leaf("a"), leaf("c")}, bd{leaf("b"), leaf("d")};
  std::sort(ac.begin(), ac.end());
  std::sort(bd.begin(), bd.end());
  CHECK(std::find(cuts.begin(), cuts.end(), ac) != cuts.end());
  CHECK(std::find(cuts.begin(), cuts.end(), bd) != cuts.end());
  for (const auto& k : cuts) {
    CHECK(splits(q, k, y, z));
    CHECK(k.size() >= 2);
  }

  const auto pendant = enumerate_splitting_cuts(q, taxa(tq, {"a", "b"}), taxa(tq, {"c", "d"}), 1);
  REQUIRE(pendant.size() == 1);
  CHECK_FALSE(q.is_leaf(pendant[0][0]));
}

TEST_CASE("refinement between cuts") {
  TaxonTable tq;
  const auto q = parse_newick("((a,b),(c,d));", TreeKind::unrooted, tq);
  auto leaf = [&](const char* l) { return q.leaf_edge(q.leaf_of(taxa(tq, {l}))); };
  const int mid = q.find_edge(EdgeRef{taxa(tq, {"c", "d"})});
  CHECK(refines(q, {mid, leaf("a")}, {mid}));
  CHECK_FALSE(refines(q, {mid}, {mid, leaf("a")}));
  CHECK(refines(q, {leaf("a")}, {leaf("a")}));
}

TEST_CASE("brute force is symmetric and monotone") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto kind = seed % 2 ? TreeKind::rooted : TreeKind::unrooted;
    const auto g = generate_pair(4 + seed % 5, static_cast<int>(seed % 4), seed, kind);
    const auto ab = brute_maf(g.first, g.second, 8);
    const auto ba = brute_maf(g.second, g.first, 8);
    REQUIRE(ab.feasible());
    CHECK(*ab.cuts == *ba.cuts);
    for (int k = 0; k <= 8; ++k) CHECK(brute_maf(g.first, g.second, k).feasible() == (k >= *ab.cuts));
    for (int t = 0; t <= 2; ++t) {
      const auto d = depth_limited_solve(g.first, g.second, t);
      CHECK(d.feasible() == (*ab.cuts <= t));
    }
  }
}

}  // TEST_SUITE
