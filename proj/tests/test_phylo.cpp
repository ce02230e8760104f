#include "doctest.h"
#include "support.hpp"

using namespace maf;
using maf::test::make_pair;
using maf::test::taxa;

TEST_SUITE("phylo") {

TEST_CASE("parsing builds binary trees of the requested kind") {
  TaxonTable table;
  const auto r = parse_newick("(a,b);", TreeKind::rooted, table);
  CHECK(r.node_count() == 3);
  CHECK(r.leaf_count() == 2);
  CHECK(r.is_leaf(r.node(0).child[0]));

  const auto u = parse_newick("((a,b),(c,d));", TreeKind::unrooted, table);
  CHECK(u.leaf_count() == 4);
  CHECK(u.edge_count() == 5);
  CHECK(cluster_signature(u) == std::vector<TaxonSet>{taxa(table, {"c", "d"})});

  CHECK_THROWS_AS(parse_newick("((a,b),(a,c));", TreeKind::rooted, table), NewickError);
  CHECK_THROWS(parse_newick("((a,b,c),d);", TreeKind::rooted, table));
  CHECK_THROWS(parse_newick("((a,b),c", TreeKind::rooted, table));
}

TEST_CASE("newick round trip is canonical") {
  TaxonTable table;
  const auto t = parse_newick("((d,c)x:0.5,[note](b,'a'));", TreeKind::rooted, table);
  CHECK(write_newick(t, table) == "((a,b),(c,d));");
  const auto back = parse_newick(write_newick(t, table), TreeKind::rooted, table);
  CHECK(is_homeomorphic(t, back));

  const auto u = parse_newick("(e,((a,b),c),d);", TreeKind::unrooted, table);
  const auto u2 = parse_newick(write_newick(u, table), TreeKind::unrooted, table);
  CHECK(is_homeomorphic(u, u2));
}

TEST_CASE("restriction") {
  const auto p = make_pair("((a,b),(c,d));", "((a,b),(c,d));", TreeKind::rooted);
  const auto& t = p.first;
  CHECK(is_homeomorphic(restrict_tree(t, t.taxa()), t));
  const auto ac = restrict_tree(t, taxa(p.table, {"a", "c"}));
  CHECK(ac.leaf_count() == 2);
  CHECK(cherries(ac).size() == 1);

  TaxonTable table;
  const auto u = parse_newick("(((a,b),(c,d)),(e,f));", TreeKind::unrooted, table);
  const auto v = parse_newick("(((a,e),(c,f)),(b,d));", TreeKind::unrooted, table);
  const auto labels = table.names();
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      for (std::size_t k = j + 1; k < labels.size(); ++k) {
        const TaxonSet s = TaxonSet::single(i) | TaxonSet::single(j) | TaxonSet::single(k);
        CHECK(is_homeomorphic(restrict_tree(u, s), restrict_tree(v, s)));
      }
}

TEST_CASE("homeomorphism") {
  const auto r = make_pair("((a,b),c);", "((b,c),a);", TreeKind::rooted);
  CHECK_FALSE(is_homeomorphic(r.first, r.second));
  CHECK(is_homeomorphic(r.first, r.first));
  const auto u = make_pair("((a,b),c);", "((b,c),a);", TreeKind::unrooted);
  CHECK(is_homeomorphic(u.first, u.second));
  const auto q = make_pair("((a,b),(c,d));", "((a,c),(b,d));", TreeKind::unrooted);
  CHECK_FALSE(is_homeomorphic(q.first, q.second));
}

TEST_CASE("cherries") {
  TaxonTable table;
  const auto q = parse_newick("((a,b),(c,d));", TreeKind::unrooted, table);
  const auto cq = cherries(q);
  REQUIRE(cq.size() == 2);
  CHECK(cq[0].first == taxa(table, {"a"}));
  CHECK(cq[0].second == taxa(table, {"b"}));
  CHECK((cq[1].first | cq[1].second) == taxa(table, {"c", "d"}));

  const auto cat = parse_newick("(((a,b),c),d);", TreeKind::rooted, table);
  const auto cc = cherries(cat);
  REQUIRE(cc.size() == 1);
  CHECK((cc[0].first | cc[0].second) == taxa(table, {"a", "b"}));

  TaxonTable t6;
  const auto six = parse_newick("(a,(b,(c,(d,(e,f)))));", TreeKind::unrooted, t6);
  const auto c6 = cherries(six);
  REQUIRE(c6.size() == 2);
  CHECK_FALSE((c6[0].first | c6[0].second).intersects(c6[1].first | c6[1].second));
}

TEST_CASE("pendancy and common subtrees") {
  // {a,b,c} hangs off both trees with the same shape but a different attachment.
  const auto p = make_pair("((((a,b),c),d),(e,f));", "(((a,b),c),(d,(e,f)));", TreeKind::unrooted);
  const TaxonSet abc = taxa(p.table, {"a", "b", "c"});
  const auto ignoring = pendancy_and_common(p.first, p.second, abc, CommonMode::ignoring_rooting);
  CHECK(ignoring.pendant_in_first);
  CHECK(ignoring.pendant_in_second);
  CHECK(ignoring.common);

  const auto q = make_pair("((a,b),(c,d));", "((a,c),(b,d));", TreeKind::unrooted);
  const auto r = pendancy_and_common(q.first, q.second, taxa(q.table, {"a", "b"}), CommonMode::ignoring_rooting);
  CHECK(r.pendant_in_first);
  CHECK_FALSE(r.pendant_in_second);

  const auto ch = make_pair("((a,b),(c,d));", "(((a,b),c),d);", TreeKind::rooted);
  CHECK(pendancy_and_common(ch.first, ch.second, taxa(ch.table, {"a", "b"}), CommonMode::including_rooting).common);

  // Rooted: same cherry shape, attached above different neighbours.
  const auto rr = make_pair("(((a,b),c),d);", "(((a,b),d),c);", TreeKind::rooted);
  const TaxonSet abd = taxa(rr.table, {"a", "b", "c"});
  CHECK(pendancy_and_common(rr.first, rr.second, abd, CommonMode::ignoring_rooting).pendant_in_first);
  CHECK_FALSE(pendancy_and_common(rr.first, rr.second, abd, CommonMode::ignoring_rooting).pendant_in_second);
}

TEST_CASE("embeddings") {
  TaxonTable table;
  const auto q = parse_newick("((a,b),(c,d));", TreeKind::unrooted, table);
  const auto single = embed(q, taxa(table, {"a"}));
  CHECK(single.vertices.size() == 1);
  CHECK(single.edges.empty());
  const auto ac = embed(q, taxa(table, {"a", "c"}));
  const auto bd = embed(q, taxa(table, {"b", "d"}));
  int shared = 0;
  for (int e : ac.edges) shared += bd.has_edge(e);
  CHECK(shared == 1);

  const auto cat = parse_newick("(((a,b),c),d);", TreeKind::rooted, table);
  const int top = lca(cat, taxa(table, {"a", "c"}));
  CHECK(cat.parent(top) == cat.root());
  CHECK(cat.cluster(top) == taxa(table, {"a", "b", "c"}));
}

TEST_CASE("leaf paths and distances") {
  TaxonTable table;
  const auto t = parse_newick("(((a,b),c),(d,e));", TreeKind::unrooted, table);
  const int a = t.leaf_of(taxa(table, {"a"})), d = t.leaf_of(taxa(table, {"d"}));
  CHECK(leaf_distance(t, a, d) == 4);
  CHECK(leaf_path(t, a, d).size() == 5);
  CHECK(leaf_distance(t, a, t.leaf_of(taxa(table, {"b"}))) == 2);
}

TEST_CASE("collapsing a cherry merges the taxa into one leaf") {
  TaxonTable table;
  const auto t = parse_newick("((a,b),(c,d));", TreeKind::rooted, table);
  const auto a = taxa(table, {"a"}), b = taxa(table, {"b"});
  const auto c = collapse_cherry(t, a, b);
  CHECK(c.leaf_count() == 3);
  CHECK(c.node(c.leaf_of(a)).taxon == (a | b));
  CHECK_THROWS(collapse_cherry(t, a, taxa(table, {"c"})));
}

}  // TEST_SUITE
