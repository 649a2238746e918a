#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "treedag/random_tree.hpp"
#include "treedag/tree.hpp"

using namespace treedag;

TEST_CASE("term parsing round trips") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  CHECK(t.node_count() == 10);
  CHECK(t.edge_size() == 9);
  CHECK(to_term(t) == "f(f(g(a),g(a)),g(a),g(a))");

  auto leaf = parse_term("a");
  CHECK(leaf.node_count() == 1);
  CHECK(leaf.edge_size() == 0);

  auto ex3 = parse_term("f(a,f(b,a),b,a)");
  CHECK(ex3.node_count() == 7);

  CHECK(to_term(parse_term("  f ( a , b )  ")) == "f(a,b)");
}

TEST_CASE("term parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_term(""), parse_error);
  CHECK_THROWS_AS(parse_term("   "), parse_error);
  CHECK_THROWS_AS(parse_term("f(a"), parse_error);
  CHECK_THROWS_AS(parse_term("f(a))"), parse_error);
  CHECK_THROWS_AS(parse_term("f(,a)"), parse_error);
  CHECK_THROWS_AS(parse_term("f a"), parse_error);
  CHECK_THROWS_AS(parse_term("1f"), parse_error);
  CHECK_THROWS_AS(parse_term("_"), parse_error);
  try {
    parse_term("f(a,)");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.offset == 4);
  }
}

TEST_CASE("fcns of a two-tree forest") {
  Forest forest{parse_term("f(a1,a2,a3)"), parse_term("g(b1,b2)")};
  BinaryTree b = fcns(forest);
  CHECK(to_term(b) == "f(a1(_,a2(_,a3)),g(b1(_,b2),_))");
  CHECK(b.node_size() == 8);

  CHECK(to_term(fcns(parse_term("a"))) == "a");
  CHECK(fcns(parse_term("a")).node_size() == 1);

  auto back = fcns_inverse(b);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == forest[0]);
  CHECK(back[1] == forest[1]);
}

TEST_CASE("fcns of the empty forest is the placeholder") {
  BinaryTree b = fcns(std::span<const UnrankedTree>{});
  CHECK(b.root() == BinaryTree::box);
  CHECK(fcns_inverse(b).empty());
}

TEST_CASE("lcps of a two-tree forest") {
  Forest forest{parse_term("f(a1,a2,a3)"), parse_term("g(b1,b2)")};
  BinaryTree b = lcps(forest);
  CHECK(to_term(b) == "g(f(_,a3(a2(a1,_),_)),b2(b1,_))");
  CHECK(to_term(lcps(parse_term("a"))) == "a");

  auto back = lcps_inverse(b);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == forest[0]);
  CHECK(back[1] == forest[1]);
}

TEST_CASE("size preservation under both encodings") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  CHECK(fcns(t).node_size() == t.node_count());
  CHECK(lcps(t).node_size() == t.node_count());
  // the encoding of a single tree has exactly one edge per tree edge
  CHECK(fcns(t).edge_size() == t.edge_size());
  CHECK(lcps(t).edge_size() == t.edge_size());
}

TEST_CASE("encodings are bijective on random forests") {
  TreeGen gen(20240601);
  for (int i = 0; i < 1000; ++i) {
    Forest f = gen.random_forest(1 + i % 40, 1 + i % 3);
    BinaryTree enc = fcns(f);
    Forest dec = fcns_inverse(enc);
    REQUIRE(dec.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(dec[k] == f[k]);
    BinaryTree enc2 = lcps(f);
    Forest dec2 = lcps_inverse(enc2);
    REQUIRE(dec2.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(dec2[k] == f[k]);
  }
}

TEST_CASE("encodings are bijective on all small forests") {
  auto forests = enumerate_forests(6, 2);
  CHECK(forests.size() > 3000);
  for (const auto& f : forests) {
    auto rt = fcns_inverse(fcns(f));
    REQUIRE(rt.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(rt[k] == f[k]);
    auto rt2 = lcps_inverse(lcps(f));
    REQUIRE(rt2.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(rt2[k] == f[k]);
  }
}

TEST_CASE("lcps agrees with mirrored fcns") {
  TreeGen gen(777);
  for (int i = 0; i < 1000; ++i) {
    Forest f = gen.random_forest(1 + i % 30, 1 + i % 2);
    CHECK(lcps(f) == mirror(fcns(mirror(f))));
  }
}

TEST_CASE("subtree and sibling sequence extraction") {
  auto t = parse_term("f(a,f(b,a),b,a)");
  CHECK(subtree_at(t, 1) == t);
  CHECK(subtree_at(t, 3) == parse_term("f(b,a)"));
  CHECK_THROWS_AS(subtree_at(t, 0), std::out_of_range);
  CHECK_THROWS_AS(subtree_at(t, 8), std::out_of_range);

  // the distinct sibling sequences of the example tree, via rendering
  std::set<std::string> seqs;
  for (PreorderIndex p = 1; p <= t.node_count(); ++p) {
    std::string s;
    for (const auto& u : sibseq_at(t, p)) {
      s += to_term(u);
      s += ' ';
    }
    seqs.insert(s);
  }
  std::set<std::string> expected{"f(a,f(b,a),b,a) ", "a f(b,a) b a ", "f(b,a) b a ", "b a ",
                                 "a "};
  CHECK(seqs == expected);
}

TEST_CASE("distinct subtrees of the running example") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  std::set<std::string> subs;
  for (PreorderIndex p = 1; p <= t.node_count(); ++p) subs.insert(to_term(subtree_at(t, p)));
  CHECK(subs.size() == 4);
}

TEST_CASE("random tree generator is seed-stable and size-exact") {
  TreeGen a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    auto t1 = a.random_tree(30, 3);
    auto t2 = b.random_tree(30, 3);
    CHECK(t1 == t2);
    CHECK(t1.edge_size() == 30);
  }
  // rough uniformity over the five 3-edge shapes
  TreeGen g(7);
  std::map<std::string, int> freq;
  for (int i = 0; i < 5000; ++i) ++freq[to_term(g.random_tree(3, 1))];
  REQUIRE(freq.size() == 5);
  for (auto& [shape, count] : freq) {
    CHECK(count > 800);
    CHECK(count < 1200);
  }
}
