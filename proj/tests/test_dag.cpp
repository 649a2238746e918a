#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <string>

#include "treedag/dag.hpp"
#include "treedag/random_tree.hpp"

using namespace treedag;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(TREEDAG_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("minimal dag of the running example has six edges") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  Dag d = minimize(t);
  CHECK(d.edge_size() == 6);
  CHECK(d.node_size() == 4);
  CHECK(eval_unranked(d, d.root()) == t);
}

TEST_CASE("shared-subtree family compresses to n+1 edges") {
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    std::string term = "f(";
    for (std::size_t i = 0; i < n; ++i) term += i ? ",g(a)" : "g(a)";
    term += ")";
    Dag d = minimize(parse_term(term));
    CHECK(d.edge_size() == n + 1);
  }
}

TEST_CASE("single leaf minimizes to one node") {
  Dag d = minimize(parse_term("a"));
  CHECK(d.node_size() == 1);
  CHECK(d.edge_size() == 0);
}

TEST_CASE("binary dag sizes ignore placeholders") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  Dag b = minimize(fcns(t));
  CHECK(b.edge_size() == 6);
}

TEST_CASE("eval round trips on random trees") {
  TreeGen gen(99);
  for (int i = 0; i < 10000; ++i) {
    auto t = gen.random_tree(1 + i % 60, 1 + i % 4);
    Dag d = minimize(t);
    CHECK(eval_unranked(d, d.root()) == t);
  }
}

TEST_CASE("doubling dag unfolds exponentially and budget guards") {
  auto doubling = [](std::uint32_t n) {
    std::vector<Dag::Node> nodes;
    Symbol a = intern("a");
    nodes.push_back({DagSymbol::from_label(a), -1, {}});
    for (std::uint32_t i = 1; i <= n; ++i)
      nodes.push_back({DagSymbol::from_label(a), -1, {i - 1, i - 1}});
    return Dag(std::move(nodes), {n});
  };
  for (std::uint32_t n : {1u, 4u, 8u, 12u}) {
    Dag d = doubling(n);
    CHECK(d.edge_size() == 2 * n);
    UnrankedTree t = eval_unranked(d, d.root());
    CHECK(t.edge_size() == 2 * ((1ull << n) - 1));
    // the unfolding is already maximally shared
    CHECK(minimize(t).edge_size() == 2 * n);
  }
  CHECK_THROWS_AS(eval_unranked(doubling(60), 60), budget_exceeded);
}

TEST_CASE("re-minimizing unfoldings reproduces the dag") {
  TreeGen gen(512);
  for (int i = 0; i < 200; ++i) {
    auto t = gen.random_tree(2 + i % 40, 1 + i % 3);
    Dag d = minimize(t);
    // minimality: no two nodes unfold to the same tree
    std::set<std::string> unfoldings;
    for (std::uint32_t v = 0; v < d.nodes().size(); ++v)
      unfoldings.insert(to_term(eval_unranked(d, v)));
    CHECK(unfoldings.size() == d.nodes().size());
    CHECK(isomorphic(d, minimize(eval_unranked(d, d.root()))));
  }
}

TEST_CASE("node size of dag never exceeds node size of binary dag") {
  TreeGen gen(1234);
  for (int i = 0; i < 10000; ++i) {
    auto t = gen.random_tree(1 + i % 50, 1 + i % 2);
    CHECK(minimize(t).node_size() <= minimize(fcns(t)).node_size());
  }
  for (const auto& t : enumerate_trees_up_to(6, 2))
    CHECK(minimize(t).node_size() <= minimize(fcns(t)).node_size());
}

TEST_CASE("flat tree family node and edge sizes") {
  for (std::size_t n : {2u, 3u, 7u, 20u}) {
    std::string term = "f(";
    for (std::size_t i = 0; i + 1 < n; ++i) term += i ? ",a" : "a";
    term += ")";
    auto t = parse_term(term);
    Dag d = minimize(t);
    Dag b = minimize(fcns(t));
    CHECK(d.node_size() == 2);
    CHECK(d.edge_size() == n - 1);
    CHECK(b.edge_size() == n - 1);
    CHECK(b.node_size() == n);
  }
}

TEST_CASE("number of distinct sibling sequences equals binary dag node size") {
  TreeGen gen(31337);
  for (int i = 0; i < 500; ++i) {
    auto t = gen.random_tree(1 + i % 30, 1 + i % 2);
    std::set<std::string> seqs;
    for (PreorderIndex p = 1; p <= t.node_count(); ++p) {
      std::string s;
      for (const auto& u : sibseq_at(t, p)) s += to_term(u) + "|";
      seqs.insert(s);
    }
    CHECK(seqs.size() == minimize(fcns(t)).node_size());
  }
}

TEST_CASE("reduced grammar of the running example") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  Dag d = minimize(t);
  ReducedGrammar g = reduced_grammar(d);
  REQUIRE(g.rule_count() == 3);
  CHECK(g.size() == d.edge_size());
  // S -> f(B,A,A), B -> f(A,A), A -> g(a)
  CHECK(g.rules()[0].entries.size() == 3);
  CHECK(g.rules()[1].entries.size() == 2);
  CHECK(g.rules()[2].entries.size() == 1);
  CHECK(symbol_name(g.rules()[0].label) == "f");
  CHECK(symbol_name(g.rules()[2].label) == "g");
  CHECK(g.rules()[0].entries[0].is_rule);
  CHECK(g.rules()[0].entries[0].rule == 1);
  CHECK(g.rules()[0].entries[1].rule == 2);
  CHECK_FALSE(g.rules()[2].entries[0].is_rule);
  CHECK(symbol_name(g.rules()[2].entries[0].label) == "a");
  CHECK(g.unfold() == t);

  // child sequences: BAA, AA, a
  auto seqs = g.child_sequences();
  REQUIRE(seqs.size() == 3);
  CHECK(seqs[0].size() == 3);
  CHECK(seqs[1].size() == 2);
  CHECK(seqs[2].size() == 1);
}

TEST_CASE("reduced grammar rejects single-node dags") {
  CHECK_THROWS_AS(reduced_grammar(minimize(parse_term("a"))), single_node_dag);
}

TEST_CASE("one-edge tree gives one grammar rule") {
  ReducedGrammar g = reduced_grammar(minimize(parse_term("a(a)")));
  CHECK(g.rule_count() == 1);
  CHECK(g.size() == 1);
}

TEST_CASE("edge conservation between dag and reduced grammar") {
  TreeGen gen(2020);
  for (int i = 0; i < 300; ++i) {
    auto t = gen.random_tree(2 + i % 40, 1 + i % 3);
    Dag d = minimize(t);
    CHECK(reduced_grammar(d).size() == d.edge_size());
  }
}

TEST_CASE("dag serialization golden files") {
  auto t = parse_term("f(f(g(a),g(a)),g(a),g(a))");
  CHECK(serialize_dag(minimize(t)) == golden("fig3_dag.txt"));
  CHECK(serialize_dag(minimize(fcns(t))) == golden("fig3_bdag.txt"));
  CHECK(serialize_dag(minimize(parse_term("a"))) == golden("leaf_dag.txt"));
}

TEST_CASE("dag serialization round trips") {
  TreeGen gen(606);
  for (int i = 0; i < 200; ++i) {
    auto t = gen.random_tree(1 + i % 25, 1 + i % 3);
    Dag d = minimize(t);
    Dag back = parse_dag(serialize_dag(d));
    CHECK(isomorphic(d, back));
    CHECK(eval_unranked(back, back.root()) == t);
    Dag b = minimize(fcns(t));
    Dag bback = parse_dag(serialize_dag(b));
    CHECK(isomorphic(b, bback));
  }
}

TEST_CASE("serialization rejects labels that collide with rule names") {
  auto t = parse_term("f(A1,A1,b)");
  CHECK_THROWS_AS(serialize_dag(minimize(t)), std::invalid_argument);
}

TEST_CASE("parser rejects cyclic rule files") {
  CHECK_THROWS_AS(parse_dag("A0 -> f(A1)\nA1 -> g(A0)\n"), std::invalid_argument);
}
