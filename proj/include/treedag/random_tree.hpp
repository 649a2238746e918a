#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treedag/tree.hpp"

namespace treedag {

// Seeded generator of uniformly random m-labeled unranked trees with a given
// edge count, via the cycle lemma: a random arrangement of n up-steps and
// n+1 down-steps has exactly one rotation that is a Lukasiewicz path.
class TreeGen {
public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  UnrankedTree random_tree(std::size_t edges, std::size_t labels) {
    std::vector<std::int8_t> steps(2 * edges + 1, -1);
    for (std::size_t i = 0; i < edges; ++i) steps[i] = 1;
    std::shuffle(steps.begin(), steps.end(), rng_);

    // rotate to just past the (first) minimum of the prefix sums
    std::ptrdiff_t sum = 0, best = 1, best_pos = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      sum += steps[i];
      if (sum < best) {
        best = sum;
        best_pos = static_cast<std::ptrdiff_t>(i) + 1;
      }
    }
    std::rotate(steps.begin(), steps.begin() + best_pos, steps.end());
    steps.pop_back();  // final down-step closes the root

    std::vector<UnrankedTree::Node> nodes;
    nodes.push_back({random_label(labels), {}});
    std::vector<NodeId> path{0};
    for (std::int8_t s : steps) {
      if (s == 1) {
        NodeId id = static_cast<NodeId>(nodes.size());
        nodes.push_back({random_label(labels), {}});
        nodes[path.back()].children.push_back(id);
        path.push_back(id);
      } else {
        path.pop_back();
      }
    }
    return UnrankedTree(std::move(nodes), 0);
  }

  // Uniform over forests with the given total node count (they are exactly
  // the children sequences of trees with that many edges).
  Forest random_forest(std::size_t total_nodes, std::size_t labels) {
    UnrankedTree t = random_tree(total_nodes, labels);
    Forest f;
    for (NodeId c : t.children(t.root())) {
      auto order = t.preorder();
      for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == c) f.push_back(subtree_at(t, i + 1));
    }
    return f;
  }

  std::uint64_t next() { return rng_(); }

private:
  Symbol random_label(std::size_t labels) {
    std::uniform_int_distribution<std::size_t> dist(1, labels);
    return intern("l" + std::to_string(dist(rng_)));
  }

  std::mt19937_64 rng_;
};

// Every m-labeled unranked tree with exactly `edges` edges, in a fixed
// deterministic order. Intended for exhaustive small-case checks.
inline std::vector<UnrankedTree> enumerate_trees(std::size_t edges, std::size_t labels) {
  std::vector<Symbol> alphabet;
  for (std::size_t i = 1; i <= labels; ++i) alphabet.push_back(intern("l" + std::to_string(i)));

  // forests_by_nodes[k] = all forests with total node count k
  std::vector<std::vector<Forest>> forests_by_nodes(edges + 1);
  std::vector<std::vector<UnrankedTree>> trees_by_nodes(edges + 2);
  forests_by_nodes[0] = {Forest{}};
  for (std::size_t n = 1; n <= edges + 1; ++n) {
    for (Symbol a : alphabet)
      for (const Forest& f : forests_by_nodes[n - 1])
        trees_by_nodes[n].push_back(UnrankedTree::make(a, f));
    if (n <= edges) {
      for (std::size_t first = 1; first <= n; ++first)
        for (const UnrankedTree& t : trees_by_nodes[first])
          for (const Forest& rest : forests_by_nodes[n - first]) {
            Forest f{t};
            f.insert(f.end(), rest.begin(), rest.end());
            forests_by_nodes[n].push_back(std::move(f));
          }
    }
  }
  return trees_by_nodes[edges + 1];
}

inline std::vector<UnrankedTree> enumerate_trees_up_to(std::size_t max_nodes, std::size_t labels) {
  std::vector<UnrankedTree> all;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    auto batch = enumerate_trees(n - 1, labels);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

// Every forest with total node count up to the bound (including the empty
// forest when min_nodes allows it).
inline std::vector<Forest> enumerate_forests(std::size_t max_total_nodes, std::size_t labels) {
  std::vector<Forest> all{Forest{}};
  std::vector<std::vector<Forest>> by_nodes(max_total_nodes + 1);
  by_nodes[0] = {Forest{}};
  std::vector<std::vector<UnrankedTree>> trees(max_total_nodes + 1);
  for (std::size_t n = 1; n <= max_total_nodes; ++n) trees[n] = enumerate_trees(n - 1, labels);
  for (std::size_t n = 1; n <= max_total_nodes; ++n) {
    for (std::size_t first = 1; first <= n; ++first)
      for (const UnrankedTree& t : trees[first])
        for (const Forest& rest : by_nodes[n - first]) {
          Forest f{t};
          f.insert(f.end(), rest.begin(), rest.end());
          by_nodes[n].push_back(std::move(f));
        }
    all.insert(all.end(), by_nodes[n].begin(), by_nodes[n].end());
  }
  return all;
}

} // namespace treedag
