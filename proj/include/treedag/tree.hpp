#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treedag/errors.hpp"
#include "treedag/symbols.hpp"

namespace treedag {

using NodeId = std::uint32_t;

// Ordered unranked labeled tree. Immutable after construction; children
// order is significant everywhere.
class UnrankedTree {
public:
  struct Node {
    Symbol label;
    std::vector<NodeId> children;
  };

  UnrankedTree(std::vector<Node> nodes, NodeId root) : nodes_(std::move(nodes)), root_(root) {
    validate();
  }

  static UnrankedTree leaf(Symbol label) { return UnrankedTree({Node{label, {}}}, 0); }
  static UnrankedTree leaf(std::string_view label) { return leaf(intern(label)); }

  // Builds label(children...) by concatenating the children's storage.
  static UnrankedTree make(Symbol label, const std::vector<UnrankedTree>& children) {
    std::vector<Node> nodes;
    Node root{label, {}};
    for (const auto& c : children) {
      NodeId base = static_cast<NodeId>(nodes.size()) + 1;
      root.children.push_back(base + c.root());
      for (const auto& n : c.nodes()) {
        Node copy{n.label, {}};
        copy.children.reserve(n.children.size());
        for (NodeId k : n.children) copy.children.push_back(base + k);
        nodes.push_back(std::move(copy));
      }
    }
    nodes.insert(nodes.begin(), std::move(root));
    return UnrankedTree(std::move(nodes), 0);
  }

  static UnrankedTree make(std::string_view label, const std::vector<UnrankedTree>& children) {
    return make(intern(label), children);
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  NodeId root() const { return root_; }
  const Node& node(NodeId v) const { return nodes_[v]; }
  Symbol label(NodeId v) const { return nodes_[v].label; }
  const std::vector<NodeId>& children(NodeId v) const { return nodes_[v].children; }

  std::size_t node_count() const { return nodes_.size(); }
  // Size of a tree is its number of edges.
  std::size_t edge_size() const { return nodes_.size() - 1; }

  // Node ids in preorder; index i holds the node with preorder number i+1.
  std::vector<NodeId> preorder() const {
    std::vector<NodeId> order;
    order.reserve(nodes_.size());
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      const auto& ch = nodes_[v].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
  }

  // Edge count of every subtree, indexed by node id.
  std::vector<std::uint64_t> subtree_edge_sizes() const {
    std::vector<std::uint64_t> size(nodes_.size(), 0);
    auto order = preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::uint64_t s = 0;
      for (NodeId c : nodes_[*it].children) s += size[c] + 1;
      size[*it] = s;
    }
    return size;
  }

  bool operator==(const UnrankedTree& other) const {
    if (nodes_.size() != other.nodes_.size()) return false;
    std::vector<std::pair<NodeId, NodeId>> stack{{root_, other.root_}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      const Node& na = nodes_[a];
      const Node& nb = other.nodes_[b];
      if (na.label != nb.label || na.children.size() != nb.children.size()) return false;
      for (std::size_t i = 0; i < na.children.size(); ++i)
        stack.emplace_back(na.children[i], nb.children[i]);
    }
    return true;
  }

private:
  void validate() const {
    if (nodes_.empty()) throw std::invalid_argument("tree must have at least one node");
    if (root_ >= nodes_.size()) throw std::invalid_argument("root out of range");
    std::vector<std::uint8_t> seen(nodes_.size(), 0);
    seen[root_] = 1;
    std::size_t reached = 1;
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId c : nodes_[v].children) {
        if (c >= nodes_.size() || seen[c])
          throw std::invalid_argument("node sequence does not form a tree");
        seen[c] = 1;
        ++reached;
        stack.push_back(c);
      }
    }
    if (reached != nodes_.size()) throw std::invalid_argument("unreachable nodes in tree");
  }

  std::vector<Node> nodes_;
  NodeId root_;
};

using Forest = std::vector<UnrankedTree>;

// Binary tree over Sigma plus the placeholder for absent children. Node 0 is
// the single shared placeholder leaf; every labeled node has explicit left
// and right slots (possibly the placeholder).
class BinaryTree {
public:
  static constexpr NodeId box = 0;

  struct Node {
    Symbol label;
    NodeId left;
    NodeId right;
  };

  BinaryTree(std::vector<Node> nodes, NodeId root) : nodes_(std::move(nodes)), root_(root) {
    if (nodes_.empty()) nodes_.push_back(Node{0, box, box});
  }

  static BinaryTree empty() { return BinaryTree({Node{0, box, box}}, box); }

  const std::vector<Node>& nodes() const { return nodes_; }
  NodeId root() const { return root_; }
  bool is_box(NodeId v) const { return v == box; }
  Symbol label(NodeId v) const { return nodes_[v].label; }
  NodeId left(NodeId v) const { return nodes_[v].left; }
  NodeId right(NodeId v) const { return nodes_[v].right; }

  // Placeholder nodes and edges into them do not count.
  std::size_t node_size() const { return nodes_.size() - 1; }
  std::size_t edge_size() const {
    std::size_t e = 0;
    for (NodeId v = 1; v < nodes_.size(); ++v) {
      if (nodes_[v].left != box) ++e;
      if (nodes_[v].right != box) ++e;
    }
    return e;
  }

  bool operator==(const BinaryTree& other) const {
    std::vector<std::pair<NodeId, NodeId>> stack{{root_, other.root_}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if ((a == box) != (b == box)) return false;
      if (a == box) continue;
      if (nodes_[a].label != other.nodes_[b].label) return false;
      stack.emplace_back(nodes_[a].left, other.nodes_[b].left);
      stack.emplace_back(nodes_[a].right, other.nodes_[b].right);
    }
    return true;
  }

private:
  std::vector<Node> nodes_;
  NodeId root_;
};

// ---------------------------------------------------------------------------
// term notation: t := label | label '(' t (',' t)* ')'

inline UnrankedTree parse_term(std::string_view text) {
  std::vector<UnrankedTree::Node> nodes;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_label = [&]() -> Symbol {
    std::size_t start = pos;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    };
    if (pos >= text.size() || !head(text[pos])) throw parse_error("expected label", pos);
    ++pos;
    while (pos < text.size() && tail(text[pos])) ++pos;
    std::string_view name = text.substr(start, pos - start);
    if (is_reserved_label(name)) throw parse_error("reserved label '_'", start);
    return intern(name);
  };

  skip_ws();
  if (pos >= text.size()) throw parse_error("empty input", pos);

  // explicit stack of open nodes to keep deep chains safe
  std::vector<NodeId> open;
  NodeId root = 0;
  for (;;) {
    Symbol label = parse_label();
    NodeId id = static_cast<NodeId>(nodes.size());
    nodes.push_back({label, {}});
    if (open.empty())
      root = id;
    else
      nodes[open.back()].children.push_back(id);
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      skip_ws();
      open.push_back(id);
      continue;
    }
    // close as many nodes as the input demands
    for (;;) {
      skip_ws();
      if (open.empty()) {
        if (pos != text.size()) throw parse_error("trailing input", pos);
        return UnrankedTree(std::move(nodes), root);
      }
      if (pos >= text.size()) throw parse_error("unexpected end of input", pos);
      if (text[pos] == ',') {
        ++pos;
        skip_ws();
        break;
      }
      if (text[pos] == ')') {
        ++pos;
        open.pop_back();
        continue;
      }
      throw parse_error("expected ',' or ')'", pos);
    }
  }
}

inline void append_term(const UnrankedTree& t, std::string& out) {
  struct Item {
    NodeId v;
    std::size_t next_child;
  };
  std::vector<Item> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    const auto& ch = t.children(v);
    if (i == 0) {
      out += symbol_name(t.label(v));
      if (!ch.empty()) out += '(';
    }
    if (i < ch.size()) {
      if (i > 0) out += ',';
      NodeId c = ch[i];
      ++i;
      stack.push_back({c, 0});
      continue;
    }
    if (!ch.empty()) out += ')';
    stack.pop_back();
  }
}

inline std::string to_term(const UnrankedTree& t) {
  std::string out;
  append_term(t, out);
  return out;
}

// Binary trees print with '_' for the placeholder; a node with two
// placeholder children prints as a bare label.
inline std::string to_term(const BinaryTree& b) {
  std::string out;
  struct Item {
    NodeId v;
    int state;
  };
  std::vector<Item> stack{{b.root(), 0}};
  while (!stack.empty()) {
    auto& [v, state] = stack.back();
    if (b.is_box(v)) {
      out += '_';
      stack.pop_back();
      continue;
    }
    bool is_leaf = b.left(v) == BinaryTree::box && b.right(v) == BinaryTree::box;
    switch (state) {
      case 0:
        out += symbol_name(b.label(v));
        if (is_leaf) {
          stack.pop_back();
        } else {
          out += '(';
          state = 1;
          stack.push_back({b.left(v), 0});
        }
        break;
      case 1:
        out += ',';
        state = 2;
        stack.push_back({b.right(v), 0});
        break;
      default:
        out += ')';
        stack.pop_back();
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// fcns / lcps encodings of forests

// First child/next sibling. Keeps every node; the left child of a node is its
// first child, the right child is its next sibling (roots are siblings of the
// following tree's root).
inline BinaryTree fcns(std::span<const UnrankedTree> forest) {
  std::vector<BinaryTree::Node> nodes{{0, BinaryTree::box, BinaryTree::box}};
  if (forest.empty()) return BinaryTree(std::move(nodes), BinaryTree::box);

  std::vector<NodeId> base(forest.size());
  for (std::size_t i = 0; i < forest.size(); ++i) {
    base[i] = static_cast<NodeId>(nodes.size());
    for (const auto& n : forest[i].nodes())
      nodes.push_back({n.label, BinaryTree::box, BinaryTree::box});
  }
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const auto& t = forest[i];
    for (NodeId v = 0; v < t.node_count(); ++v) {
      const auto& ch = t.children(v);
      if (!ch.empty()) nodes[base[i] + v].left = base[i] + ch.front();
      for (std::size_t j = 0; j + 1 < ch.size(); ++j)
        nodes[base[i] + ch[j]].right = base[i] + ch[j + 1];
    }
    if (i + 1 < forest.size()) nodes[base[i] + t.root()].right = base[i + 1] + forest[i + 1].root();
  }
  return BinaryTree(std::move(nodes), base[0] + forest[0].root());
}

inline BinaryTree fcns(const UnrankedTree& t) { return fcns(std::span(&t, 1)); }

// Last child/previous sibling, the mirror-image encoding: the right child of
// a node is its last child, the left child is its previous sibling.
inline BinaryTree lcps(std::span<const UnrankedTree> forest) {
  std::vector<BinaryTree::Node> nodes{{0, BinaryTree::box, BinaryTree::box}};
  if (forest.empty()) return BinaryTree(std::move(nodes), BinaryTree::box);

  std::vector<NodeId> base(forest.size());
  for (std::size_t i = 0; i < forest.size(); ++i) {
    base[i] = static_cast<NodeId>(nodes.size());
    for (const auto& n : forest[i].nodes())
      nodes.push_back({n.label, BinaryTree::box, BinaryTree::box});
  }
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const auto& t = forest[i];
    for (NodeId v = 0; v < t.node_count(); ++v) {
      const auto& ch = t.children(v);
      if (!ch.empty()) nodes[base[i] + v].right = base[i] + ch.back();
      for (std::size_t j = 0; j + 1 < ch.size(); ++j)
        nodes[base[i] + ch[j + 1]].left = base[i] + ch[j];
    }
    if (i > 0) nodes[base[i] + t.root()].left = base[i - 1] + forest[i - 1].root();
  }
  return BinaryTree(std::move(nodes), base.back() + forest.back().root());
}

inline BinaryTree lcps(const UnrankedTree& t) { return lcps(std::span(&t, 1)); }

namespace detail {

// Decodes one encoded tree rooted at v; `down` picks the children chain head,
// `next` advances along it, `reverse_children` flips the recovered order.
inline UnrankedTree decode_binary(const BinaryTree& b, NodeId v, NodeId (BinaryTree::*down)(NodeId) const,
                                  NodeId (BinaryTree::*next)(NodeId) const, bool reverse_children) {
  std::vector<UnrankedTree::Node> nodes;
  struct Item {
    NodeId src;
    NodeId dst;
  };
  std::vector<Item> stack{{v, 0}};
  nodes.push_back({b.label(v), {}});
  while (!stack.empty()) {
    auto [src, dst] = stack.back();
    stack.pop_back();
    std::vector<NodeId> chain;
    for (NodeId c = (b.*down)(src); c != BinaryTree::box; c = (b.*next)(c)) chain.push_back(c);
    if (reverse_children) std::reverse(chain.begin(), chain.end());
    for (NodeId c : chain) {
      NodeId id = static_cast<NodeId>(nodes.size());
      nodes.push_back({b.label(c), {}});
      nodes[dst].children.push_back(id);
      stack.push_back({c, id});
    }
  }
  return UnrankedTree(std::move(nodes), 0);
}

} // namespace detail

inline Forest fcns_inverse(const BinaryTree& b) {
  Forest forest;
  for (NodeId v = b.root(); v != BinaryTree::box; v = b.right(v))
    forest.push_back(detail::decode_binary(b, v, &BinaryTree::left, &BinaryTree::right, false));
  return forest;
}

inline Forest lcps_inverse(const BinaryTree& b) {
  Forest forest;
  for (NodeId v = b.root(); v != BinaryTree::box; v = b.left(v))
    forest.push_back(detail::decode_binary(b, v, &BinaryTree::right, &BinaryTree::left, true));
  std::reverse(forest.begin(), forest.end());
  return forest;
}

// ---------------------------------------------------------------------------
// mirroring (reverses every children sequence)

inline UnrankedTree mirror(const UnrankedTree& t) {
  std::vector<UnrankedTree::Node> nodes = t.nodes();
  for (auto& n : nodes) std::reverse(n.children.begin(), n.children.end());
  return UnrankedTree(std::move(nodes), t.root());
}

inline Forest mirror(std::span<const UnrankedTree> forest) {
  Forest out;
  for (auto it = forest.rbegin(); it != forest.rend(); ++it) out.push_back(mirror(*it));
  return out;
}

inline BinaryTree mirror(const BinaryTree& b) {
  std::vector<BinaryTree::Node> nodes = b.nodes();
  for (NodeId v = 1; v < nodes.size(); ++v) std::swap(nodes[v].left, nodes[v].right);
  return BinaryTree(std::move(nodes), b.root());
}

// ---------------------------------------------------------------------------
// preorder reference extraction (naive oracles for the query indexes)

// 1-based preorder position.
using PreorderIndex = std::uint64_t;

inline NodeId node_at_preorder(const UnrankedTree& t, PreorderIndex p) {
  if (p < 1 || p > t.node_count()) throw std::out_of_range("preorder index out of range");
  return t.preorder()[p - 1];
}

inline UnrankedTree subtree_at(const UnrankedTree& t, PreorderIndex p) {
  NodeId v = node_at_preorder(t, p);
  std::vector<UnrankedTree::Node> nodes;
  std::vector<std::pair<NodeId, NodeId>> stack;
  nodes.push_back({t.label(v), {}});
  stack.emplace_back(v, 0);
  while (!stack.empty()) {
    auto [src, dst] = stack.back();
    stack.pop_back();
    for (NodeId c : t.children(src)) {
      NodeId id = static_cast<NodeId>(nodes.size());
      nodes.push_back({t.label(c), {}});
      nodes[dst].children.push_back(id);
      stack.emplace_back(c, id);
    }
  }
  return UnrankedTree(std::move(nodes), 0);
}

// The subtree at p followed by the subtrees of all its right siblings.
inline Forest sibseq_at(const UnrankedTree& t, PreorderIndex p) {
  NodeId v = node_at_preorder(t, p);
  if (v == t.root()) return {subtree_at(t, p)};
  // locate parent and position; the tree is small enough for a scan
  auto order = t.preorder();
  std::vector<PreorderIndex> pre_of(t.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) pre_of[order[i]] = i + 1;
  for (NodeId u = 0; u < t.node_count(); ++u) {
    const auto& ch = t.children(u);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i] == v) {
        Forest seq;
        for (std::size_t j = i; j < ch.size(); ++j) seq.push_back(subtree_at(t, pre_of[ch[j]]));
        return seq;
      }
    }
  }
  throw std::logic_error("unreachable");
}

} // namespace treedag
