#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treedag/tree.hpp"

namespace treedag {

// Node label of a dag. Besides plain labels, hybrid construction needs spine
// nodes whose "label" is a reference to a grammar nonterminal, and binary
// dags need the placeholder.
class DagSymbol {
public:
  enum class Kind : std::uint8_t { label, ref, box };

  static DagSymbol from_label(Symbol s) { return DagSymbol(Kind::label, s); }
  static DagSymbol from_ref(std::uint32_t rule) { return DagSymbol(Kind::ref, rule); }
  static DagSymbol make_box() { return DagSymbol(Kind::box, 0); }

  Kind kind() const { return static_cast<Kind>(bits_ >> 32); }
  bool is_label() const { return kind() == Kind::label; }
  bool is_ref() const { return kind() == Kind::ref; }
  bool is_box() const { return kind() == Kind::box; }
  Symbol label() const { return static_cast<Symbol>(bits_); }
  std::uint32_t ref() const { return static_cast<std::uint32_t>(bits_); }
  std::uint64_t raw() const { return bits_; }

  bool operator==(const DagSymbol&) const = default;

private:
  DagSymbol(Kind k, std::uint32_t payload)
      : bits_((static_cast<std::uint64_t>(k) << 32) | payload) {}
  std::uint64_t bits_;
};

// Mutable node/edge structure fed to minimize(); also the result of dag
// unfolding. Shapes range from plain trees to arbitrary ordered rooted dags.
struct InputGraph {
  struct Node {
    DagSymbol label;
    std::int32_t annot = -1;
    std::vector<std::uint32_t> children;
  };
  std::vector<Node> nodes;
  std::vector<std::uint32_t> roots;

  static InputGraph from(const UnrankedTree& t) {
    InputGraph g;
    g.nodes.reserve(t.node_count());
    for (const auto& n : t.nodes()) {
      Node m{DagSymbol::from_label(n.label), -1, n.children};
      g.nodes.push_back(std::move(m));
    }
    g.roots.push_back(t.root());
    return g;
  }

  static InputGraph from(std::span<const UnrankedTree> forest) {
    InputGraph g;
    for (const auto& t : forest) {
      std::uint32_t base = static_cast<std::uint32_t>(g.nodes.size());
      for (const auto& n : t.nodes()) {
        Node m{DagSymbol::from_label(n.label), -1, {}};
        m.children.reserve(n.children.size());
        for (NodeId c : n.children) m.children.push_back(base + c);
        g.nodes.push_back(std::move(m));
      }
      g.roots.push_back(base + t.root());
    }
    return g;
  }

  static InputGraph from(const BinaryTree& b) {
    InputGraph g;
    g.nodes.reserve(b.nodes().size());
    g.nodes.push_back(Node{DagSymbol::make_box(), -1, {}});
    for (NodeId v = 1; v < b.nodes().size(); ++v)
      g.nodes.push_back(Node{DagSymbol::from_label(b.label(v)), -1, {b.left(v), b.right(v)}});
    g.roots.push_back(b.root());
    return g;
  }

  static InputGraph from(std::span<const BinaryTree> forest) {
    InputGraph g;
    g.nodes.push_back(Node{DagSymbol::make_box(), -1, {}});
    for (const auto& b : forest) {
      std::uint32_t base = static_cast<std::uint32_t>(g.nodes.size()) - 1;
      auto map = [&](NodeId v) -> std::uint32_t { return v == BinaryTree::box ? 0 : base + v; };
      for (NodeId v = 1; v < b.nodes().size(); ++v)
        g.nodes.push_back(
            Node{DagSymbol::from_label(b.label(v)), -1, {map(b.left(v)), map(b.right(v))}});
      g.roots.push_back(map(b.root()));
    }
    return g;
  }

  UnrankedTree to_unranked(std::uint32_t root) const {
    std::vector<UnrankedTree::Node> nodes;
    std::vector<std::pair<std::uint32_t, NodeId>> stack;
    if (!this->nodes[root].label.is_label())
      throw std::invalid_argument("graph is not a plain labeled tree");
    nodes.push_back({this->nodes[root].label.label(), {}});
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto [src, dst] = stack.back();
      stack.pop_back();
      for (std::uint32_t c : this->nodes[src].children) {
        if (!this->nodes[c].label.is_label())
          throw std::invalid_argument("graph is not a plain labeled tree");
        NodeId id = static_cast<NodeId>(nodes.size());
        nodes.push_back({this->nodes[c].label.label(), {}});
        nodes[dst].children.push_back(id);
        stack.emplace_back(c, id);
      }
    }
    return UnrankedTree(std::move(nodes), 0);
  }

  BinaryTree to_binary(std::uint32_t root) const {
    std::vector<BinaryTree::Node> out{{0, BinaryTree::box, BinaryTree::box}};
    if (nodes[root].label.is_box()) return BinaryTree(std::move(out), BinaryTree::box);
    struct Item {
      std::uint32_t src;
      NodeId dst;
    };
    std::vector<Item> stack;
    auto push = [&](std::uint32_t src) -> NodeId {
      if (nodes[src].label.is_box()) return BinaryTree::box;
      if (!nodes[src].label.is_label()) throw std::invalid_argument("not a binary tree");
      NodeId id = static_cast<NodeId>(out.size());
      out.push_back({nodes[src].label.label(), BinaryTree::box, BinaryTree::box});
      stack.push_back({src, id});
      return id;
    };
    NodeId r = push(root);
    while (!stack.empty()) {
      auto [src, dst] = stack.back();
      stack.pop_back();
      const auto& ch = nodes[src].children;
      if (ch.size() != 2 && !ch.empty()) throw std::invalid_argument("not a binary tree");
      if (ch.size() == 2) {
        out[dst].left = push(ch[0]);
        out[dst].right = push(ch[1]);
      }
    }
    return BinaryTree(std::move(out), r);
  }
};

// Ordered labeled rooted dag. Node ids are assigned in post-order of first
// appearance, so children ids are always smaller than the parent id.
class Dag {
public:
  struct Node {
    DagSymbol label;
    std::int32_t annot = -1;
    std::vector<std::uint32_t> children;
  };

  Dag(std::vector<Node> nodes, std::vector<std::uint32_t> roots)
      : nodes_(std::move(nodes)), roots_(std::move(roots)) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& roots() const { return roots_; }
  std::uint32_t root() const {
    if (roots_.size() != 1) throw std::logic_error("dag has no unique root");
    return roots_[0];
  }
  const Node& node(std::uint32_t v) const { return nodes_[v]; }
  bool is_box(std::uint32_t v) const { return nodes_[v].label.is_box(); }
  bool is_leaf(std::uint32_t v) const {
    for (std::uint32_t c : nodes_[v].children)
      if (!is_box(c)) return false;
    return true;
  }

  std::uint64_t node_size() const {
    std::uint64_t n = 0;
    for (const auto& node : nodes_)
      if (!node.label.is_box()) ++n;
    return n;
  }

  // Edge size |d|: edges into placeholder nodes are not counted.
  std::uint64_t edge_size() const {
    std::uint64_t e = 0;
    for (const auto& node : nodes_)
      for (std::uint32_t c : node.children)
        if (!is_box(c)) ++e;
    return e;
  }

  std::uint64_t non_leaf_count() const {
    std::uint64_t n = 0;
    for (std::uint32_t v = 0; v < nodes_.size(); ++v)
      if (!is_box(v) && !is_leaf(v)) ++n;
    return n;
  }

  // Number of nodes in the full unfolding from v (placeholders excluded).
  std::vector<std::uint64_t> unfolded_node_counts(std::uint64_t cap) const {
    std::vector<std::uint64_t> count(nodes_.size(), 0);
    for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
      if (is_box(v)) continue;
      std::uint64_t c = 1;
      for (std::uint32_t k : nodes_[v].children) {
        if (is_box(k)) continue;
        c += count[k];
        if (c > cap) c = cap + 1;
      }
      count[v] = c;
    }
    return count;
  }

  InputGraph unfold(std::uint32_t v, std::uint64_t budget) const;

private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> roots_;
};

namespace detail {

struct ConsKey {
  std::uint64_t label;
  std::int32_t annot;
  std::vector<std::uint32_t> children;
  bool operator==(const ConsKey&) const = default;
};

struct ConsKeyHash {
  std::size_t operator()(const ConsKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.label;
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.annot)) + (h << 6) + (h >> 2);
    for (std::uint32_t c : k.children) h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

} // namespace detail

struct MinimizeResult {
  Dag dag;
  // input node -> dag node
  std::vector<std::uint32_t> node_map;
};

// Hash-consing construction of the minimal dag: two input nodes map to the
// same dag node exactly when their unfoldings coincide. Expected linear time.
inline MinimizeResult minimize_graph(const InputGraph& g) {
  std::unordered_map<detail::ConsKey, std::uint32_t, detail::ConsKeyHash> table;
  std::vector<Dag::Node> out;
  std::vector<std::uint32_t> map(g.nodes.size(), UINT32_MAX);
  std::vector<std::uint8_t> state(g.nodes.size(), 0);  // 0 new, 1 open, 2 done

  // iterative post-order over all roots
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  auto visit = [&](std::uint32_t start) {
    if (state[start] == 2) return;
    state[start] = 1;
    stack.push_back({start, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& n = g.nodes[f.v];
      if (f.next < n.children.size()) {
        std::uint32_t c = n.children[f.next++];
        if (state[c] == 1) throw std::invalid_argument("input graph contains a cycle");
        if (state[c] == 0) {
          state[c] = 1;
          stack.push_back({c, 0});
        }
        continue;
      }
      detail::ConsKey key{n.label.raw(), n.annot, {}};
      key.children.reserve(n.children.size());
      for (std::uint32_t c : n.children) key.children.push_back(map[c]);
      auto [it, inserted] = table.try_emplace(std::move(key), static_cast<std::uint32_t>(out.size()));
      if (inserted) {
        Dag::Node node{n.label, n.annot, it->first.children};
        out.push_back(std::move(node));
      }
      map[f.v] = it->second;
      state[f.v] = 2;
      stack.pop_back();
    }
  };
  for (std::uint32_t r : g.roots) visit(r);

  std::vector<std::uint32_t> roots;
  roots.reserve(g.roots.size());
  for (std::uint32_t r : g.roots) roots.push_back(map[r]);
  return MinimizeResult{Dag(std::move(out), std::move(roots)), std::move(map)};
}

inline Dag minimize(const UnrankedTree& t) { return minimize_graph(InputGraph::from(t)).dag; }
inline Dag minimize(std::span<const UnrankedTree> forest) {
  return minimize_graph(InputGraph::from(forest)).dag;
}
inline Dag minimize(const BinaryTree& b) { return minimize_graph(InputGraph::from(b)).dag; }
inline Dag minimize(std::span<const BinaryTree> forest) {
  return minimize_graph(InputGraph::from(forest)).dag;
}

inline InputGraph to_graph(const Dag& d) {
  InputGraph g;
  g.nodes.reserve(d.nodes().size());
  for (const auto& n : d.nodes()) g.nodes.push_back({n.label, n.annot, n.children});
  g.roots = d.roots();
  return g;
}

// Minimal dags are unique up to isomorphism, so canonical re-minimization
// decides isomorphism.
inline bool isomorphic(const Dag& a, const Dag& b) {
  Dag ca = minimize_graph(to_graph(a)).dag;
  Dag cb = minimize_graph(to_graph(b)).dag;
  if (ca.roots() != cb.roots() || ca.nodes().size() != cb.nodes().size()) return false;
  for (std::size_t i = 0; i < ca.nodes().size(); ++i) {
    const auto& x = ca.nodes()[i];
    const auto& y = cb.nodes()[i];
    if (x.label != y.label || x.annot != y.annot || x.children != y.children) return false;
  }
  return true;
}

inline InputGraph Dag::unfold(std::uint32_t v, std::uint64_t budget) const {
  auto counts = unfolded_node_counts(budget);
  if (counts[v] > budget)
    throw budget_exceeded("unfolding exceeds node budget of " + std::to_string(budget));
  InputGraph g;
  if (is_box(v)) {
    g.nodes.push_back({DagSymbol::make_box(), -1, {}});
    g.roots.push_back(0);
    return g;
  }
  struct Item {
    std::uint32_t src;
    std::uint32_t dst;
  };
  std::vector<Item> stack;
  g.nodes.push_back({nodes_[v].label, nodes_[v].annot, {}});
  g.roots.push_back(0);
  stack.push_back({v, 0});
  std::uint32_t box_id = UINT32_MAX;
  while (!stack.empty()) {
    auto [src, dst] = stack.back();
    stack.pop_back();
    for (std::uint32_t c : nodes_[src].children) {
      if (is_box(c)) {
        if (box_id == UINT32_MAX) {
          box_id = static_cast<std::uint32_t>(g.nodes.size());
          g.nodes.push_back({DagSymbol::make_box(), -1, {}});
        }
        g.nodes[dst].children.push_back(box_id);
        continue;
      }
      std::uint32_t id = static_cast<std::uint32_t>(g.nodes.size());
      g.nodes.push_back({nodes_[c].label, nodes_[c].annot, {}});
      g.nodes[dst].children.push_back(id);
      stack.push_back({c, id});
    }
  }
  return g;
}

constexpr std::uint64_t default_unfold_budget = 10'000'000;

// Full unfolding of a plain unranked dag node.
inline UnrankedTree eval_unranked(const Dag& d, std::uint32_t v,
                                  std::uint64_t budget = default_unfold_budget) {
  InputGraph g = d.unfold(v, budget);
  return g.to_unranked(g.roots[0]);
}

inline BinaryTree eval_binary(const Dag& d, std::uint32_t v,
                              std::uint64_t budget = default_unfold_budget) {
  InputGraph g = d.unfold(v, budget);
  return g.to_binary(g.roots[0]);
}

// ---------------------------------------------------------------------------
// Reduced regular tree grammar view of a dag: one rule per non-leaf node,
// leaf nodes inlined as labels, every right-hand side of height exactly 1.

class ReducedGrammar {
public:
  // Child entry of a rule: either another rule (nonterminal) or a leaf label.
  struct Entry {
    bool is_rule;
    std::uint32_t rule;  // valid when is_rule
    Symbol label;        // valid otherwise
    bool operator==(const Entry&) const = default;
  };
  struct Rule {
    Symbol label;
    std::vector<Entry> entries;
  };

  ReducedGrammar(std::vector<Rule> rules, std::vector<std::string> names)
      : rules_(std::move(rules)), names_(std::move(names)) {
    if (rules_.empty()) throw single_node_dag();
  }

  // Rule 0 corresponds to the dag root; rules follow descending node id.
  static ReducedGrammar from_dag(const Dag& d) {
    std::uint32_t root = d.root();
    if (d.is_leaf(root)) throw single_node_dag();
    std::vector<std::uint32_t> rule_nodes;
    for (std::uint32_t v = static_cast<std::uint32_t>(d.nodes().size()); v-- > 0;)
      if (!d.is_box(v) && !d.is_leaf(v)) rule_nodes.push_back(v);
    // the root owns the maximal id, so it comes first
    std::vector<std::uint32_t> rule_of(d.nodes().size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < rule_nodes.size(); ++i) rule_of[rule_nodes[i]] = i;
    std::vector<Rule> rules;
    std::vector<std::string> names;
    rules.reserve(rule_nodes.size());
    for (std::uint32_t v : rule_nodes) {
      const auto& n = d.node(v);
      if (!n.label.is_label()) throw std::invalid_argument("dag node without plain label");
      Rule r{n.label.label(), {}};
      for (std::uint32_t c : n.children) {
        if (d.is_box(c)) continue;
        if (d.is_leaf(c)) {
          if (!d.node(c).label.is_label())
            throw std::invalid_argument("dag leaf without plain label");
          r.entries.push_back(Entry{false, 0, d.node(c).label.label()});
        } else {
          r.entries.push_back(Entry{true, rule_of[c], 0});
        }
      }
      rules.push_back(std::move(r));
      names.push_back("A" + std::to_string(v));
    }
    return ReducedGrammar(std::move(rules), std::move(names));
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& name(std::uint32_t rule) const { return names_[rule]; }
  std::uint32_t rule_count() const { return static_cast<std::uint32_t>(rules_.size()); }

  // Total number of right-hand-side edges; equals the edge size of the dag.
  std::uint64_t size() const {
    std::uint64_t s = 0;
    for (const auto& r : rules_) s += r.entries.size();
    return s;
  }

  std::vector<std::vector<Entry>> child_sequences() const {
    std::vector<std::vector<Entry>> seqs;
    seqs.reserve(rules_.size());
    for (const auto& r : rules_) seqs.push_back(r.entries);
    return seqs;
  }

  UnrankedTree unfold(std::uint64_t budget = default_unfold_budget) const {
    // expansion sizes first, to honor the budget without materializing
    std::vector<std::uint64_t> count(rules_.size(), 0);
    for (std::uint32_t i = static_cast<std::uint32_t>(rules_.size()); i-- > 0;) {
      std::uint64_t c = 1;
      for (const auto& e : rules_[i].entries) {
        c += e.is_rule ? count[e.rule] : 1;
        if (c > budget) throw budget_exceeded("grammar unfolding exceeds node budget");
      }
      count[i] = c;
    }
    std::vector<UnrankedTree::Node> nodes;
    struct Item {
      std::uint32_t rule;
      NodeId dst;
    };
    std::vector<Item> stack;
    nodes.push_back({rules_[0].label, {}});
    stack.push_back({0, 0});
    while (!stack.empty()) {
      auto [rule, dst] = stack.back();
      stack.pop_back();
      for (const auto& e : rules_[rule].entries) {
        NodeId id = static_cast<NodeId>(nodes.size());
        nodes.push_back({e.is_rule ? rules_[e.rule].label : e.label, {}});
        nodes[dst].children.push_back(id);
        if (e.is_rule) stack.push_back({e.rule, id});
      }
    }
    return UnrankedTree(std::move(nodes), 0);
  }

private:
  std::vector<Rule> rules_;
  std::vector<std::string> names_;
};

inline ReducedGrammar reduced_grammar(const Dag& d) { return ReducedGrammar::from_dag(d); }

// ---------------------------------------------------------------------------
// text serialization: one rule per line, `A3 -> f(A1,a,A1)`, start rule
// first, placeholder rendered as `_`, hybrid root annotations as `A2:f(...)`.

namespace detail {

inline void check_serializable_label(Symbol s) {
  const std::string& name = symbol_name(s);
  if (name.size() >= 2 && name[0] == 'A') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    if (digits)
      throw std::invalid_argument("label '" + name + "' collides with nonterminal names");
  }
}

} // namespace detail

inline std::string serialize_dag(const Dag& d) {
  std::string out;
  auto render_child = [&](std::uint32_t c) {
    if (d.is_box(c)) {
      out += '_';
    } else if (d.is_leaf(c)) {
      detail::check_serializable_label(d.node(c).label.label());
      out += symbol_name(d.node(c).label.label());
    } else {
      out += 'A';
      out += std::to_string(c);
    }
  };
  auto render_rule = [&](std::uint32_t v) {
    const auto& n = d.node(v);
    out += 'A';
    out += std::to_string(v);
    out += " -> ";
    if (n.annot >= 0) {
      out += 'A';
      out += std::to_string(n.annot);
      out += ':';
    }
    detail::check_serializable_label(n.label.label());
    out += symbol_name(n.label.label());
    if (!n.children.empty()) {
      out += '(';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ',';
        render_child(n.children[i]);
      }
      out += ')';
    }
    out += '\n';
  };

  std::vector<bool> emitted(d.nodes().size(), false);
  for (std::uint32_t r : d.roots()) {
    if (emitted[r]) continue;
    emitted[r] = true;
    render_rule(r);
  }
  for (std::uint32_t v = static_cast<std::uint32_t>(d.nodes().size()); v-- > 0;) {
    if (emitted[v] || d.is_box(v) || d.is_leaf(v)) continue;
    render_rule(v);
  }
  return out;
}

// Parses the rule format back into a dag. Node ids are reassigned
// canonically; the first rule becomes the root.
inline Dag parse_dag(std::string_view text) {
  struct RawRule {
    std::string name;
    std::int32_t annot;
    std::string label;
    std::vector<std::string> children;  // "_" | name | label
  };
  std::vector<RawRule> raw;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void { throw parse_error(msg, pos); };
  auto token = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  };
  auto skip_spaces = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  while (pos < text.size()) {
    skip_spaces();
    if (pos < text.size() && text[pos] == '\n') {
      ++pos;
      continue;
    }
    if (pos >= text.size()) break;
    RawRule r;
    r.annot = -1;
    r.name = token();
    skip_spaces();
    if (text.substr(pos, 2) != "->") fail("expected '->'");
    pos += 2;
    skip_spaces();
    std::string head = token();
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      if (head.size() < 2 || head[0] != 'A') fail("bad annotation");
      r.annot = static_cast<std::int32_t>(std::stoul(head.substr(1)));
      head = token();
    }
    r.label = head;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      for (;;) {
        skip_spaces();
        r.children.push_back(token());
        skip_spaces();
        if (pos >= text.size()) fail("unterminated rule");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    skip_spaces();
    if (pos < text.size() && text[pos] != '\n') fail("trailing characters in rule");
    raw.push_back(std::move(r));
  }
  if (raw.empty()) throw parse_error("no rules", 0);

  std::unordered_map<std::string, std::uint32_t> rule_index;
  for (std::uint32_t i = 0; i < raw.size(); ++i)
    if (!rule_index.try_emplace(raw[i].name, i).second) throw parse_error("duplicate rule", 0);

  InputGraph g;
  std::unordered_map<std::string, std::uint32_t> leaf_of;
  std::uint32_t box_id = UINT32_MAX;
  std::vector<std::uint32_t> node_of(raw.size(), UINT32_MAX);
  // create one graph node per rule up front, children resolved after
  for (std::uint32_t i = 0; i < raw.size(); ++i) {
    node_of[i] = static_cast<std::uint32_t>(g.nodes.size());
    g.nodes.push_back({DagSymbol::from_label(intern(raw[i].label)), raw[i].annot, {}});
  }
  auto leaf_node = [&](const std::string& label) {
    auto [it, inserted] = leaf_of.try_emplace(label, static_cast<std::uint32_t>(g.nodes.size()));
    if (inserted) g.nodes.push_back({DagSymbol::from_label(intern(label)), -1, {}});
    return it->second;
  };
  for (std::uint32_t i = 0; i < raw.size(); ++i) {
    for (const auto& c : raw[i].children) {
      if (c == "_") {
        if (box_id == UINT32_MAX) {
          box_id = static_cast<std::uint32_t>(g.nodes.size());
          g.nodes.push_back({DagSymbol::make_box(), -1, {}});
        }
        g.nodes[node_of[i]].children.push_back(box_id);
      } else if (auto it = rule_index.find(c); it != rule_index.end()) {
        g.nodes[node_of[i]].children.push_back(node_of[it->second]);
      } else {
        g.nodes[node_of[i]].children.push_back(leaf_node(c));
      }
    }
  }
  // roots: annotated nodes in annotation order when present, else first rule
  std::vector<std::pair<std::int32_t, std::uint32_t>> annotated;
  for (std::uint32_t i = 0; i < raw.size(); ++i)
    if (raw[i].annot >= 0) annotated.emplace_back(raw[i].annot, node_of[i]);
  if (annotated.empty()) {
    g.roots.push_back(node_of[0]);
  } else {
    std::sort(annotated.begin(), annotated.end());
    for (auto& [a, v] : annotated) g.roots.push_back(v);
  }
  return minimize_graph(g).dag;
}

} // namespace treedag
