#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treedag {

struct parse_error : std::runtime_error {
  std::size_t offset;
  parse_error(std::string msg, std::size_t off)
      : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct xml_error : parse_error {
  using parse_error::parse_error;
};

// Unfolding or expansion would exceed the configured output budget.
struct budget_exceeded : std::runtime_error {
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct single_node_dag : std::runtime_error {
  single_node_dag() : std::runtime_error("dag consists of a single node") {}
};

struct not_right_regular : std::runtime_error {
  explicit not_right_regular(const std::string& what) : std::runtime_error(what) {}
};

struct non_minimal_compressed_dag : std::runtime_error {
  non_minimal_compressed_dag() : std::runtime_error("compressed dag is not minimal") {}
};

struct invariant_violation : std::logic_error {
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

} // namespace treedag
