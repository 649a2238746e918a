#pragma once

#include <cstdint>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treedag {

// Interned node label. Identity is string equality; ids are dense and stable
// for the lifetime of the process.
using Symbol = std::uint32_t;

namespace detail {

class symbol_pool {
public:
  static symbol_pool& instance() {
    static symbol_pool pool;
    return pool;
  }

  Symbol intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      auto it = ids_.find(std::string(name));
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<Symbol>(names_.size()));
    if (inserted) names_.push_back(it->first);
    return it->second;
  }

  const std::string& name(Symbol s) const {
    std::shared_lock lock(mutex_);
    return names_.at(s);
  }

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Symbol> ids_;
  std::vector<std::string> names_;
};

} // namespace detail

// The placeholder for an absent child is not a label; "_" is its textual
// rendering and is reserved in every interface.
inline bool is_reserved_label(std::string_view name) {
  return name.empty() || name == "_" || name == "□";
}

inline Symbol intern(std::string_view name) {
  if (is_reserved_label(name))
    throw std::invalid_argument("reserved or empty label: '" + std::string(name) + "'");
  return detail::symbol_pool::instance().intern(name);
}

inline const std::string& symbol_name(Symbol s) {
  return detail::symbol_pool::instance().name(s);
}

} // namespace treedag
