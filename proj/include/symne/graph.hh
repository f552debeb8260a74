#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symne
{
  /// Finite graph with Buchi-accepting nodes.  Successor lists are kept in
  /// the order the caller considers canonical.
  struct explicit_graph
  {
    std::vector<std::vector<std::uint32_t>> succ;
    std::vector<bool> accepting;

    std::uint32_t add_node(bool accept)
    {
      succ.emplace_back();
      accepting.push_back(accept);
      return static_cast<std::uint32_t>(succ.size() - 1);
    }

    std::size_t size() const noexcept
    {
      return succ.size();
    }
  };

  /// Path prefix followed by a cycle whose first node is accepting.
  struct node_lasso
  {
    std::vector<std::uint32_t> prefix;
    std::vector<std::uint32_t> cycle;
  };

  /// Reachable accepting cycle, found through strongly connected
  /// components.  The accepting node chosen is the first one in
  /// breadth-first order from `initial` lying on a cycle; the prefix and the
  /// cycle are shortest paths under the successor order.  Deterministic.
  std::optional<node_lasso>
  find_accepting_lasso(const explicit_graph& g,
                       std::span<const std::uint32_t> initial);

  /// Backslash-escapes quotes and backslashes for a DOT string literal.
  std::string dot_escape(std::string_view s);
}
