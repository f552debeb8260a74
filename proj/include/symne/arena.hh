#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symne
{
  using state_id = std::uint32_t;
  using action_id = std::uint32_t;
  using player_id = std::uint32_t;

  /// Local state of every player; position k holds player k's state.
  using configuration = std::vector<state_id>;

  struct configuration_hash
  {
    std::size_t operator()(const configuration& t) const noexcept;
  };

  /// One-player arena, copied once per player in a game network.
  ///
  /// States are stored in lexicographic order, actions in the order the
  /// game file declares them; index order is the canonical order.  `tab` is
  /// defined exactly on the pairs (s, a) with a in mov[s].
  ///
  /// Arenas produced by desymmetrize() carry a copy tag per state: `base`
  /// is the label observation atoms see and `copy` the copy index.  For
  /// untagged arenas base[s] == states[s] and copy[s] == 0.
  struct arena
  {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::vector<std::vector<action_id>> mov;
    std::vector<std::vector<std::optional<state_id>>> tab;
    std::vector<std::string> base;
    std::vector<std::uint32_t> copy;
    bool copy_tagged = false;

    std::size_t num_states() const noexcept
    {
      return states.size();
    }

    std::optional<state_id> find_state(std::string_view name) const;
    std::optional<action_id> find_action(std::string_view name) const;

    /// "(a,b)" rendering of a configuration.
    std::string format(const configuration& t) const;
  };
}
