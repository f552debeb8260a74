#pragma once

#include <span>
#include <string>
#include <vector>

#include "symne/arena.hh"

namespace symne
{
  struct game_network;
  class symmetric_representation;
  struct reachable_set;

  /// One conjunct of an observation template.
  ///
  ///  - id:    the states of `players`, in ascending index order.
  ///  - count: how many of `players` sit in each state.
  ///  - copy:  the copy tags of `players` (only meaningful on arenas
  ///           produced by desymmetrize()).
  struct obs_atom
  {
    enum class kind
    {
      id,
      count,
      copy,
    };

    kind type = kind::id;
    std::vector<player_id> players;

    bool operator==(const obs_atom&) const = default;
  };

  /// Player 0's observation; an empty template is a blind player.
  using obs_template = std::vector<obs_atom>;

  /// Canonical key of template `obs` applied to t, e.g.
  /// "id:[on];cnt:{off:1,on:1}".
  std::string template_key(const arena& ar, const obs_template& obs,
                           const configuration& t);

  /// Information-set key of player i at t: player 0's template read on
  /// t(pi_{0,i}).
  std::string obs_key(const game_network& g,
                      const symmetric_representation& rep, player_id i,
                      const configuration& t);

  /// t ~_i u.
  bool equiv(const game_network& g, const symmetric_representation& rep,
             player_id i, const configuration& t, const configuration& u);

  /// Actions available to player i in every reachable configuration whose
  /// key is `key`.  Throws no_uniform_action when that set is empty and
  /// undefined_key when no reachable configuration has this key.
  std::vector<action_id>
  allowed_actions_for_class(const game_network& g,
                            const symmetric_representation& rep, player_id i,
                            const std::string& key,
                            const reachable_set& reach);

  /// The observation classes a strategy has to answer for.
  struct key_domain
  {
    /// Sorted key strings.
    std::vector<std::string> keys;
    /// Actions uniformly available in each class.
    std::vector<std::vector<action_id>> allowed;
    /// slot[i][c]: index in `keys` of player i's key at reachable
    /// configuration c; empty for players this domain does not serve.
    std::vector<std::vector<std::uint32_t>> slot;

    std::size_t size() const noexcept
    {
      return keys.size();
    }
  };

  /// Domain shared by all players of a symmetric profile: every key some
  /// player can observe at a reachable configuration.
  key_domain symmetric_key_domain(const game_network& g,
                                  const symmetric_representation& rep,
                                  const reachable_set& reach);

  /// Domain of player i alone, for non-symmetric profiles.
  key_domain player_key_domain(const game_network& g,
                               const symmetric_representation& rep,
                               const reachable_set& reach, player_id i);
}
