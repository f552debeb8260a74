#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symne/arena.hh"
#include "symne/ltl.hh"
#include "symne/observation.hh"
#include "symne/permutation.hh"

namespace symne
{
  /// Problem constraints: players required to win and to lose.
  struct constraints
  {
    std::vector<player_id> winners;
    std::vector<player_id> losers;

    bool operator==(const constraints&) const = default;
  };

  /// n copies of an arena, player 0's observation and objective, the base
  /// permutations pi_{0,i} and the query.  Built by validate_network().
  struct game_network
  {
    symne::arena arena;
    std::size_t n = 0;
    std::vector<permutation> base_perms;
    obs_template observation;
    formula objective;
    std::string objective_text;
    configuration initial;
    constraints goal;
  };

  /// Unvalidated game description, as read from a game file.
  struct raw_network
  {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::map<std::string, std::vector<std::string>> mov;
    std::map<std::string, std::map<std::string, std::string>> tab;
    /// Optional copy tags: state -> (base label, copy index).
    std::map<std::string, std::pair<std::string, std::uint32_t>> copies;
    std::int64_t players = 0;
    std::vector<std::vector<std::int64_t>> base_perms;
    std::vector<std::pair<obs_atom::kind, std::vector<std::int64_t>>>
      observation;
    std::string objective;
    std::vector<std::string> initial;
    std::vector<std::int64_t> winners;
    std::vector<std::int64_t> losers;
  };

  /// Checks well-formedness and builds the network.  Player i's legal
  /// moves in configuration t are mov(t[i]).
  game_network validate_network(const raw_network& raw);

  /// Inverse of validate_network().
  raw_network describe(const game_network& g);

  /// Player i's available actions at t.
  const std::vector<action_id>& product_moves(const game_network& g,
                                              const configuration& t,
                                              player_id i);

  /// Componentwise successor of t under the move vector.
  configuration product_step(const game_network& g, const configuration& t,
                             std::span<const action_id> moves);

  /// Configurations reachable from the initial one under all legal moves,
  /// in breadth-first discovery order.
  struct reachable_set
  {
    std::vector<configuration> configs;
    std::unordered_map<configuration, std::uint32_t, configuration_hash>
      index;

    std::size_t size() const noexcept
    {
      return configs.size();
    }

    /// Index of t; throws index_out_of_range when t is unreachable.
    std::uint32_t id(const configuration& t) const;
  };

  reachable_set explore(const game_network& g,
                        std::uint64_t node_budget = 10'000'000);
}
