#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symne/buchi.hh"
#include "symne/ltl.hh"
#include "symne/network.hh"
#include "symne/strategy.hh"
#include "symne/symmetry.hh"

namespace symne
{
  /// Resource guards.  The procedure is exponential in the number of
  /// players; budgets make blowup fail loudly.  `candidates` caps how many
  /// candidates a search examines: an answer inside the cap is returned,
  /// and running past it without one is budget_exceeded.  `nodes` caps
  /// every explicit graph (reachable set, deviation graph, product).
  struct budgets
  {
    std::uint64_t candidates = 1'000'000;
    std::uint64_t nodes = 10'000'000;
    unsigned jobs = 1;
  };

  /// Outcome of a profile and who wins it.
  struct verdict
  {
    std::vector<player_id> winners;
    lasso outcome;
    std::vector<int> payoff;
  };

  /// A play player `player` can force alone against the others' fixed
  /// strategies, and which satisfies its objective.
  struct deviation_witness
  {
    player_id player = 0;
    std::vector<action_id> prefix_actions;
    std::vector<action_id> cycle_actions;
    lasso play;
  };

  /// Statement that the deviation product of `player` has no reachable
  /// accepting cycle.
  struct no_deviation
  {
    player_id player = 0;
    std::size_t product_nodes = 0;
  };

  /// An accepted profile.  `strategies` holds sigma0 alone for symmetric
  /// profiles and one strategy per player otherwise.
  struct solution
  {
    bool symmetric = true;
    std::vector<moore_strategy> strategies;
    verdict result;
    std::vector<no_deviation> certificates;
  };

  struct rejection
  {
    enum class clause
    {
      missing_winner,
      loser_wins,
      profitable_deviation,
    };

    clause reason = clause::missing_winner;
    player_id player = 0;
    std::optional<deviation_witness> deviation;

    std::string describe(const arena& ar) const;
  };

  using check_result = std::variant<solution, rejection>;

  /// Game data shared read-only by every candidate check: the
  /// representation, reachable configurations, per-player objectives and
  /// their automata.
  class game_context
  {
  public:
    explicit game_context(game_network g,
                          std::uint64_t node_budget = budgets{}.nodes);

    const game_network& game() const noexcept
    {
      return game_;
    }

    const symmetric_representation& rep() const noexcept
    {
      return rep_;
    }

    const reachable_set& reach() const noexcept
    {
      return reach_;
    }

    const formula& objective(player_id i) const
    {
      return objectives_.at(i);
    }

    const buchi_automaton& automaton(player_id i) const
    {
      return automata_.at(i);
    }

    std::uint64_t node_budget() const noexcept
    {
      return node_budget_;
    }

  private:
    game_network game_;
    symmetric_representation rep_;
    reachable_set reach_;
    std::vector<formula> objectives_;
    std::vector<buchi_automaton> automata_;
    std::uint64_t node_budget_;
  };

  verdict compute_verdict(const game_context& ctx, const profile& p);

  /// One-player game left to player i when every other player follows p.
  /// Node 0 is the initial node; each node records its configuration
  /// index and the others' memories (entry i is 0), and has one edge per
  /// action of player i, in action order.
  struct deviation_graph
  {
    player_id deviator = 0;
    std::vector<std::uint32_t> config;
    std::vector<std::vector<std::uint32_t>> memory;
    std::vector<std::vector<std::pair<action_id, std::uint32_t>>> succ;

    std::size_t size() const noexcept
    {
      return config.size();
    }
  };

  deviation_graph build_deviation_graph(const game_context& ctx,
                                        const profile& p, player_id i);

  std::string deviation_graph_to_dot(const game_context& ctx,
                                     const deviation_graph& d);

  /// Reachable configurations and all joint moves between them.
  std::string product_game_to_dot(const game_context& ctx);

  /// Searches the product of player i's deviation graph (others follow p)
  /// with the automaton of its objective for an accepting cycle.
  /// `explored`, when given, receives the product size.
  std::optional<deviation_witness>
  check_deviation(const game_context& ctx, const profile& p, player_id i,
                  std::size_t* explored = nullptr);

  /// Accepts when every required winner wins, no required loser wins and
  /// no losing player has a profitable deviation.
  check_result check_profile(const game_context& ctx, const profile& p,
                             const constraints& goal, bool symmetric,
                             std::vector<moore_strategy> strategies);

  /// Strategies re-indexed onto their key domains in `ctx`, as a
  /// profile.  One strategy means the symmetric profile it generates; n
  /// strategies mean one per player.  Not copyable: the profile points
  /// into the object.
  class bound_profile
  {
  public:
    bound_profile(const game_context& ctx,
                  const std::vector<moore_strategy>& sigmas);
    bound_profile(const bound_profile&) = delete;
    bound_profile& operator=(const bound_profile&) = delete;

    const profile& get() const noexcept
    {
      return profile_;
    }

    bool symmetric() const noexcept
    {
      return symmetric_;
    }

    const std::vector<moore_strategy>& strategies() const noexcept
    {
      return strategies_;
    }

    check_result check(const constraints& goal) const;

  private:
    const game_context* ctx_;
    bool symmetric_;
    std::vector<key_domain> domains_;
    std::vector<moore_strategy> strategies_;
    profile profile_;
  };

  /// Convenience forms over the symmetric profile generated by sigma0.
  /// check_deviation() here only reports profitable deviations, so it is
  /// empty for a player who already wins.
  verdict winners(const game_network& g, const moore_strategy& sigma0);
  std::optional<deviation_witness>
  check_deviation(const game_network& g, const moore_strategy& sigma0,
                  player_id i);
  check_result check_profile(const game_network& g,
                             const moore_strategy& sigma0,
                             const constraints& goal);

  /// Non-symmetric profile given one strategy per player.
  check_result check_general_profile(const game_network& g,
                                     const std::vector<moore_strategy>& sigmas,
                                     const constraints& goal);

  /// First (in canonical order) symmetric equilibrium with memory bound m
  /// meeting `goal`.  W = [n] asks for positive existence, W = L = {} for
  /// plain existence.
  std::optional<solution> find_symmetric_ne(const game_network& g,
                                            const constraints& goal,
                                            std::uint32_t m,
                                            const budgets& limits = {});

  /// First equilibrium among profiles of independent per-player strategies
  /// with memory bound m; player 0's choice is the most significant.
  std::optional<solution> find_ne_general(const game_network& g,
                                          const constraints& goal,
                                          std::uint32_t m,
                                          const budgets& limits = {});

  /// Smallest index in [0, count) satisfying accept, evaluated on up to
  /// `jobs` threads.  The answer does not depend on `jobs`.  An exception
  /// raised at an index below the answer is rethrown.
  std::optional<std::uint64_t>
  first_accepted(std::uint64_t count, unsigned jobs,
                 const std::function<bool(std::uint64_t)>& accept);
}
