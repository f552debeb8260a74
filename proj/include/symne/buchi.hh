#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symne/arena.hh"
#include "symne/ltl.hh"

namespace symne
{
  /// at(player, state) or its negation.
  struct buchi_literal
  {
    player_id player;
    state_id state;
    bool positive;

    bool operator==(const buchi_literal&) const = default;
    auto operator<=>(const buchi_literal&) const = default;
  };

  /// Transition taken on a letter satisfying every literal of `label`.
  struct buchi_edge
  {
    std::vector<buchi_literal> label;
    std::uint32_t target;
  };

  /// State-based nondeterministic Buchi automaton over configurations.
  /// A run reads letter w_k on the edge leaving its k-th state.
  struct buchi_automaton
  {
    std::vector<std::vector<buchi_edge>> edges;
    std::vector<bool> accepting;
    std::vector<std::uint32_t> initial;

    std::size_t size() const noexcept
    {
      return edges.size();
    }
  };

  bool label_holds(std::span<const buchi_literal> label,
                   const configuration& t);

  /// Tableau translation: states are sets of negation-normal-form
  /// obligations expanded on the fly; the generalized condition (one set
  /// per until) is degeneralized with a level counter.
  buchi_automaton to_buchi(const formula& f);

  /// Whether the automaton accepts prefix . cycle^omega.
  bool buchi_accepts(const buchi_automaton& a, const lasso& w);

  /// Graphviz rendering, states and edges in index order.
  std::string buchi_to_dot(const buchi_automaton& a, const arena& ar);
}
