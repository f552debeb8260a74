#pragma once

#include <span>
#include <string>
#include <vector>

#include "symne/arena.hh"
#include "symne/ltl.hh"
#include "symne/permutation.hh"

namespace symne
{
  struct game_network;
  struct moore_strategy;

  /// The family pi_{i,j} = pi_{0,j} o pi_{0,i}^{-1}.
  ///
  /// pi_{i,j}(k) = l reads "l is to j what k is to i".  Deriving the family
  /// from the n base permutations makes pi_{i,i} = id,
  /// pi_{k,j} o pi_{i,k} = pi_{i,j} and pi_{i,j}(i) = j hold by
  /// construction; build_representation() still checks them.
  class symmetric_representation
  {
  public:
    symmetric_representation() = default;

    std::size_t size() const noexcept
    {
      return n_;
    }

    /// pi_{i,j}
    const permutation& operator()(player_id i, player_id j) const
    {
      return family_.at(i * n_ + j);
    }

  private:
    friend symmetric_representation
    build_representation(std::span<const permutation> base_perms);

    std::size_t n_ = 0;
    std::vector<permutation> family_;
  };

  /// Derives the family from pi_{0,0}, ..., pi_{0,n-1}.  Throws
  /// not_a_bijection(i), base_anchor_violated(i) when pi_{0,i}(0) != i, or
  /// length_mismatch.
  symmetric_representation
  build_representation(std::span<const permutation> base_perms);

  /// Number of (i,j,k) triples breaking one of the three composition laws.
  std::size_t count_law_violations(const symmetric_representation& rep);

  /// t(p): result[k] = t[p(k)].
  configuration permute_config(const configuration& t, const permutation& p);

  std::vector<configuration> permute_play(std::span<const configuration> play,
                                          const permutation& p);

  lasso permute_lasso(const lasso& w, const permutation& p);

  /// Action of player i in the symmetric profile generated by sigma0, after
  /// observing `obs_history` (player i's own keys, oldest first).  This is
  /// sigma0 run on the stream; the profile is symmetric by construction.
  action_id derive_profile_action(const moore_strategy& sigma0,
                                  std::span<const std::string> obs_history);

  /// Same as above, starting from the configurations of a history.
  action_id profile_action(const game_network& g,
                           const symmetric_representation& rep,
                           const moore_strategy& sigma0, player_id i,
                           std::span<const configuration> history);

  /// Network whose symmetric equilibria are the equilibria of g.
  ///
  /// The arena becomes n disconnected copies: state (s,c) for s in g and
  /// c in [n], with transitions inside each copy.  Player i starts in copy
  /// i.  Observation atoms read base states and a copy atom on player 0 is
  /// appended, so player i observes exactly its information in g plus its
  /// own index.  Objective atoms at(k,s) become the disjunction over c of
  /// at(k,(s,c)).
  game_network desymmetrize(const game_network& g);

  /// Name of copy c of state s in desymmetrize()'s output.
  std::string copy_state_name(const std::string& s, std::size_t c);
}
