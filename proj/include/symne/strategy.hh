#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symne/arena.hh"
#include "symne/ltl.hh"
#include "symne/network.hh"
#include "symne/observation.hh"

namespace symne
{
  class symmetric_representation;

  /// Finite-memory strategy fed with observation keys.
  ///
  /// In memory q, observing key k, the strategy plays act(q,k) and moves to
  /// memory next(q,k).  Tables are indexed [q * keys->size() + k].  One
  /// memory state means memoryless.
  struct moore_strategy
  {
    std::uint32_t memory = 1;
    std::uint32_t initial = 0;
    std::shared_ptr<const std::vector<std::string>> keys;
    std::vector<action_id> act;
    std::vector<std::uint32_t> next;

    std::size_t key_count() const noexcept
    {
      return keys ? keys->size() : 0;
    }

    /// Throws undefined_key.
    std::uint32_t slot_of(const std::string& key) const;

    action_id action(std::uint32_t q, std::uint32_t slot) const
    {
      return act[q * key_count() + slot];
    }

    std::uint32_t update(std::uint32_t q, std::uint32_t slot) const
    {
      return next[q * key_count() + slot];
    }

    bool operator==(const moore_strategy& other) const;
  };

  /// Every total Moore machine with m memory states over a key domain that
  /// plays allowed actions, in canonical order: cells (q, key) with q
  /// major and keys sorted, the first cell most significant, and the
  /// choices of a cell ordered by (action, next memory).
  class strategy_space
  {
  public:
    strategy_space(key_domain domain, std::uint32_t memory);

    /// Exact count, saturated at UINT64_MAX.
    std::uint64_t size() const noexcept
    {
      return size_;
    }

    std::uint32_t memory() const noexcept
    {
      return memory_;
    }

    const key_domain& domain() const noexcept
    {
      return domain_;
    }

    /// The index-th strategy, index < size().
    moore_strategy at(std::uint64_t index) const;

  private:
    key_domain domain_;
    std::shared_ptr<const std::vector<std::string>> keys_;
    std::uint32_t memory_;
    std::uint64_t size_;
  };

  /// Deterministic stream over a strategy_space.
  class strategy_stream
  {
  public:
    explicit strategy_stream(strategy_space space)
      : space_(std::move(space))
    {
    }

    std::optional<moore_strategy> next();

    const strategy_space& space() const noexcept
    {
      return space_;
    }

  private:
    strategy_space space_;
    std::uint64_t index_ = 0;
  };

  /// Candidate witnesses for a symmetric profile with memory bound m.
  strategy_stream enumerate_strategies(const game_network& g,
                                       const symmetric_representation& rep,
                                       std::uint32_t m);

  std::uint64_t candidate_count(const game_network& g,
                                const symmetric_representation& rep,
                                std::uint32_t m);

  /// Re-indexes a strategy (e.g. read from a file) onto a domain's keys.
  /// Throws undefined_key when a domain key has no entry and
  /// malformed_input when an entry plays a disallowed action.
  moore_strategy bind_to_domain(const moore_strategy& s, const key_domain& dom,
                                const arena& ar);

  /// Strategy profile over an explored game: player i runs strategy[i] on
  /// the key slots slot[i].
  struct profile
  {
    const game_network* game = nullptr;
    const reachable_set* reach = nullptr;
    std::vector<const moore_strategy*> strategy;
    std::vector<const std::vector<std::uint32_t>*> slot;

    action_id action(player_id i, std::uint32_t q,
                     std::uint32_t config) const
    {
      return strategy[i]->action(q, (*slot[i])[config]);
    }

    std::uint32_t update(player_id i, std::uint32_t q,
                         std::uint32_t config) const
    {
      return strategy[i]->update(q, (*slot[i])[config]);
    }
  };

  /// Every player runs sigma0; player i's key
  /// stream is player 0's template read through pi_{0,i}.
  profile symmetric_profile(const game_network& g, const reachable_set& reach,
                            const key_domain& dom,
                            const moore_strategy& sigma0);

  /// Joint state of a profile run: configuration index and memories.
  struct profile_state
  {
    std::uint32_t config;
    std::vector<std::uint32_t> memory;

    bool operator==(const profile_state&) const = default;
  };

  /// Runs the profile from `from` until a profile state repeats.
  lasso simulate_outcome(const profile& p, std::uint32_t from);

  /// The outcome of the symmetric profile generated by sigma0 from `from`
  /// (a configuration reachable from g.initial).
  lasso outcome_lasso(const game_network& g,
                      const symmetric_representation& rep,
                      const moore_strategy& sigma0, const configuration& from);
}
