#include "symne/strategy.hh"

#include <algorithm>
#include <limits>
#include <map>

#include "symne/error.hh"
#include "symne/symmetry.hh"

namespace symne
{
  std::uint32_t moore_strategy::slot_of(const std::string& key) const
  {
    if (keys)
      {
        auto it = std::lower_bound(keys->begin(), keys->end(), key);
        if (it != keys->end() && *it == key)
          return static_cast<std::uint32_t>(it - keys->begin());
      }
    throw error(errc::undefined_key, "strategy has no entry for '" + key
                + "'");
  }

  bool moore_strategy::operator==(const moore_strategy& other) const
  {
    auto key_list = [](const moore_strategy& s) {
      return s.keys ? *s.keys : std::vector<std::string>{};
    };
    return memory == other.memory && initial == other.initial
      && act == other.act && next == other.next
      && key_list(*this) == key_list(other);
  }

  strategy_space::strategy_space(key_domain domain, std::uint32_t memory)
    : domain_(std::move(domain)),
      keys_(std::make_shared<const std::vector<std::string>>(domain_.keys)),
      memory_(memory)
  {
    if (memory_ < 1)
      throw error(errc::malformed_input, "memory bound must be at least 1");
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    size_ = 1;
    for (std::uint32_t q = 0; q < memory_; ++q)
      for (const auto& allowed: domain_.allowed)
        {
          std::uint64_t radix = allowed.size() * std::uint64_t{memory_};
          size_ = size_ > cap / radix ? cap : size_ * radix;
        }
  }

  moore_strategy strategy_space::at(std::uint64_t index) const
  {
    const std::size_t k = domain_.size();
    moore_strategy s;
    s.memory = memory_;
    s.initial = 0;
    s.keys = keys_;
    s.act.resize(memory_ * k);
    s.next.resize(memory_ * k);
    for (std::size_t cell = memory_ * k; cell-- > 0;)
      {
        const auto& allowed = domain_.allowed[cell % k];
        const std::uint64_t radix = allowed.size() * std::uint64_t{memory_};
        const std::uint64_t digit = index % radix;
        index /= radix;
        s.act[cell] = allowed[digit / memory_];
        s.next[cell] = static_cast<std::uint32_t>(digit % memory_);
      }
    return s;
  }

  std::optional<moore_strategy> strategy_stream::next()
  {
    if (index_ >= space_.size())
      return std::nullopt;
    return space_.at(index_++);
  }

  strategy_stream enumerate_strategies(const game_network& g,
                                       const symmetric_representation& rep,
                                       std::uint32_t m)
  {
    reachable_set reach = explore(g);
    return strategy_stream(
        strategy_space(symmetric_key_domain(g, rep, reach), m));
  }

  std::uint64_t candidate_count(const game_network& g,
                                const symmetric_representation& rep,
                                std::uint32_t m)
  {
    reachable_set reach = explore(g);
    return strategy_space(symmetric_key_domain(g, rep, reach), m).size();
  }

  moore_strategy bind_to_domain(const moore_strategy& s, const key_domain& dom,
                                const arena& ar)
  {
    if (s.memory < 1 || s.initial >= s.memory)
      throw error(errc::malformed_input, "initial memory "
                  + std::to_string(s.initial) + " out of range");
    const std::size_t k = dom.size();
    moore_strategy out;
    out.memory = s.memory;
    out.initial = s.initial;
    out.keys = std::make_shared<const std::vector<std::string>>(dom.keys);
    out.act.resize(s.memory * k);
    out.next.resize(s.memory * k);
    for (std::size_t slot = 0; slot < k; ++slot)
      {
        const std::uint32_t from = s.slot_of(dom.keys[slot]);
        for (std::uint32_t q = 0; q < s.memory; ++q)
          {
            action_id a = s.action(q, from);
            std::uint32_t q2 = s.update(q, from);
            if (!std::binary_search(dom.allowed[slot].begin(),
                                    dom.allowed[slot].end(), a))
              throw error(errc::malformed_input, "action '"
                          + ar.actions.at(a) + "' is not available in class '"
                          + dom.keys[slot] + "'");
            if (q2 >= s.memory)
              throw error(errc::malformed_input, "memory target "
                          + std::to_string(q2) + " out of range");
            out.act[q * k + slot] = a;
            out.next[q * k + slot] = q2;
          }
      }
    return out;
  }

  profile symmetric_profile(const game_network& g, const reachable_set& reach,
                            const key_domain& dom,
                            const moore_strategy& sigma0)
  {
    profile p;
    p.game = &g;
    p.reach = &reach;
    for (player_id i = 0; i < g.n; ++i)
      {
        p.strategy.push_back(&sigma0);
        p.slot.push_back(&dom.slot.at(i));
      }
    return p;
  }

  lasso simulate_outcome(const profile& p, std::uint32_t from)
  {
    const game_network& g = *p.game;
    const reachable_set& reach = *p.reach;
    const arena& ar = g.arena;

    std::vector<profile_state> trace;
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    profile_state cur{from, std::vector<std::uint32_t>(g.n)};
    for (player_id i = 0; i < g.n; ++i)
      cur.memory[i] = p.strategy[i]->initial;

    auto flat = [](const profile_state& s) {
      std::vector<std::uint32_t> v{s.config};
      v.insert(v.end(), s.memory.begin(), s.memory.end());
      return v;
    };

    configuration next(g.n);
    for (;;)
      {
        auto [it, fresh] = seen.try_emplace(flat(cur), trace.size());
        if (!fresh)
          {
            lasso w;
            for (std::size_t k = 0; k < trace.size(); ++k)
              (k < it->second ? w.prefix : w.cycle)
                .push_back(reach.configs[trace[k].config]);
            return w;
          }
        trace.push_back(cur);
        const configuration& t = reach.configs[cur.config];
        profile_state succ{0, std::vector<std::uint32_t>(g.n)};
        for (player_id i = 0; i < g.n; ++i)
          {
            action_id a = p.action(i, cur.memory[i], cur.config);
            next[i] = *ar.tab[t[i]][a];
            succ.memory[i] = p.update(i, cur.memory[i], cur.config);
          }
        succ.config = reach.id(next);
        cur = std::move(succ);
      }
  }

  lasso outcome_lasso(const game_network& g,
                      const symmetric_representation& rep,
                      const moore_strategy& sigma0, const configuration& from)
  {
    reachable_set reach = explore(g);
    key_domain dom = symmetric_key_domain(g, rep, reach);
    moore_strategy bound = bind_to_domain(sigma0, dom, g.arena);
    return simulate_outcome(symmetric_profile(g, reach, dom, bound),
                            reach.id(from));
  }
}
