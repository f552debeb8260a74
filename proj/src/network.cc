#include "symne/network.hh"

#include <algorithm>
#include <deque>
#include <set>

#include "symne/error.hh"
#include "symne/symmetry.hh"

namespace symne
{
  namespace
  {
    std::vector<std::string> sorted_unique(std::vector<std::string> names,
                                           const char* what)
    {
      std::sort(names.begin(), names.end());
      auto dup = std::adjacent_find(names.begin(), names.end());
      if (dup != names.end())
        throw error(errc::malformed_input,
                    std::string("duplicate ") + what + " '" + *dup + "'");
      return names;
    }

    std::vector<player_id> player_set(const std::vector<std::int64_t>& raw,
                                      std::size_t n, const char* what)
    {
      std::set<player_id> out;
      for (std::int64_t p: raw)
        {
          if (p < 0 || static_cast<std::uint64_t>(p) >= n)
            throw error(errc::player_out_of_range,
                        std::string(what) + " mentions player "
                        + std::to_string(p));
          out.insert(static_cast<player_id>(p));
        }
      return {out.begin(), out.end()};
    }
  }

  game_network validate_network(const raw_network& raw)
  {
    game_network g;
    arena& ar = g.arena;
    if (raw.states.empty())
      throw error(errc::malformed_input, "arena has no states");
    ar.states = sorted_unique(raw.states, "state");
    ar.actions = raw.actions;
    sorted_unique(raw.actions, "action");

    for (const auto& [s, _]: raw.mov)
      if (!ar.find_state(s))
        throw error(errc::unknown_state, "'" + s + "' in mov");
    for (const auto& [s, _]: raw.tab)
      if (!ar.find_state(s))
        throw error(errc::unknown_state, "'" + s + "' in tab");

    ar.mov.resize(ar.states.size());
    ar.tab.assign(ar.states.size(),
                  std::vector<std::optional<state_id>>(ar.actions.size()));
    for (state_id s = 0; s < ar.states.size(); ++s)
      {
        const std::string& name = ar.states[s];
        auto m = raw.mov.find(name);
        if (m == raw.mov.end() || m->second.empty())
          throw error(errc::empty_move_set, "no action available in state '"
                      + name + "'");
        std::set<action_id> avail;
        for (const std::string& a: m->second)
          {
            auto id = ar.find_action(a);
            if (!id)
              throw error(errc::malformed_input, "unknown action '" + a
                          + "' in mov of '" + name + "'");
            avail.insert(*id);
          }
        ar.mov[s].assign(avail.begin(), avail.end());

        auto row = raw.tab.find(name);
        for (action_id a: ar.mov[s])
          {
            const std::string& act = ar.actions[a];
            if (row == raw.tab.end() || !row->second.contains(act))
              throw error(errc::partial_transition, "tab('" + name + "','"
                          + act + "') is undefined");
            auto target = ar.find_state(row->second.at(act));
            if (!target)
              throw error(errc::unknown_state, "'" + row->second.at(act)
                          + "' as target of tab('" + name + "','" + act
                          + "')");
            ar.tab[s][a] = *target;
          }
        if (row != raw.tab.end())
          for (const auto& [act, _]: row->second)
            {
              auto a = ar.find_action(act);
              if (!a || !avail.contains(*a))
                throw error(errc::partial_transition, "tab('" + name + "','"
                            + act + "') is defined but the action is not"
                            " available");
            }
      }

    if (raw.players < 1)
      throw error(errc::malformed_input, "a network needs at least 1 player");
    g.n = static_cast<std::size_t>(raw.players);

    ar.base = ar.states;
    ar.copy.assign(ar.states.size(), 0);
    if (!raw.copies.empty())
      {
        ar.copy_tagged = true;
        for (state_id s = 0; s < ar.states.size(); ++s)
          {
            auto it = raw.copies.find(ar.states[s]);
            if (it == raw.copies.end())
              throw error(errc::malformed_input, "state '" + ar.states[s]
                          + "' has no copy tag");
            ar.base[s] = it->second.first;
            ar.copy[s] = it->second.second;
          }
        if (raw.copies.size() != ar.states.size())
          throw error(errc::unknown_state, "copy tag for an unknown state");
      }

    if (raw.base_perms.size() != g.n)
      throw error(errc::bad_permutation, "expected " + std::to_string(g.n)
                  + " base permutations, got "
                  + std::to_string(raw.base_perms.size()));
    for (std::size_t i = 0; i < g.n; ++i)
      {
        const auto& img = raw.base_perms[i];
        std::vector<player_id> image;
        bool ok = img.size() == g.n;
        for (std::int64_t k: img)
          {
            ok = ok && k >= 0 && static_cast<std::uint64_t>(k) < g.n;
            image.push_back(static_cast<player_id>(ok ? k : 0));
          }
        permutation p(std::move(image));
        ok = ok && p.is_bijection() && p(0) == i;
        if (i == 0)
          ok = ok && p.is_identity();
        if (!ok)
          throw error(errc::bad_permutation,
                      "base permutation " + std::to_string(i)
                      + " must be a bijection of [n] mapping 0 to "
                      + std::to_string(i)
                      + (i == 0 ? " (the identity)" : ""));
        g.base_perms.push_back(std::move(p));
      }
    // Group laws of the derived family; cannot fail once the anchors hold.
    build_representation(g.base_perms);

    for (const auto& [kind, players]: raw.observation)
      g.observation.push_back({kind, player_set(players, g.n, "observation")});

    g.objective_text = raw.objective;
    g.objective = parse(raw.objective, ar, g.n);

    if (raw.initial.size() != g.n)
      throw error(errc::bad_initial, "initial configuration has "
                  + std::to_string(raw.initial.size()) + " entries, expected "
                  + std::to_string(g.n));
    for (const std::string& s: raw.initial)
      {
        auto id = ar.find_state(s);
        if (!id)
          throw error(errc::bad_initial, "unknown state '" + s + "'");
        g.initial.push_back(*id);
      }

    g.goal.winners = player_set(raw.winners, g.n, "winners");
    g.goal.losers = player_set(raw.losers, g.n, "losers");
    for (player_id w: g.goal.winners)
      if (std::binary_search(g.goal.losers.begin(), g.goal.losers.end(), w))
        throw error(errc::conflicting_constraints, "player "
                    + std::to_string(w) + " is required to win and to lose");
    return g;
  }

  raw_network describe(const game_network& g)
  {
    raw_network raw;
    const arena& ar = g.arena;
    raw.states = ar.states;
    raw.actions = ar.actions;
    for (state_id s = 0; s < ar.states.size(); ++s)
      {
        auto& mov = raw.mov[ar.states[s]];
        for (action_id a: ar.mov[s])
          {
            mov.push_back(ar.actions[a]);
            raw.tab[ar.states[s]][ar.actions[a]] = ar.states[*ar.tab[s][a]];
          }
        if (ar.copy_tagged)
          raw.copies[ar.states[s]] = {ar.base[s], ar.copy[s]};
      }
    raw.players = static_cast<std::int64_t>(g.n);
    for (const permutation& p: g.base_perms)
      raw.base_perms.emplace_back(p.image().begin(), p.image().end());
    for (const obs_atom& atom: g.observation)
      raw.observation.emplace_back(
          atom.type,
          std::vector<std::int64_t>(atom.players.begin(), atom.players.end()));
    raw.objective = g.objective_text;
    for (state_id s: g.initial)
      raw.initial.push_back(ar.states[s]);
    raw.winners.assign(g.goal.winners.begin(), g.goal.winners.end());
    raw.losers.assign(g.goal.losers.begin(), g.goal.losers.end());
    return raw;
  }

  const std::vector<action_id>& product_moves(const game_network& g,
                                              const configuration& t,
                                              player_id i)
  {
    if (i >= g.n || i >= t.size())
      throw error(errc::index_out_of_range, "player " + std::to_string(i));
    return g.arena.mov.at(t[i]);
  }

  configuration product_step(const game_network& g, const configuration& t,
                             std::span<const action_id> moves)
  {
    if (moves.size() != t.size() || t.size() != g.n)
      throw error(errc::length_mismatch, "expected " + std::to_string(g.n)
                  + " moves");
    configuration next(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      {
        const auto& target = g.arena.tab.at(t[k]);
        if (moves[k] >= target.size() || !target[moves[k]])
          throw error(errc::illegal_move, "player " + std::to_string(k)
                      + " cannot play that action in state '"
                      + g.arena.states.at(t[k]) + "'");
        next[k] = *target[moves[k]];
      }
    return next;
  }

  std::uint32_t reachable_set::id(const configuration& t) const
  {
    auto it = index.find(t);
    if (it == index.end())
      throw error(errc::index_out_of_range, "configuration is not reachable");
    return it->second;
  }

  reachable_set explore(const game_network& g, std::uint64_t node_budget)
  {
    const arena& ar = g.arena;
    reachable_set out;
    auto add = [&](const configuration& t) {
      if (out.index.contains(t))
        return;
      if (out.configs.size() >= node_budget)
        throw error(errc::budget_exceeded, "more than "
                    + std::to_string(node_budget)
                    + " reachable configurations");
      out.index.emplace(t, static_cast<std::uint32_t>(out.configs.size()));
      out.configs.push_back(t);
    };
    add(g.initial);

    // Each component moves independently, so successors are the product
    // of the per-player successor sets.
    std::vector<std::vector<state_id>> local(g.n);
    for (std::size_t head = 0; head < out.configs.size(); ++head)
      {
        const configuration t = out.configs[head];
        for (std::size_t k = 0; k < g.n; ++k)
          {
            std::set<state_id> succ;
            for (action_id a: ar.mov[t[k]])
              succ.insert(*ar.tab[t[k]][a]);
            local[k].assign(succ.begin(), succ.end());
          }
        std::vector<std::size_t> digit(g.n, 0);
        configuration next(g.n);
        for (;;)
          {
            for (std::size_t k = 0; k < g.n; ++k)
              next[k] = local[k][digit[k]];
            add(next);
            std::size_t k = g.n;
            while (k > 0 && ++digit[k - 1] == local[k - 1].size())
              digit[--k] = 0;
            if (k == 0)
              break;
          }
      }
    return out;
  }
}
