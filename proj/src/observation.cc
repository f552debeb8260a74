#include "symne/observation.hh"

#include <algorithm>
#include <map>
#include <set>

#include "symne/error.hh"
#include "symne/network.hh"
#include "symne/symmetry.hh"

namespace symne
{
  std::string template_key(const arena& ar, const obs_template& obs,
                           const configuration& t)
  {
    std::string key;
    for (const obs_atom& atom: obs)
      {
        if (!key.empty())
          key += ';';
        switch (atom.type)
          {
          case obs_atom::kind::id:
            {
              key += "id:[";
              for (std::size_t k = 0; k < atom.players.size(); ++k)
                {
                  if (k)
                    key += ',';
                  key += ar.base.at(t.at(atom.players[k]));
                }
              key += ']';
              break;
            }
          case obs_atom::kind::count:
            {
              std::map<std::string, std::size_t> count;
              for (player_id p: atom.players)
                ++count[ar.base.at(t.at(p))];
              key += "cnt:{";
              bool first = true;
              for (const auto& [label, c]: count)
                {
                  if (!first)
                    key += ',';
                  first = false;
                  key += label + ":" + std::to_string(c);
                }
              key += '}';
              break;
            }
          case obs_atom::kind::copy:
            {
              key += "copy:[";
              for (std::size_t k = 0; k < atom.players.size(); ++k)
                {
                  if (k)
                    key += ',';
                  key += std::to_string(ar.copy.at(t.at(atom.players[k])));
                }
              key += ']';
              break;
            }
          }
      }
    return key;
  }

  std::string obs_key(const game_network& g,
                      const symmetric_representation& rep, player_id i,
                      const configuration& t)
  {
    if (i >= g.n)
      throw error(errc::index_out_of_range, "player " + std::to_string(i));
    return template_key(g.arena, g.observation, permute_config(t, rep(0, i)));
  }

  bool equiv(const game_network& g, const symmetric_representation& rep,
             player_id i, const configuration& t, const configuration& u)
  {
    return obs_key(g, rep, i, t) == obs_key(g, rep, i, u);
  }

  std::vector<action_id>
  allowed_actions_for_class(const game_network& g,
                            const symmetric_representation& rep, player_id i,
                            const std::string& key,
                            const reachable_set& reach)
  {
    std::optional<std::vector<action_id>> common;
    for (const configuration& t: reach.configs)
      {
        if (obs_key(g, rep, i, t) != key)
          continue;
        const auto& mov = g.arena.mov[t[i]];
        if (!common)
          {
            common = mov;
            continue;
          }
        std::vector<action_id> both;
        std::set_intersection(common->begin(), common->end(), mov.begin(),
                              mov.end(), std::back_inserter(both));
        *common = std::move(both);
      }
    if (!common)
      throw error(errc::undefined_key, "no reachable configuration has key '"
                  + key + "' for player " + std::to_string(i));
    if (common->empty())
      throw error(errc::no_uniform_action, "no action is available throughout"
                  " the information set '" + key + "' of player "
                  + std::to_string(i));
    return *common;
  }

  namespace
  {
    key_domain build_domain(const game_network& g,
                            const symmetric_representation& rep,
                            const reachable_set& reach,
                            const std::vector<player_id>& players)
    {
      // key -> intersection of the owners' available actions
      std::map<std::string, std::vector<action_id>> classes;
      std::vector<std::vector<std::string>> raw_slot(g.n);
      for (player_id i: players)
        {
          raw_slot[i].reserve(reach.size());
          for (const configuration& t: reach.configs)
            {
              std::string key = obs_key(g, rep, i, t);
              const auto& mov = g.arena.mov[t[i]];
              auto [it, fresh] = classes.try_emplace(key, mov);
              if (!fresh)
                {
                  std::vector<action_id> both;
                  std::set_intersection(it->second.begin(), it->second.end(),
                                        mov.begin(), mov.end(),
                                        std::back_inserter(both));
                  it->second = std::move(both);
                }
              raw_slot[i].push_back(std::move(key));
            }
        }

      key_domain dom;
      for (auto& [key, allowed]: classes)
        {
          if (allowed.empty())
            throw error(errc::no_uniform_action, "no action is available"
                        " throughout the information set '" + key + "'");
          dom.keys.push_back(key);
          dom.allowed.push_back(std::move(allowed));
        }
      dom.slot.resize(g.n);
      for (player_id i: players)
        for (const std::string& key: raw_slot[i])
          {
            auto it = std::lower_bound(dom.keys.begin(), dom.keys.end(), key);
            dom.slot[i].push_back(
                static_cast<std::uint32_t>(it - dom.keys.begin()));
          }
      return dom;
    }
  }

  key_domain symmetric_key_domain(const game_network& g,
                                  const symmetric_representation& rep,
                                  const reachable_set& reach)
  {
    std::vector<player_id> all(g.n);
    for (player_id i = 0; i < g.n; ++i)
      all[i] = i;
    return build_domain(g, rep, reach, all);
  }

  key_domain player_key_domain(const game_network& g,
                               const symmetric_representation& rep,
                               const reachable_set& reach, player_id i)
  {
    if (i >= g.n)
      throw error(errc::index_out_of_range, "player " + std::to_string(i));
    return build_domain(g, rep, reach, {i});
  }
}
