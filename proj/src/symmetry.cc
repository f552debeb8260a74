#include "symne/symmetry.hh"

#include "symne/error.hh"
#include "symne/network.hh"
#include "symne/observation.hh"
#include "symne/strategy.hh"

namespace symne
{
  symmetric_representation
  build_representation(std::span<const permutation> base_perms)
  {
    const std::size_t n = base_perms.size();
    for (std::size_t i = 0; i < n; ++i)
      {
        if (base_perms[i].size() != n)
          throw error(errc::length_mismatch, "base permutation "
                      + std::to_string(i) + " has "
                      + std::to_string(base_perms[i].size())
                      + " entries, expected " + std::to_string(n));
        if (!base_perms[i].is_bijection())
          throw error(errc::not_a_bijection, "base permutation "
                      + std::to_string(i) + " "
                      + base_perms[i].to_string());
        if (base_perms[i](0) != i)
          throw error(errc::base_anchor_violated, "pi_{0,"
                      + std::to_string(i) + "}(0) = "
                      + std::to_string(base_perms[i](0)));
      }

    symmetric_representation rep;
    rep.n_ = n;
    rep.family_.reserve(n * n);
    std::vector<permutation> inverse;
    for (const permutation& p: base_perms)
      inverse.push_back(p.inverse());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rep.family_.push_back(compose(base_perms[j], inverse[i]));

    if (count_law_violations(rep) != 0)
      throw error(errc::bad_permutation,
                  "derived family violates the composition laws");
    return rep;
  }

  std::size_t count_law_violations(const symmetric_representation& rep)
  {
    const auto n = static_cast<player_id>(rep.size());
    std::size_t bad = 0;
    for (player_id i = 0; i < n; ++i)
      {
        bad += !rep(i, i).is_identity();
        for (player_id j = 0; j < n; ++j)
          {
            bad += rep(i, j)(i) != j;
            for (player_id k = 0; k < n; ++k)
              bad += compose(rep(k, j), rep(i, k)) != rep(i, j);
          }
      }
    return bad;
  }

  configuration permute_config(const configuration& t, const permutation& p)
  {
    if (t.size() != p.size())
      throw error(errc::length_mismatch, "configuration of length "
                  + std::to_string(t.size()) + ", permutation of size "
                  + std::to_string(p.size()));
    configuration out(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      out[k] = t[p(static_cast<player_id>(k))];
    return out;
  }

  std::vector<configuration> permute_play(std::span<const configuration> play,
                                          const permutation& p)
  {
    std::vector<configuration> out;
    out.reserve(play.size());
    for (const configuration& t: play)
      out.push_back(permute_config(t, p));
    return out;
  }

  lasso permute_lasso(const lasso& w, const permutation& p)
  {
    return {permute_play(w.prefix, p), permute_play(w.cycle, p)};
  }

  action_id derive_profile_action(const moore_strategy& sigma0,
                                  std::span<const std::string> obs_history)
  {
    if (obs_history.empty())
      throw error(errc::malformed_input, "empty history");
    std::uint32_t q = sigma0.initial;
    for (std::size_t step = 0; step + 1 < obs_history.size(); ++step)
      q = sigma0.update(q, sigma0.slot_of(obs_history[step]));
    return sigma0.action(q, sigma0.slot_of(obs_history.back()));
  }

  action_id profile_action(const game_network& g,
                           const symmetric_representation& rep,
                           const moore_strategy& sigma0, player_id i,
                           std::span<const configuration> history)
  {
    std::vector<std::string> keys;
    keys.reserve(history.size());
    for (const configuration& t: history)
      keys.push_back(obs_key(g, rep, i, t));
    return derive_profile_action(sigma0, keys);
  }

  std::string copy_state_name(const std::string& s, std::size_t c)
  {
    return "(" + s + "," + std::to_string(c) + ")";
  }

  game_network desymmetrize(const game_network& g)
  {
    const arena& ar = g.arena;
    raw_network raw = describe(g);
    raw.states.clear();
    raw.mov.clear();
    raw.tab.clear();
    raw.copies.clear();
    for (std::size_t c = 0; c < g.n; ++c)
      for (state_id s = 0; s < ar.states.size(); ++s)
        {
          const std::string name = copy_state_name(ar.states[s], c);
          raw.states.push_back(name);
          raw.copies[name] = {ar.base[s], static_cast<std::uint32_t>(c)};
          for (action_id a: ar.mov[s])
            {
              raw.mov[name].push_back(ar.actions[a]);
              raw.tab[name][ar.actions[a]] =
                copy_state_name(ar.states[*ar.tab[s][a]], c);
            }
        }
    raw.initial.clear();
    for (std::size_t i = 0; i < g.n; ++i)
      raw.initial.push_back(copy_state_name(ar.states[g.initial[i]], i));
    raw.observation.emplace_back(obs_atom::kind::copy,
                                 std::vector<std::int64_t>{0});

    // The objective is rewritten on the validated arena below; parse needs
    // some formula text first.
    raw.objective = "true";
    game_network h = validate_network(raw);
    h.objective = map_atoms(
        g.objective, [&](player_id k, state_id, const std::string& name) {
          formula any = formula::ff();
          for (std::size_t c = 0; c < g.n; ++c)
            {
              const std::string tagged = copy_state_name(name, c);
              formula at = formula::atom(k, *h.arena.find_state(tagged),
                                         tagged);
              any = c == 0 ? at : any | at;
            }
          return any;
        });
    h.objective_text = h.objective.to_string();
    return h;
  }
}
