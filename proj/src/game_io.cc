#include "symne/game_io.hh"

#include <fstream>
#include <set>
#include <sstream>

#include "symne/error.hh"

namespace symne
{
  using nlohmann::json;

  namespace
  {
    void only_keys(const json& j, std::initializer_list<const char*> allowed,
                   const char* where)
    {
      if (!j.is_object())
        throw error(errc::malformed_input, std::string(where)
                    + " must be an object");
      std::set<std::string> ok(allowed.begin(), allowed.end());
      for (const auto& [key, _]: j.items())
        if (!ok.contains(key))
          throw error(errc::malformed_input, "unknown key '" + key + "' in "
                      + where);
    }

    const json& need(const json& j, const char* key, const char* where)
    {
      if (!j.contains(key))
        throw error(errc::malformed_input, std::string("missing '") + key
                    + "' in " + where);
      return j.at(key);
    }

    template<class T>
    T as(const json& j, const char* what)
    {
      try
        {
          return j.get<T>();
        }
      catch (const json::exception& e)
        {
          throw error(errc::malformed_input, std::string(what) + ": "
                      + e.what());
        }
    }

    obs_atom::kind atom_kind(const std::string& s)
    {
      if (s == "id")
        return obs_atom::kind::id;
      if (s == "count")
        return obs_atom::kind::count;
      if (s == "copy")
        return obs_atom::kind::copy;
      throw error(errc::malformed_input, "unknown observation atom type '" + s
                  + "'");
    }

    const char* atom_name(obs_atom::kind k)
    {
      switch (k)
        {
        case obs_atom::kind::id: return "id";
        case obs_atom::kind::count: return "count";
        case obs_atom::kind::copy: return "copy";
        }
      return "?";
    }

    json read_json(const std::filesystem::path& path)
    {
      std::ifstream in(path);
      if (!in)
        throw error(errc::io_error, "cannot open '" + path.string() + "'");
      try
        {
          return json::parse(in);
        }
      catch (const json::parse_error& e)
        {
          throw error(errc::malformed_input, path.string() + ": " + e.what());
        }
    }
  }

  raw_network game_from_json(const json& j)
  {
    only_keys(j, {"arena", "players", "base_perms", "observation",
                  "objective", "initial", "winners", "losers"}, "game");
    const json& a = need(j, "arena", "game");
    only_keys(a, {"states", "actions", "mov", "tab", "copies"}, "arena");

    raw_network raw;
    raw.states = as<std::vector<std::string>>(need(a, "states", "arena"),
                                              "arena.states");
    raw.actions = as<std::vector<std::string>>(need(a, "actions", "arena"),
                                               "arena.actions");
    raw.mov = as<std::map<std::string, std::vector<std::string>>>(
        need(a, "mov", "arena"), "arena.mov");
    raw.tab = as<std::map<std::string, std::map<std::string, std::string>>>(
        need(a, "tab", "arena"), "arena.tab");
    if (a.contains("copies"))
      for (const auto& [s, tag]: a.at("copies").items())
        {
          if (!tag.is_array() || tag.size() != 2)
            throw error(errc::malformed_input, "copy tag of '" + s
                        + "' must be [base, index]");
          raw.copies[s] = {as<std::string>(tag[0], "copy base"),
                           as<std::uint32_t>(tag[1], "copy index")};
        }
    raw.players = as<std::int64_t>(need(j, "players", "game"), "players");
    raw.base_perms = as<std::vector<std::vector<std::int64_t>>>(
        need(j, "base_perms", "game"), "base_perms");
    for (const json& atom: as<json>(need(j, "observation", "game"),
                                    "observation"))
      {
        only_keys(atom, {"type", "players"}, "observation atom");
        raw.observation.emplace_back(
            atom_kind(as<std::string>(need(atom, "type", "observation atom"),
                                      "type")),
            as<std::vector<std::int64_t>>(
                need(atom, "players", "observation atom"), "players"));
      }
    raw.objective = as<std::string>(need(j, "objective", "game"),
                                    "objective");
    raw.initial = as<std::vector<std::string>>(need(j, "initial", "game"),
                                               "initial");
    if (j.contains("winners"))
      raw.winners = as<std::vector<std::int64_t>>(j.at("winners"), "winners");
    if (j.contains("losers"))
      raw.losers = as<std::vector<std::int64_t>>(j.at("losers"), "losers");
    return raw;
  }

  json game_to_json(const game_network& g)
  {
    raw_network raw = describe(g);
    json a = {{"states", raw.states},
              {"actions", raw.actions},
              {"mov", raw.mov},
              {"tab", raw.tab}};
    if (!raw.copies.empty())
      {
        json copies = json::object();
        for (const auto& [s, tag]: raw.copies)
          copies[s] = json::array({tag.first, tag.second});
        a["copies"] = copies;
      }
    json obs = json::array();
    for (const auto& [kind, players]: raw.observation)
      obs.push_back({{"type", atom_name(kind)}, {"players", players}});
    return {{"arena", a},
            {"players", raw.players},
            {"base_perms", raw.base_perms},
            {"observation", obs},
            {"objective", raw.objective},
            {"initial", raw.initial},
            {"winners", raw.winners},
            {"losers", raw.losers}};
  }

  game_network load_game(const std::filesystem::path& path)
  {
    return validate_network(game_from_json(read_json(path)));
  }

  json strategy_to_json(const moore_strategy& s, const arena& ar)
  {
    json table = json::object();
    const std::size_t k = s.key_count();
    for (std::uint32_t q = 0; q < s.memory; ++q)
      for (std::size_t slot = 0; slot < k; ++slot)
        table[std::to_string(q) + "," + (*s.keys)[slot]] =
          {{"act", ar.actions.at(s.act[q * k + slot])},
           {"next", s.next[q * k + slot]}};
    return {{"memory", s.memory}, {"initial", s.initial}, {"table", table}};
  }

  moore_strategy strategy_from_json(const json& j, const arena& ar)
  {
    const std::uint32_t m = as<std::uint32_t>(need(j, "memory", "strategy"),
                                              "memory");
    if (m < 1)
      throw error(errc::malformed_input, "memory must be at least 1");
    moore_strategy s;
    s.memory = m;
    s.initial = as<std::uint32_t>(need(j, "initial", "strategy"), "initial");
    if (s.initial >= m)
      throw error(errc::malformed_input, "initial memory out of range");

    std::map<std::pair<std::uint32_t, std::string>,
             std::pair<action_id, std::uint32_t>> cells;
    std::set<std::string> keys;
    for (const auto& [cell, entry]: need(j, "table", "strategy").items())
      {
        auto comma = cell.find(',');
        if (comma == std::string::npos)
          throw error(errc::malformed_input, "table key '" + cell
                      + "' is not 'q,obskey'");
        std::uint32_t q;
        try
          {
            q = static_cast<std::uint32_t>(std::stoul(cell.substr(0, comma)));
          }
        catch (const std::exception&)
          {
            throw error(errc::malformed_input, "table key '" + cell
                        + "' has no memory index");
          }
        if (q >= m)
          throw error(errc::malformed_input, "memory index in '" + cell
                      + "' out of range");
        const std::string key = cell.substr(comma + 1);
        auto act = ar.find_action(as<std::string>(need(entry, "act", "table"),
                                                  "act"));
        if (!act)
          throw error(errc::malformed_input, "unknown action in '" + cell
                      + "'");
        auto next = as<std::uint32_t>(need(entry, "next", "table"), "next");
        if (next >= m)
          throw error(errc::malformed_input, "next memory in '" + cell
                      + "' out of range");
        cells[{q, key}] = {*act, next};
        keys.insert(key);
      }

    s.keys = std::make_shared<const std::vector<std::string>>(keys.begin(),
                                                              keys.end());
    for (std::uint32_t q = 0; q < m; ++q)
      for (const std::string& key: *s.keys)
        {
          auto it = cells.find({q, key});
          if (it == cells.end())
            throw error(errc::undefined_key, "no entry for memory "
                        + std::to_string(q) + " and key '" + key + "'");
          s.act.push_back(it->second.first);
          s.next.push_back(it->second.second);
        }
    return s;
  }

  json lasso_to_json(const lasso& w, const arena& ar)
  {
    auto names = [&](const std::vector<configuration>& ts) {
      json out = json::array();
      for (const configuration& t: ts)
        {
          json c = json::array();
          for (state_id s: t)
            c.push_back(ar.states.at(s));
          out.push_back(c);
        }
      return out;
    };
    return {{"prefix", names(w.prefix)}, {"cycle", names(w.cycle)}};
  }

  json solution_to_json(const solution& s, const arena& ar)
  {
    json out;
    if (s.symmetric)
      out = strategy_to_json(s.strategies.at(0), ar);
    else
      {
        out["strategies"] = json::array();
        for (const moore_strategy& sigma: s.strategies)
          out["strategies"].push_back(strategy_to_json(sigma, ar));
      }
    json certs = json::array();
    for (const no_deviation& c: s.certificates)
      certs.push_back({{"player", c.player},
                       {"product_nodes", c.product_nodes}});
    out["verdict"] = {{"winners", s.result.winners},
                      {"outcome", lasso_to_json(s.result.outcome, ar)},
                      {"no_deviation", certs}};
    return out;
  }

  std::vector<moore_strategy> strategies_from_json(const json& j,
                                                   const arena& ar)
  {
    if (!j.is_object())
      throw error(errc::malformed_input, "strategy file must be an object");
    std::vector<moore_strategy> out;
    if (j.contains("strategies"))
      for (const json& s: j.at("strategies"))
        out.push_back(strategy_from_json(s, ar));
    else
      out.push_back(strategy_from_json(j, ar));
    return out;
  }

  std::vector<moore_strategy> load_strategies(const std::filesystem::path& p,
                                              const arena& ar)
  {
    return strategies_from_json(read_json(p), ar);
  }

  std::string dump(const json& j)
  {
    return j.dump(2) + "\n";
  }
}
