#include "symne/oracle.hh"

#include <algorithm>
#include <map>
#include <set>

#include "symne/buchi.hh"
#include "symne/error.hh"
#include "symne/symmetry.hh"

namespace symne
{
  namespace
  {
    // (memory, key) -> (action, next memory)
    using table = std::map<std::pair<std::uint32_t, std::string>,
                           std::pair<action_id, std::uint32_t>>;

    std::vector<configuration> closure(const game_network& g)
    {
      std::set<configuration> seen{g.initial};
      std::vector<configuration> order{g.initial};
      for (std::size_t head = 0; head < order.size(); ++head)
        {
          const configuration t = order[head];
          std::vector<action_id> moves(g.n);
          std::vector<std::size_t> pick(g.n, 0);
          for (;;)
            {
              for (player_id k = 0; k < g.n; ++k)
                moves[k] = product_moves(g, t, k)[pick[k]];
              configuration u = product_step(g, t, moves);
              if (seen.insert(u).second)
                order.push_back(u);
              player_id k = 0;
              while (k < g.n && ++pick[k] == product_moves(g, t, k).size())
                pick[k++] = 0;
              if (k == g.n)
                break;
            }
        }
      return order;
    }

    struct player_classes
    {
      // key -> actions available throughout
      std::map<std::string, std::vector<action_id>> allowed;
    };

    void add_classes(const game_network& g,
                     const symmetric_representation& rep,
                     const std::vector<configuration>& configs, player_id i,
                     player_classes& out)
    {
      for (const configuration& t: configs)
        {
          const auto& mov = product_moves(g, t, i);
          std::string key = obs_key(g, rep, i, t);
          auto it = out.allowed.find(key);
          if (it == out.allowed.end())
            {
              out.allowed.emplace(key, mov);
              continue;
            }
          std::vector<action_id> keep;
          for (action_id a: it->second)
            if (std::find(mov.begin(), mov.end(), a) != mov.end())
              keep.push_back(a);
          it->second = keep;
        }
      for (const auto& [key, acts]: out.allowed)
        if (acts.empty())
          throw error(errc::no_uniform_action, "class '" + key + "'");
    }

    void materialize(const player_classes& classes, std::uint32_t m,
                     std::uint64_t limit, std::vector<table>& out)
    {
      std::vector<std::pair<std::uint32_t, std::string>> cells;
      for (std::uint32_t q = 0; q < m; ++q)
        for (const auto& [key, _]: classes.allowed)
          cells.emplace_back(q, key);
      table cur;
      auto rec = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size())
          {
            if (out.size() >= limit)
              throw error(errc::oracle_too_large, "more than "
                          + std::to_string(limit) + " candidates");
            out.push_back(cur);
            return;
          }
        for (action_id a: classes.allowed.at(cells[c].second))
          for (std::uint32_t q2 = 0; q2 < m; ++q2)
            {
              cur[cells[c]] = {a, q2};
              self(self, c + 1);
            }
      };
      rec(rec, 0);
    }

    moore_strategy to_moore(const table& t, std::uint32_t m)
    {
      std::set<std::string> keys;
      for (const auto& [cell, _]: t)
        keys.insert(cell.second);
      moore_strategy s;
      s.memory = m;
      s.keys = std::make_shared<const std::vector<std::string>>(keys.begin(),
                                                                keys.end());
      for (const auto& [cell, choice]: t)
        {
          s.act.push_back(choice.first);
          s.next.push_back(choice.second);
        }
      return s;
    }

    class brute_checker
    {
    public:
      brute_checker(const game_network& g, const oracle_limits& limits)
        : g_(g), rep_(build_representation(g.base_perms)), limits_(limits)
      {
        configs_ = closure(g);
        for (player_id i = 0; i < g.n; ++i)
          {
            objectives_.push_back(instantiate_for_player(g.objective, i, rep_));
            automata_.push_back(to_buchi(objectives_.back()));
          }
      }

      const std::vector<configuration>& configs() const
      {
        return configs_;
      }

      const symmetric_representation& rep() const
      {
        return rep_;
      }

      // Accepting profile -> verdict and certificates.
      std::optional<solution>
      check(const std::vector<const table*>& tables,
            const constraints& goal) const
      {
        solution s;
        s.result.outcome = outcome(tables);
        for (player_id i = 0; i < g_.n; ++i)
          {
            bool wins = eval_lasso(objectives_[i], s.result.outcome);
            s.result.payoff.push_back(wins);
            if (wins)
              s.result.winners.push_back(i);
          }
        for (player_id w: goal.winners)
          if (!s.result.payoff[w])
            return std::nullopt;
        for (player_id l: goal.losers)
          if (s.result.payoff[l])
            return std::nullopt;
        for (player_id i = 0; i < g_.n; ++i)
          if (!s.result.payoff[i])
            {
              std::size_t nodes = 0;
              if (can_deviate(tables, i, nodes))
                return std::nullopt;
              s.certificates.push_back({i, nodes});
            }
        return s;
      }

    private:
      std::pair<action_id, std::uint32_t>
      choose(const table& t, std::uint32_t q, player_id i,
             const configuration& c) const
      {
        return t.at({q, obs_key(g_, rep_, i, c)});
      }

      lasso outcome(const std::vector<const table*>& tables) const
      {
        std::vector<std::pair<configuration, std::vector<std::uint32_t>>>
          trace;
        configuration t = g_.initial;
        std::vector<std::uint32_t> mem(g_.n, 0);
        for (;;)
          {
            auto state = std::make_pair(t, mem);
            auto hit = std::find(trace.begin(), trace.end(), state);
            if (hit != trace.end())
              {
                lasso w;
                for (auto it = trace.begin(); it != trace.end(); ++it)
                  (it < hit ? w.prefix : w.cycle).push_back(it->first);
                return w;
              }
            trace.push_back(state);
            std::vector<action_id> moves(g_.n);
            for (player_id i = 0; i < g_.n; ++i)
              std::tie(moves[i], mem[i]) = choose(*tables[i], mem[i], i, t);
            t = product_step(g_, t, moves);
          }
      }

      bool can_deviate(const std::vector<const table*>& tables, player_id i,
                       std::size_t& nodes) const
      {
        // Deviation graph, explored in full.
        using dev = std::pair<configuration, std::vector<std::uint32_t>>;
        std::map<dev, std::size_t> dev_id;
        std::vector<dev> devs;
        std::vector<std::vector<std::size_t>> dev_succ;
        devs.push_back({g_.initial, std::vector<std::uint32_t>(g_.n, 0)});
        dev_id[devs[0]] = 0;
        for (std::size_t d = 0; d < devs.size(); ++d)
          {
            const dev cur = devs[d];
            std::vector<action_id> moves(g_.n);
            std::vector<std::uint32_t> mem(g_.n, 0);
            for (player_id j = 0; j < g_.n; ++j)
              if (j != i)
                std::tie(moves[j], mem[j]) =
                  choose(*tables[j], cur.second[j], j, cur.first);
            dev_succ.emplace_back();
            for (action_id a: product_moves(g_, cur.first, i))
              {
                moves[i] = a;
                dev next{product_step(g_, cur.first, moves), mem};
                auto [it, fresh] = dev_id.try_emplace(next, devs.size());
                if (fresh)
                  devs.push_back(next);
                dev_succ[d].push_back(it->second);
              }
          }

        // Product with the automaton, explored in full.
        const buchi_automaton& aut = automata_[i];
        std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> id;
        std::vector<std::pair<std::size_t, std::uint32_t>> prod;
        std::vector<std::vector<std::size_t>> succ;
        for (std::uint32_t q: aut.initial)
          if (id.try_emplace({0, q}, prod.size()).second)
            prod.emplace_back(0, q);
        std::size_t roots = prod.size();
        for (std::size_t v = 0; v < prod.size(); ++v)
          {
            if (prod.size() > limits_.product_nodes)
              throw error(errc::oracle_too_large, "deviation product above "
                          + std::to_string(limits_.product_nodes) + " nodes");
            auto [d, q] = prod[v];
            succ.emplace_back();
            for (const buchi_edge& e: aut.edges[q])
              if (label_holds(e.label, devs[d].first))
                for (std::size_t d2: dev_succ[d])
                  {
                    auto [it, fresh] = id.try_emplace({d2, e.target},
                                                      prod.size());
                    if (fresh)
                      prod.emplace_back(d2, e.target);
                    succ[v].push_back(it->second);
                  }
          }
        nodes = prod.size();
        if (prod.size() > limits_.product_nodes)
          throw error(errc::oracle_too_large, "deviation product above "
                      + std::to_string(limits_.product_nodes) + " nodes");

        // Accepting nodes that can revisit the accepting set forever.
        std::vector<bool> keep(prod.size());
        for (std::size_t v = 0; v < prod.size(); ++v)
          keep[v] = aut.accepting[prod[v].second];
        for (bool changed = true; changed;)
          {
            changed = false;
            std::vector<bool> reach_keep = reaches_in_one_or_more(succ, keep);
            for (std::size_t v = 0; v < prod.size(); ++v)
              if (keep[v] && !reach_keep[v])
                {
                  keep[v] = false;
                  changed = true;
                }
          }
        // Initial nodes reaching the surviving set.
        std::vector<bool> r = reaches_in_one_or_more(succ, keep);
        for (std::size_t v = 0; v < roots; ++v)
          if (keep[v] || r[v])
            return true;
        return false;
      }

      // Nodes with a path of length >= 1 into `target`.
      static std::vector<bool>
      reaches_in_one_or_more(const std::vector<std::vector<std::size_t>>& succ,
                             const std::vector<bool>& target)
      {
        std::vector<bool> r(succ.size(), false);
        for (bool changed = true; changed;)
          {
            changed = false;
            for (std::size_t v = 0; v < succ.size(); ++v)
              if (!r[v])
                for (std::size_t w: succ[v])
                  if (target[w] || r[w])
                    {
                      r[v] = changed = true;
                      break;
                    }
          }
        return r;
      }

      const game_network& g_;
      symmetric_representation rep_;
      oracle_limits limits_;
      std::vector<configuration> configs_;
      std::vector<formula> objectives_;
      std::vector<buchi_automaton> automata_;
    };
  }

  std::optional<solution> oracle_find(const game_network& g,
                                      const constraints& goal,
                                      std::uint32_t m,
                                      const oracle_limits& limits)
  {
    brute_checker checker(g, limits);
    player_classes classes;
    for (player_id i = 0; i < g.n; ++i)
      add_classes(g, checker.rep(), checker.configs(), i, classes);
    std::vector<table> candidates;
    materialize(classes, m, limits.candidates, candidates);
    for (const table& t: candidates)
      {
        std::vector<const table*> tables(g.n, &t);
        if (auto s = checker.check(tables, goal))
          {
            s->symmetric = true;
            s->strategies.push_back(to_moore(t, m));
            return s;
          }
      }
    return std::nullopt;
  }

  std::optional<solution> oracle_find_general(const game_network& g,
                                              const constraints& goal,
                                              std::uint32_t m,
                                              const oracle_limits& limits)
  {
    brute_checker checker(g, limits);
    std::vector<std::vector<table>> per_player(g.n);
    std::uint64_t joint = 1;
    for (player_id i = 0; i < g.n; ++i)
      {
        player_classes classes;
        add_classes(g, checker.rep(), checker.configs(), i, classes);
        materialize(classes, m, limits.candidates, per_player[i]);
        joint *= per_player[i].size();
        if (joint > limits.candidates)
          throw error(errc::oracle_too_large, "more than "
                      + std::to_string(limits.candidates)
                      + " joint candidates");
      }
    std::vector<std::size_t> pick(g.n, 0);
    for (;;)
      {
        std::vector<const table*> tables;
        for (player_id i = 0; i < g.n; ++i)
          tables.push_back(&per_player[i][pick[i]]);
        if (auto s = checker.check(tables, goal))
          {
            s->symmetric = false;
            for (const table* t: tables)
              s->strategies.push_back(to_moore(*t, m));
            return s;
          }
        player_id k = g.n;
        while (k > 0 && ++pick[k - 1] == per_player[k - 1].size())
          pick[--k] = 0;
        if (k == 0)
          return std::nullopt;
      }
  }
}
