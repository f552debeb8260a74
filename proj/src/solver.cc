#include "symne/solver.hh"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <sstream>
#include <thread>

#include "symne/error.hh"
#include "symne/graph.hh"

namespace symne
{
  std::string rejection::describe(const arena& ar) const
  {
    switch (reason)
      {
      case clause::missing_winner:
        return "player " + std::to_string(player)
          + " is required to win but loses";
      case clause::loser_wins:
        return "player " + std::to_string(player)
          + " is required to lose but wins";
      case clause::profitable_deviation:
        break;
      }
    std::string out = "player " + std::to_string(player)
      + " loses but can deviate and win";
    if (deviation)
      {
        auto actions = [&](const std::vector<action_id>& as) {
          std::string s;
          for (action_id a: as)
            s += (s.empty() ? "" : " ") + ar.actions.at(a);
          return s;
        };
        auto configs = [&](const std::vector<configuration>& ts) {
          std::string s;
          for (const configuration& t: ts)
            s += (s.empty() ? "" : " ") + ar.format(t);
          return s;
        };
        out += ": play " + actions(deviation->prefix_actions) + " ("
          + actions(deviation->cycle_actions) + ")^omega, reaching "
          + configs(deviation->play.prefix) + " ("
          + configs(deviation->play.cycle) + ")^omega";
      }
    return out;
  }

  game_context::game_context(game_network g, std::uint64_t node_budget)
    : game_(std::move(g)),
      rep_(build_representation(game_.base_perms)),
      reach_(explore(game_, node_budget)),
      node_budget_(node_budget)
  {
    for (player_id i = 0; i < game_.n; ++i)
      {
        objectives_.push_back(instantiate_for_player(game_.objective, i, rep_));
        automata_.push_back(to_buchi(objectives_.back()));
      }
  }

  verdict compute_verdict(const game_context& ctx, const profile& p)
  {
    verdict v;
    v.outcome = simulate_outcome(p, ctx.reach().id(ctx.game().initial));
    for (player_id i = 0; i < ctx.game().n; ++i)
      {
        bool wins = eval_lasso(ctx.objective(i), v.outcome);
        v.payoff.push_back(wins ? 1 : 0);
        if (wins)
          v.winners.push_back(i);
      }
    return v;
  }

  deviation_graph build_deviation_graph(const game_context& ctx,
                                        const profile& p, player_id i)
  {
    const game_network& g = ctx.game();
    const arena& ar = g.arena;
    const reachable_set& reach = ctx.reach();
    if (i >= g.n)
      throw error(errc::index_out_of_range, "player " + std::to_string(i));

    deviation_graph d;
    d.deviator = i;
    std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>,
             std::uint32_t> ids;
    auto node = [&](std::uint32_t c, std::vector<std::uint32_t> mem) {
      auto [it, fresh] = ids.try_emplace({c, mem}, d.size());
      if (fresh)
        {
          if (d.size() >= ctx.node_budget())
            throw error(errc::budget_exceeded, "deviation graph of player "
                        + std::to_string(i) + " exceeds "
                        + std::to_string(ctx.node_budget()) + " nodes");
          d.config.push_back(c);
          d.memory.push_back(std::move(mem));
          d.succ.emplace_back();
        }
      return it->second;
    };

    std::vector<std::uint32_t> start(g.n, 0);
    for (player_id j = 0; j < g.n; ++j)
      if (j != i)
        start[j] = p.strategy[j]->initial;
    node(reach.id(g.initial), start);

    configuration next(g.n);
    for (std::uint32_t v = 0; v < d.size(); ++v)
      {
        const std::uint32_t c = d.config[v];
        const configuration& t = reach.configs[c];
        std::vector<std::uint32_t> mem(g.n, 0);
        for (player_id j = 0; j < g.n; ++j)
          if (j != i)
            {
              next[j] = *ar.tab[t[j]][p.action(j, d.memory[v][j], c)];
              mem[j] = p.update(j, d.memory[v][j], c);
            }
        for (action_id a: ar.mov[t[i]])
          {
            next[i] = *ar.tab[t[i]][a];
            std::uint32_t w = node(reach.id(next), mem);
            d.succ[v].emplace_back(a, w);
          }
      }
    return d;
  }

  std::optional<deviation_witness>
  check_deviation(const game_context& ctx, const profile& p, player_id i,
                  std::size_t* explored)
  {
    const reachable_set& reach = ctx.reach();
    if (i >= ctx.game().n)
      throw error(errc::index_out_of_range, "player " + std::to_string(i));
    const buchi_automaton& aut = ctx.automaton(i);
    const deviation_graph dev = build_deviation_graph(ctx, p, i);

    // Product of the deviation graph with the objective's automaton,
    // generated from the initial nodes on demand.
    explicit_graph prod;
    std::vector<std::vector<action_id>> edge_action;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> prod_nodes;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> prod_ids;
    std::deque<std::uint32_t> queue;
    auto prod_node = [&](std::uint32_t d, std::uint32_t q) {
      auto [it, fresh] = prod_ids.try_emplace({d, q}, prod.size());
      if (fresh)
        {
          if (prod.size() >= ctx.node_budget())
            throw error(errc::budget_exceeded, "deviation product of player "
                        + std::to_string(i) + " exceeds "
                        + std::to_string(ctx.node_budget()) + " nodes");
          prod.add_node(aut.accepting[q]);
          edge_action.emplace_back();
          prod_nodes.emplace_back(d, q);
          queue.push_back(it->second);
        }
      return it->second;
    };

    std::vector<std::uint32_t> roots;
    for (std::uint32_t q: aut.initial)
      roots.push_back(prod_node(0, q));
    while (!queue.empty())
      {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        const auto [d, q] = prod_nodes[v];
        const configuration& t = reach.configs[dev.config[d]];
        for (const auto& [a, d2]: dev.succ[d])
          for (const buchi_edge& e: aut.edges[q])
            if (label_holds(e.label, t))
              {
                std::uint32_t w = prod_node(d2, e.target);
                prod.succ[v].push_back(w);
                edge_action[v].push_back(a);
              }
      }
    if (explored)
      *explored = prod.size();

    auto found = find_accepting_lasso(prod, roots);
    if (!found)
      return std::nullopt;

    auto action_between = [&](std::uint32_t u, std::uint32_t v) {
      const auto& out = prod.succ[u];
      auto it = std::find(out.begin(), out.end(), v);
      return edge_action[u][it - out.begin()];
    };
    auto config_of = [&](std::uint32_t v) -> const configuration& {
      return reach.configs[dev.config[prod_nodes[v].first]];
    };

    deviation_witness w;
    w.player = i;
    std::vector<std::uint32_t> path = found->prefix;
    path.insert(path.end(), found->cycle.begin(), found->cycle.end());
    path.push_back(found->cycle.front());
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      {
        action_id a = action_between(path[k], path[k + 1]);
        if (k < found->prefix.size())
          {
            w.prefix_actions.push_back(a);
            w.play.prefix.push_back(config_of(path[k]));
          }
        else
          {
            w.cycle_actions.push_back(a);
            w.play.cycle.push_back(config_of(path[k]));
          }
      }
    if (!eval_lasso(ctx.objective(i), w.play))
      throw std::logic_error("deviation witness does not satisfy the"
                             " objective of player " + std::to_string(i));
    return w;
  }

  std::string deviation_graph_to_dot(const game_context& ctx,
                                     const deviation_graph& d)
  {
    const arena& ar = ctx.game().arena;
    std::ostringstream out;
    out << "digraph deviation_" << d.deviator << " {\n";
    for (std::size_t v = 0; v < d.size(); ++v)
      {
        std::string mem;
        for (player_id j = 0; j < ctx.game().n; ++j)
          if (j != d.deviator)
            mem += (mem.empty() ? "" : ",") + std::to_string(d.memory[v][j]);
        out << "  n" << v << " [label=\""
            << dot_escape(ar.format(ctx.reach().configs[d.config[v]]))
            << (mem.empty() ? "" : " / m=" + mem) << "\"];\n";
      }
    for (std::size_t v = 0; v < d.size(); ++v)
      for (const auto& [a, w]: d.succ[v])
        out << "  n" << v << " -> n" << w << " [label=\""
            << dot_escape(ar.actions[a]) << "\"];\n";
    out << "}\n";
    return out.str();
  }

  std::string product_game_to_dot(const game_context& ctx)
  {
    const game_network& g = ctx.game();
    const arena& ar = g.arena;
    const reachable_set& reach = ctx.reach();
    std::ostringstream out;
    out << "digraph product {\n";
    for (std::size_t c = 0; c < reach.size(); ++c)
      out << "  c" << c << " [label=\"" << dot_escape(ar.format(reach.configs[c]))
          << "\"" << (c == 0 ? ", shape=doublecircle" : "") << "];\n";
    for (std::size_t c = 0; c < reach.size(); ++c)
      {
        const configuration& t = reach.configs[c];
        std::vector<std::size_t> pick(g.n, 0);
        std::vector<action_id> moves(g.n);
        for (;;)
          {
            std::string label;
            for (player_id k = 0; k < g.n; ++k)
              {
                moves[k] = ar.mov[t[k]][pick[k]];
                label += (k ? "," : "") + ar.actions[moves[k]];
              }
            out << "  c" << c << " -> c" << reach.id(product_step(g, t, moves))
                << " [label=\"" << dot_escape(label) << "\"];\n";
            std::size_t k = g.n;
            while (k > 0 && ++pick[k - 1] == ar.mov[t[k - 1]].size())
              pick[--k] = 0;
            if (k == 0)
              break;
          }
      }
    out << "}\n";
    return out.str();
  }

  check_result check_profile(const game_context& ctx, const profile& p,
                             const constraints& goal, bool symmetric,
                             std::vector<moore_strategy> strategies)
  {
    verdict v = compute_verdict(ctx, p);
    auto wins = [&](player_id i) { return v.payoff.at(i) == 1; };
    for (player_id w: goal.winners)
      if (!wins(w))
        return rejection{rejection::clause::missing_winner, w, std::nullopt};
    for (player_id l: goal.losers)
      if (wins(l))
        return rejection{rejection::clause::loser_wins, l, std::nullopt};

    solution s;
    for (player_id i = 0; i < ctx.game().n; ++i)
      {
        if (wins(i))
          continue;
        std::size_t explored = 0;
        if (auto dev = check_deviation(ctx, p, i, &explored))
          return rejection{rejection::clause::profitable_deviation, i,
                           std::move(dev)};
        s.certificates.push_back({i, explored});
      }
    s.symmetric = symmetric;
    s.strategies = std::move(strategies);
    s.result = std::move(v);
    return s;
  }

  bound_profile::bound_profile(const game_context& ctx,
                               const std::vector<moore_strategy>& sigmas)
    : ctx_(&ctx), symmetric_(sigmas.size() == 1)
  {
    const game_network& g = ctx.game();
    if (!symmetric_ && sigmas.size() != g.n)
      throw error(errc::length_mismatch, "expected 1 or "
                  + std::to_string(g.n) + " strategies, got "
                  + std::to_string(sigmas.size()));
    if (symmetric_)
      {
        domains_.push_back(symmetric_key_domain(g, ctx.rep(), ctx.reach()));
        strategies_.push_back(bind_to_domain(sigmas[0], domains_[0],
                                             g.arena));
        profile_ = symmetric_profile(g, ctx.reach(), domains_[0],
                                     strategies_[0]);
        return;
      }
    domains_.reserve(g.n);
    strategies_.reserve(g.n);
    for (player_id i = 0; i < g.n; ++i)
      {
        domains_.push_back(player_key_domain(g, ctx.rep(), ctx.reach(), i));
        strategies_.push_back(bind_to_domain(sigmas[i], domains_.back(),
                                             g.arena));
      }
    profile_ = profile{&g, &ctx.reach(), {}, {}};
    for (player_id i = 0; i < g.n; ++i)
      {
        profile_.strategy.push_back(&strategies_[i]);
        profile_.slot.push_back(&domains_[i].slot[i]);
      }
  }

  check_result bound_profile::check(const constraints& goal) const
  {
    return check_profile(*ctx_, profile_, goal, symmetric_, strategies_);
  }

  verdict winners(const game_network& g, const moore_strategy& sigma0)
  {
    game_context ctx(g);
    bound_profile b(ctx, {sigma0});
    return compute_verdict(ctx, b.get());
  }

  std::optional<deviation_witness>
  check_deviation(const game_network& g, const moore_strategy& sigma0,
                  player_id i)
  {
    game_context ctx(g);
    bound_profile b(ctx, {sigma0});
    if (i >= g.n)
      throw error(errc::index_out_of_range, "player " + std::to_string(i));
    if (compute_verdict(ctx, b.get()).payoff[i] == 1)
      return std::nullopt;
    return check_deviation(ctx, b.get(), i);
  }

  check_result check_profile(const game_network& g,
                             const moore_strategy& sigma0,
                             const constraints& goal)
  {
    game_context ctx(g);
    return bound_profile(ctx, {sigma0}).check(goal);
  }

  check_result check_general_profile(const game_network& g,
                                     const std::vector<moore_strategy>& sigmas,
                                     const constraints& goal)
  {
    game_context ctx(g);
    if (sigmas.size() != g.n)
      throw error(errc::length_mismatch, "expected " + std::to_string(g.n)
                  + " strategies");
    return bound_profile(ctx, sigmas).check(goal);
  }

  std::optional<std::uint64_t>
  first_accepted(std::uint64_t count, unsigned jobs,
                 const std::function<bool(std::uint64_t)>& accept)
  {
    if (jobs <= 1 || count <= 1)
      {
        for (std::uint64_t idx = 0; idx < count; ++idx)
          if (accept(idx))
            return idx;
        return std::nullopt;
      }

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{count};
    std::atomic<std::uint64_t> failed_at{count};
    std::mutex mu;
    std::exception_ptr failure;

    auto worker = [&] {
      for (;;)
        {
          const std::uint64_t idx = next.fetch_add(1);
          if (idx >= count || idx >= best.load() || idx >= failed_at.load())
            return;
          try
            {
              if (accept(idx))
                {
                  std::uint64_t cur = best.load();
                  while (idx < cur && !best.compare_exchange_weak(cur, idx))
                    {
                    }
                }
            }
          catch (...)
            {
              std::lock_guard lock(mu);
              if (idx < failed_at.load())
                {
                  failed_at.store(idx);
                  failure = std::current_exception();
                }
            }
        }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned k = 0; k < jobs; ++k)
        pool.emplace_back(worker);
    }
    if (failed_at.load() < best.load())
      std::rethrow_exception(failure);
    if (best.load() < count)
      return best.load();
    return std::nullopt;
  }

  std::optional<solution> find_symmetric_ne(const game_network& g,
                                            const constraints& goal,
                                            std::uint32_t m,
                                            const budgets& limits)
  {
    game_context ctx(g, limits.nodes);
    const strategy_space space(
        symmetric_key_domain(ctx.game(), ctx.rep(), ctx.reach()), m);

    auto run = [&](std::uint64_t idx) {
      moore_strategy sigma0 = space.at(idx);
      profile p = symmetric_profile(ctx.game(), ctx.reach(), space.domain(),
                                    sigma0);
      return check_profile(ctx, p, goal, true, {sigma0});
    };
    auto idx = first_accepted(
        std::min(space.size(), limits.candidates), limits.jobs,
        [&](std::uint64_t k) {
          return std::holds_alternative<solution>(run(k));
        });
    if (idx)
      return std::get<solution>(run(*idx));
    if (space.size() > limits.candidates)
      throw error(errc::budget_exceeded, "no equilibrium among the first "
                  + std::to_string(limits.candidates) + " of "
                  + std::to_string(space.size()) + " candidate strategies");
    return std::nullopt;
  }

  std::optional<solution> find_ne_general(const game_network& g,
                                          const constraints& goal,
                                          std::uint32_t m,
                                          const budgets& limits)
  {
    game_context ctx(g, limits.nodes);
    std::vector<strategy_space> spaces;
    std::uint64_t total = 1;
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    for (player_id i = 0; i < g.n; ++i)
      {
        spaces.emplace_back(
            player_key_domain(ctx.game(), ctx.rep(), ctx.reach(), i), m);
        const std::uint64_t s = spaces.back().size();
        total = s != 0 && total > cap / s ? cap : total * s;
      }

    auto run = [&](std::uint64_t idx) {
      std::vector<moore_strategy> sigmas(g.n);
      for (player_id i = g.n; i-- > 0;)
        {
          const std::uint64_t s = spaces[i].size();
          sigmas[i] = spaces[i].at(idx % s);
          idx /= s;
        }
      profile p{&ctx.game(), &ctx.reach(), {}, {}};
      for (player_id i = 0; i < g.n; ++i)
        {
          p.strategy.push_back(&sigmas[i]);
          p.slot.push_back(&spaces[i].domain().slot[i]);
        }
      return check_profile(ctx, p, goal, false, sigmas);
    };
    auto idx = first_accepted(
        std::min(total, limits.candidates), limits.jobs,
        [&](std::uint64_t k) {
          return std::holds_alternative<solution>(run(k));
        });
    if (idx)
      return std::get<solution>(run(*idx));
    if (total > limits.candidates)
      throw error(errc::budget_exceeded, "no equilibrium among the first "
                  + std::to_string(limits.candidates) + " of "
                  + (total == cap ? std::string("more than ") : std::string())
                  + std::to_string(total) + " joint candidate profiles");
    return std::nullopt;
  }
}
